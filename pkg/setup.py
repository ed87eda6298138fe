import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


ext_modules = []
if cythonize is not None and not os.environ.get("POSGEN_NO_EXT"):
    ext_modules = cythonize(
        [
            Extension(
                "posgen._kernels",
                ["src/posgen/_kernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
        },
    )


setup(ext_modules=ext_modules)
