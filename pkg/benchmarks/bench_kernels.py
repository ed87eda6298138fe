"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 5] [--cases 2:6,3:6,2:10]

Times the raw kernels on random dense integer vectors and then whole
operations (mul, exp, apply) with each backend switched in. Results are
checked to agree before any timing is reported.
"""

import argparse
import random
import timeit
from fractions import Fraction

from posgen import kernels
from posgen.algebra import Polynomial, TruncatedSeries, basis
from posgen.liegroup import apply, exp, mul


def _case(text):
    n, d = text.split(":")
    return int(n), int(d)


def _rand_vec(rng, size, bits):
    return [rng.getrandbits(bits) - (1 << (bits - 1)) for _ in range(size)]


def _rand_series(rng, n, d, cls, const):
    coeffs = {alpha: Fraction(rng.randint(-50, 50), rng.randint(1, 50)) for alpha in basis(n, d)}
    if const is not None:
        coeffs[(0,) * n] = const
    return cls(n, d, coeffs)


def _best(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--cases", type=lambda s: [_case(c) for c in s.split(",")],
                        default=[(1, 12), (2, 6), (2, 10), (3, 6)])
    parser.add_argument("--bits", type=int, default=64, help="size of random integer entries")
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    names = sorted(kernels.BACKENDS)
    if "cython" not in names:
        print("compiled extension not built; only the python backend is available")
    rng = random.Random(args.seed)
    header = f"{'op':<8}{'n':>3}{'d':>4}{'size':>6}" + "".join(f"{name:>14}" for name in names)
    if len(names) > 1:
        header += f"{'speedup':>10}"
    print(header)

    for n, d in args.cases:
        size = len(basis(n, d))
        a, b = _rand_vec(rng, size, args.bits), _rand_vec(rng, size, args.bits)
        sa = _rand_series(rng, n, d, TruncatedSeries, 1)
        sb = _rand_series(rng, n, d, TruncatedSeries, 1)
        alg = _rand_series(rng, n, d, TruncatedSeries, 0)
        poly = _rand_series(rng, n, d, Polynomial, None)
        ops = {
            "cauchy": lambda be: kernels.cauchy(a, b, n, d, backend=be),
            "act": lambda be: kernels.act(a, b, n, d, backend=be),
            "mul": lambda be: mul(sa, sb),
            "exp": lambda be: exp(alg),
            "apply": lambda be: apply(sa, poly),
        }
        previous = kernels.BACKEND
        try:
            for op, fn in ops.items():
                times, outs = {}, {}
                for name in names:
                    kernels.set_backend(name)
                    outs[name] = fn(name)
                    times[name] = _best(lambda: fn(name), args.repeat)
                first = outs[names[0]]
                assert all(out == first for out in outs.values()), f"backends disagree on {op}"
                line = f"{op:<8}{n:>3}{d:>4}{size:>6}" + "".join(
                    f"{times[name] * 1e3:>12.3f}ms" for name in names)
                if len(names) > 1:
                    line += f"{times['python'] / times['cython']:>9.1f}x"
                print(line)
        finally:
            kernels.set_backend(previous)


if __name__ == "__main__":
    main()
