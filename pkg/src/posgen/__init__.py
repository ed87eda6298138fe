"""Exact computation with constant-coefficient differential operators.

Operators ``sum q_alpha * d^alpha`` on polynomial spaces, their group and
algebra operations, moment sequences and exact PSD refutation of positivity
preservers, generators built from Levy triplets, and closed-form polynomial
evolution.
"""

from .algebra import (
    DimensionError,
    MomentSequence,
    Polynomial,
    PosgenError,
    TruncatedSeries,
    TruncationError,
    add,
    evaluate,
    shift,
)
from .evolve import evolve, nonneg_grid, nonneg_univariate, trajectory
from .kernels import BACKEND
from .levy import (
    LevyTriplet,
    check_generator_grid,
    generator_from_triplet,
    scaled_family_probe,
)
from .liegroup import apply, dilate, exp, inverse, log, matrix_rep, mul
from .measures import (
    AtomicMeasure,
    apply_measure,
    convolve,
    measure_moments,
    power_convolve,
)
from .moments import (
    check_preserver,
    d_inv,
    d_map,
    moment_matrix,
    psd_check,
    seq_convolve,
)

__version__ = "0.1.0"
