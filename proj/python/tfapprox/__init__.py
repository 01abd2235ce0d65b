"""Approximation of functions by finite combinations of shifted dilates of one window."""

from ._core import (
    Approximant,
    BudgetInfeasible,
    Error,
    Grid,
    GridFunction,
    InvalidArgument,
    WindowZeroMean,
    approximate,
    c1_constant,
    canonical_spec,
    check_submultiplicative,
    convolve,
    dilate_compress,
    discretize,
    discretized_conv_error,
    fourier,
    modulate,
    mollify_error,
    norm,
    sample,
    selftest,
    translate,
    weighted_lp_norm,
)

__all__ = [
    "Approximant",
    "BudgetInfeasible",
    "Error",
    "Grid",
    "GridFunction",
    "InvalidArgument",
    "WindowZeroMean",
    "approximate",
    "c1_constant",
    "canonical_spec",
    "check_submultiplicative",
    "convolve",
    "dilate_compress",
    "discretize",
    "discretized_conv_error",
    "fourier",
    "modulate",
    "mollify_error",
    "norm",
    "sample",
    "selftest",
    "translate",
    "weighted_lp_norm",
]
