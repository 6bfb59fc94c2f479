"""Polynomials generated by 1/((1 - t)^alpha (1 - 2 z t + t^2)) and their zeros."""

__version__ = "0.1.0"

from .polycore import (  # noqa: E402
    BinomialWeights,
    ChebSeries,
    EvalPoint,
    Params,
    binomial_weights,
    cheb_series,
    pm_and_derivative,
    pm_by_cheb_combination,
    pm_by_recurrence,
)
from .integral_rep import integral_term, pm_via_representation, trig_term  # noqa: E402
from .lemma import lemma_lhs, lemma_rhs, scan_lemma, verify_split_bounds  # noqa: E402
from .special import gamma_upper  # noqa: E402
from .zeros import (  # noqa: E402
    all_zeros,
    critical_angles,
    outside_count_sweep,
    sign_pattern,
    zeros_in_interval,
)

__all__ = [
    "BinomialWeights",
    "ChebSeries",
    "EvalPoint",
    "Params",
    "binomial_weights",
    "cheb_series",
    "pm_and_derivative",
    "pm_by_cheb_combination",
    "pm_by_recurrence",
    "integral_term",
    "trig_term",
    "pm_via_representation",
    "lemma_lhs",
    "lemma_rhs",
    "scan_lemma",
    "verify_split_bounds",
    "gamma_upper",
    "all_zeros",
    "critical_angles",
    "outside_count_sweep",
    "sign_pattern",
    "zeros_in_interval",
]
