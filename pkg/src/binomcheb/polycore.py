"""Construction and evaluation of the binomial Chebyshev-U family.

The polynomials P_m are the Taylor coefficients in t of

    1 / ((1 - t)**alpha * (1 - 2 z t + t**2)),

equivalently P_m = sum_k b_{m-k} U_k with b_k = binom(alpha + k - 1, k).
Multiplying the generating function through by (1 - 2 z t + t**2) gives the
inhomogeneous recurrence P_m - 2 z P_{m-1} + P_{m-2} = b_m used below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "Params",
    "BinomialWeights",
    "ChebSeries",
    "EvalPoint",
    "binomial_weights",
    "cheb_series",
    "pm_by_recurrence",
    "pm_by_cheb_combination",
    "pm_and_derivative",
    "pm_by_series_expansion",
    "chebyshev_u",
    "monomial_coefficients",
    "MAX_MONOMIAL_DEGREE",
]

# Beyond this the 2**m leading coefficient ruins relative accuracy.
MAX_MONOMIAL_DEGREE = 30

Number = Union[complex, float, np.ndarray]


@dataclass(frozen=True)
class Params:
    """The pair (alpha, m) indexing one member of the family."""

    alpha: float
    m: int

    def __post_init__(self):
        alpha = float(self.alpha)
        if not math.isfinite(alpha) or alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 0:
            raise ValueError(f"m must be a nonnegative integer, got {self.m!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "m", int(self.m))

    def require_unit_alpha(self):
        """Raise unless 0 < alpha < 1 (the regime where the outside-zero count stays bounded)."""
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class BinomialWeights:
    alpha: float
    values: np.ndarray


@dataclass(frozen=True)
class ChebSeries:
    """P_m in the U basis: ``weights[k]`` multiplies U_k."""

    params: Params
    weights: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.weights) - 1


@dataclass(frozen=True)
class EvalPoint:
    """A point given either directly as ``z`` or as an angle with z = cos(theta)."""

    z: complex | None = None
    theta: float | None = None

    def __post_init__(self):
        if (self.z is None) == (self.theta is None):
            raise ValueError("give exactly one of z or theta")
        if self.theta is not None and not 0.0 < self.theta < math.pi:
            raise ValueError(f"theta must lie in (0, pi), got {self.theta}")

    @property
    def value(self) -> complex | float:
        if self.theta is not None:
            return math.cos(self.theta)
        return self.z


def _as_z(point):
    if isinstance(point, EvalPoint):
        return point.value
    return point


def _as_params(params, m=None) -> Params:
    if isinstance(params, Params):
        return params
    return Params(params, m)


def binomial_weights(alpha: float, m: int) -> BinomialWeights:
    """Coefficients b_0..b_m of (1 - t)**(-alpha).

    Built only from the product recurrence b_k = b_{k-1} (alpha + k - 1) / k;
    gamma-function ratios overflow long before the recurrence does.
    """
    params = Params(alpha, m)
    b = np.empty(params.m + 1)
    b[0] = 1.0
    for k in range(1, params.m + 1):
        b[k] = b[k - 1] * (params.alpha + k - 1) / k
    return BinomialWeights(params.alpha, b)


def cheb_series(params: Params) -> ChebSeries:
    b = binomial_weights(params.alpha, params.m).values
    return ChebSeries(params, b[::-1].copy())


def pm_by_recurrence(params: Params, point) -> Number:
    """P_m(z) by the forward recurrence seeded with P_{-1} = 0, P_0 = 1.

    ``point`` may be an :class:`EvalPoint`, a scalar or an array of z values.
    """
    params = _as_params(params)
    z = _as_z(point)
    b = binomial_weights(params.alpha, params.m).values
    z = np.asarray(z)
    two_z = 2 * z
    prev = np.zeros_like(z, dtype=np.result_type(z, float))
    cur = np.ones_like(prev)
    for k in range(1, params.m + 1):
        prev, cur = cur, b[k] + two_z * cur - prev
    return cur[()] if cur.ndim == 0 else cur


def pm_by_cheb_combination(series: ChebSeries, point) -> Number:
    """Evaluate sum_k weights[k] U_k(z) by Clenshaw's backward recurrence.

    At z = +-1 the exact values U_k(+-1) = (+-1)**k (k + 1) are summed directly.
    """
    z = np.asarray(_as_z(point))
    c = np.asarray(series.weights)
    n = len(c)
    k = np.arange(n)
    out_dtype = np.result_type(z, float)

    y1 = np.zeros_like(z, dtype=out_dtype)
    y2 = np.zeros_like(y1)
    two_z = 2 * z
    for ck in c[::-1]:
        y1, y2 = ck + two_z * y1 - y2, y1
    result = y1

    at_plus = z == 1
    at_minus = z == -1
    if np.any(at_plus) or np.any(at_minus):
        result = np.array(result, copy=True)
        result[at_plus] = np.sum(c * (k + 1))
        result[at_minus] = np.sum(c * (k + 1) * (-1.0) ** k)
    return result[()] if result.ndim == 0 else result


def pm_and_derivative(params: Params, z) -> tuple:
    """Return (P_m(z), P_m'(z)) from simultaneous forward recurrences.

    Differentiating the three-term relation gives
    P'_k = 2 P_{k-1} + 2 z P'_{k-1} - P'_{k-2}.
    """
    params = _as_params(params)
    b = binomial_weights(params.alpha, params.m).values
    z = np.asarray(_as_z(z))
    dtype = np.result_type(z, float)
    p_prev = np.zeros_like(z, dtype=dtype)
    p_cur = np.ones_like(p_prev)
    d_prev = np.zeros_like(p_prev)
    d_cur = np.zeros_like(p_prev)
    for k in range(1, params.m + 1):
        p_next = b[k] + 2 * z * p_cur - p_prev
        d_next = 2 * p_cur + 2 * z * d_cur - d_prev
        p_prev, p_cur = p_cur, p_next
        d_prev, d_cur = d_cur, d_next
    if p_cur.ndim == 0:
        return p_cur[()], d_cur[()]
    return p_cur, d_cur


def pm_by_series_expansion(params: Params, z: complex) -> complex:
    """Coefficient of t**m in the generating function, by power-series algebra.

    The product of the truncated series for (1 - t)**(-alpha) and for
    1/(1 - 2 z t + t**2) is formed by explicit convolution; the latter
    series comes from long division.  Independent of both recurrences in
    the sense that no U_k or P_k is ever formed.
    """
    params = _as_params(params)
    m = params.m
    z = complex(z)
    # 1/(1 - 2 z t + t^2) via long division: q_0 = 1, q_k = 2 z q_{k-1} - q_{k-2}
    q = np.zeros(m + 1, dtype=complex)
    q[0] = 1.0
    for k in range(1, m + 1):
        q[k] = 2 * z * q[k - 1] - (q[k - 2] if k >= 2 else 0.0)
    b = binomial_weights(params.alpha, m).values
    return complex(np.dot(b, q[::-1]))


def chebyshev_u(k: int, z):
    """U_k(z), using sin((k+1) theta) / sin(theta) for real z in (-1, 1)."""
    z = np.asarray(z)
    if np.isrealobj(z) and np.all(np.abs(z) < 1):
        theta = np.arccos(z)
        return np.sin((k + 1) * theta) / np.sin(theta)
    u_prev = np.zeros_like(z, dtype=np.result_type(z, float))
    u = np.ones_like(u_prev)
    for _ in range(k):
        u_prev, u = u, 2 * z * u - u_prev
    return u


def monomial_coefficients(params: Params) -> np.ndarray:
    """Power-basis coefficients of P_m, lowest degree first (m <= 30 only)."""
    params = _as_params(params)
    if params.m > MAX_MONOMIAL_DEGREE:
        raise ValueError(
            f"monomial coefficients are only provided for m <= {MAX_MONOMIAL_DEGREE}"
        )
    series = cheb_series(params)
    out = np.zeros(params.m + 1)
    u_prev = np.zeros(params.m + 1)
    u = np.zeros(params.m + 1)
    u[0] = 1.0
    for k, ck in enumerate(series.weights):
        out += ck * u
        shifted = np.zeros_like(u)
        shifted[1:] = 2 * u[:-1]
        u_prev, u = u, shifted - u_prev
    return out
