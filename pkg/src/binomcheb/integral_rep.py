"""Integral-plus-oscillation representation of P_m(cos theta) for 0 < alpha < 1.

For theta in (0, pi),

    P_m(cos theta) = sin(pi alpha)/pi * I_m(theta) + A(theta) sin((m+1) theta + alpha (theta - pi)/2)

with the amplitude A(theta) = sin^alpha(theta/2) / (sin(theta) (1 - cos theta)^alpha) and

    I_m(theta) = int_0^inf dx / (x^alpha ((1+x)^2 - 2 (1+x) cos theta + 1) (1+x)^(m+1)).

I_m is computed in the variable u with 1 + x = e^u, where the integrand is
exp(-(m+alpha) u) u^(-alpha) g(u).  The u^(-alpha) endpoint singularity is
removed by u = v^(1/(1-alpha)), under which u^(-alpha) du = dv / (1 - alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .polycore import Params, pm_by_recurrence
from .quadrature import adaptive_gk15

__all__ = [
    "RepresentationReport",
    "f_factor",
    "f_factor_derivative",
    "g_factor",
    "laplace_integrand",
    "tail_cutoff",
    "laplace_integral",
    "laplace_integral_xspace",
    "amplitude",
    "integral_term",
    "trig_term",
    "pm_via_representation",
]


def _check_theta(theta):
    if not 0.0 < theta < math.pi:
        raise ValueError(f"theta must lie in (0, pi), got {theta}")


def _check_rel_tol(rel_tol):
    if not 0.0 < rel_tol <= 1e-6:
        raise ValueError(f"rel_tol must lie in (0, 1e-6], got {rel_tol}")


def f_factor(u, alpha):
    """f(u) = (u / (1 - e^{-u}))**alpha, with f(0) = 1."""
    u = np.asarray(u, dtype=float)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(u == 0, 1.0, u / -np.expm1(-u))
    return ratio ** alpha


def f_factor_derivative(u, alpha):
    """f'(u) = alpha (u/(1-e^{-u}))^(alpha-1) (1 - e^{-u}(1+u)) / (1-e^{-u})^2."""
    u = np.asarray(u, dtype=float)
    one_minus = -np.expm1(-u)
    # 1 - e^{-u}(1+u) suffers cancellation for small u; use its series there
    small = u < 1e-3
    num = np.where(small, u * u / 2 - u ** 3 / 3 + u ** 4 / 8,
                   one_minus - u * np.exp(-u))
    return alpha * (u / one_minus) ** (alpha - 1) * num / one_minus ** 2


def _denominator(u, theta):
    # e^{2u} - 2 e^u cos(theta) + 1 written without cancellation near u = 0, theta = 0
    return np.expm1(u) ** 2 + 4 * np.exp(u) * math.sin(theta / 2) ** 2


def g_factor(u, alpha, theta):
    """g(u) = f(u) / (e^{2u} - 2 e^u cos(theta) + 1); g(0) = 1 / (2 - 2 cos(theta))."""
    return f_factor(u, alpha) / _denominator(np.asarray(u, dtype=float), theta)


def laplace_integrand(u, params: Params, theta):
    """exp(-(m+alpha) u) u^(-alpha) g(u), evaluated without overflow for large u."""
    u = np.asarray(u, dtype=float)
    a, m = params.alpha, params.m
    # Divide numerator and denominator by e^{2u}; u^(-alpha) f(u) = (1 - e^{-u})^(-alpha)
    scaled_den = np.expm1(-u) ** 2 + 4 * np.exp(-u) * math.sin(theta / 2) ** 2
    with np.errstate(divide="ignore"):
        return np.exp(-(m + a + 2) * u) * (-np.expm1(-u)) ** (-a) / scaled_den


def _regularised(params: Params, theta):
    """The v-space integrand exp(-(m+a)u) g(u) / (1 - a) with u = v^(1/(1-a))."""
    a, m = params.alpha, params.m
    power = 1.0 / (1.0 - a)
    s2 = math.sin(theta / 2) ** 2

    def integrand(v):
        u = v ** power
        den = np.expm1(-u) ** 2 + 4 * np.exp(-u) * s2
        return np.exp(-(m + a + 2) * u) * f_factor(u, a) / den / (1.0 - a)

    return integrand


def tail_cutoff(params: Params, rel_tol):
    """Upper u limit beyond which exp(-(m+alpha) u) is below rel_tol * e^{-40}."""
    return (40.0 + math.log(1.0 / rel_tol)) / (params.m + params.alpha)


def laplace_integral(params: Params, theta, rel_tol=1e-10, lower=0.0, upper=None):
    """int_lower^upper exp(-(m+alpha) u) u^(-alpha) g(u) du (upper defaults to the tail cutoff).

    Equals I_m(theta) when lower = 0 and upper is left at its default.
    """
    params.require_unit_alpha()
    _check_theta(theta)
    if upper is None:
        upper = lower + tail_cutoff(params, rel_tol)
    if upper <= lower:
        return 0.0
    a = params.alpha
    if lower == 0.0:
        f = _regularised(params, theta)
        v_hi = upper ** (1.0 - a)
        # The Lorentzian-like peak of g has width ~theta in u; seed a breakpoint there
        bps = (theta ** (1.0 - a),) if theta < upper else ()
        return adaptive_gk15(f, 0.0, v_hi, rel_tol=rel_tol, breakpoints=bps).value

    def f(u):
        return laplace_integrand(u, params, theta)

    return adaptive_gk15(f, lower, upper, rel_tol=rel_tol).value


def laplace_integral_xspace(params: Params, theta, rel_tol=1e-10):
    """I_m(theta) directly in x, with scipy's algebraic-weight rule at x = 0.

    Serves as the independent route for the substitution 1 + x = e^u.
    """
    from scipy.integrate import quad

    params.require_unit_alpha()
    _check_theta(theta)
    a, m = params.alpha, params.m
    c = math.cos(theta)

    def smooth(x):
        # in terms of w = 1/(1+x) so large x underflows instead of overflowing
        w = 1.0 / (1.0 + x)
        return w ** (m + 3) / (1.0 - 2 * c * w + w * w)

    head, _ = quad(smooth, 0.0, 1.0, weight="alg", wvar=(-a, 0.0),
                   epsabs=0.0, epsrel=rel_tol, limit=500)
    tail, _ = quad(lambda x: smooth(x) * x ** (-a), 1.0, np.inf,
                   epsabs=0.0, epsrel=rel_tol, limit=500)
    return head + tail


def amplitude(alpha, theta):
    """sin^alpha(theta/2) / (sin(theta) (1 - cos theta)^alpha)."""
    _check_theta(theta)
    half = math.sin(theta / 2)
    # 1 - cos(theta) = 2 sin^2(theta/2), avoiding cancellation at small theta
    return half ** alpha / (math.sin(theta) * (2 * half * half) ** alpha)


def integral_term(params: Params, theta, rel_tol=1e-10):
    """(1/pi) Im int_0^inf dx / (x^alpha e^{-i pi alpha} (...)(1+x)^{m+1}).

    The bracketed factor is real and positive, so the imaginary part reduces
    to sin(pi alpha) times the real integral.
    """
    params.require_unit_alpha()
    _check_theta(theta)
    _check_rel_tol(rel_tol)
    return math.sin(math.pi * params.alpha) / math.pi * laplace_integral(params, theta, rel_tol)


def trig_term(params: Params, theta):
    a, m = params.alpha, params.m
    return amplitude(a, theta) * math.sin((m + 1) * theta + a * (theta - math.pi) / 2)


@dataclass(frozen=True)
class RepresentationReport:
    theta: float
    integral_term: float
    trig_term: float
    pm_direct: float
    abs_error: float

    def to_dict(self):
        return {
            "theta": self.theta,
            "integral_term": self.integral_term,
            "trig_term": self.trig_term,
            "pm_direct": self.pm_direct,
            "abs_error": self.abs_error,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(**{k: float(d[k]) for k in
                      ("theta", "integral_term", "trig_term", "pm_direct", "abs_error")})


def pm_via_representation(params: Params, theta, rel_tol=1e-10) -> RepresentationReport:
    """Evaluate both terms and compare their sum with the forward recurrence."""
    it = integral_term(params, theta, rel_tol)
    tt = trig_term(params, theta)
    direct = float(pm_by_recurrence(params, math.cos(theta)))
    return RepresentationReport(theta, it, tt, direct, abs(it + tt - direct))
