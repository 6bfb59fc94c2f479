"""Complete and upper incomplete gamma functions.

Series for the lower function when x < s + 1, modified Lentz continued
fraction for the upper function otherwise (Numerical Recipes, ch. 6).
Non-positive non-integer s is reached by the downward recurrence
Gamma(s, x) = (Gamma(s + 1, x) - x^s e^{-x}) / s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["GammaPair", "gamma_upper", "gamma_pair", "gamma_upper_asymptotic"]

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 10000


@dataclass(frozen=True)
class GammaPair:
    s: float
    x: float
    complete: float
    upper: float


def _is_nonpositive_integer(s):
    return s <= 0 and float(s).is_integer()


def _lower_series(s, x):
    # gamma(s, x) = x^s e^{-x} sum_n x^n / (s (s+1) ... (s+n))
    term = 1.0 / s
    total = term
    ap = s
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + s * math.log(x))
    raise ArithmeticError(f"lower gamma series did not converge for s={s}, x={x}")


def _upper_cf(s, x):
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return math.exp(-x + s * math.log(x)) * h
    raise ArithmeticError(f"upper gamma continued fraction did not converge for s={s}, x={x}")


def gamma_upper(s: float, x: float) -> float:
    """Gamma(s, x) = int_x^inf t^(s-1) e^(-t) dt.

    Raises ValueError for x < 0, and for s in {0, -1, -2, ...} when x = 0.
    """
    s = float(s)
    x = float(x)
    if not math.isfinite(s) or not math.isfinite(x) and x != math.inf:
        raise ValueError("s and x must be finite")
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    if x == math.inf:
        return 0.0
    if x == 0.0:
        if _is_nonpositive_integer(s):
            raise ValueError(f"Gamma({s}) is undefined")
        return math.gamma(s)
    if s <= 0:
        # Downward recurrence from a positive order
        return (gamma_upper(s + 1.0, x) - math.exp(s * math.log(x) - x)) / s
    if x < s + 1.0:
        return math.gamma(s) - _lower_series(s, x)
    return _upper_cf(s, x)


def gamma_pair(s: float, x: float) -> GammaPair:
    if _is_nonpositive_integer(s):
        raise ValueError(f"Gamma({s}) is undefined")
    return GammaPair(float(s), float(x), math.gamma(s), gamma_upper(s, x))


def gamma_upper_asymptotic(s: float, x: float, terms: int = 4) -> float:
    """Large-x expansion x^(s-1) e^(-x) sum_{n<terms} Gamma(s)/Gamma(s-n) x^(-n).

    The ratio Gamma(s)/Gamma(s-n) = (s-1)(s-2)...(s-n) is accumulated as a
    falling product, so integer s is allowed (the series then terminates).
    """
    total = 0.0
    coeff = 1.0
    for n in range(terms):
        total += coeff * x ** (-n)
        coeff *= s - 1 - n
    return x ** (s - 1) * math.exp(-x) * total
