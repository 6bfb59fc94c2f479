"""Check suites shared by the ``verify`` command and the acceptance tests.

Each suite returns a plain dict with ``passed``, ``tolerance``, ``max_error``
and ``checks`` plus suite-specific ``details``.
"""

from __future__ import annotations

import math

import numpy as np

from .integral_rep import pm_via_representation
from .lemma import scan_lemma, verify_split_bounds
from .polycore import Params, cheb_series, pm_by_cheb_combination, pm_by_recurrence
from .special import gamma_upper, gamma_upper_asymptotic
from .zeros import critical_angles, sign_pattern

__all__ = [
    "SUITES",
    "IDENTITY_M",
    "identity_suite",
    "oracle_suite",
    "gamma_suite",
    "split_suite",
    "signs_suite",
    "growth_ratios",
    "default_m_values",
]

IDENTITY_M = (0, 1, 2, 5, 10, 25, 50)


def default_m_values(m_max):
    """Roughly geometric m-values in [1, m_max], always containing m_max."""
    base = [1, 2, 3, 5, 8, 10, 15, 20, 25, 30, 40, 50, 60, 70, 80, 90, 100,
            120, 140, 160, 180, 200, 250, 300, 400, 500]
    out = [m for m in base if m <= m_max]
    if m_max not in out:
        out.append(m_max)
    return out


def identity_suite(alpha, m_max=50, n_theta=50, rel_tol=1e-10, tol=1e-8):
    """Integral term + trig term against the recurrence on a theta grid in (0.1, pi - 0.1)."""
    ms = sorted({m for m in IDENTITY_M if m <= m_max} | {m_max})
    thetas = np.linspace(0.1, math.pi - 0.1, n_theta + 2)[1:-1]
    worst = 0.0
    worst_abs = 0.0
    worst_at = None
    for m in ms:
        params = Params(alpha, m)
        for th in thetas:
            rep = pm_via_representation(params, float(th), rel_tol)
            err = rep.abs_error / (1 + abs(rep.pm_direct))
            worst_abs = max(worst_abs, rep.abs_error)
            if err >= worst:
                worst, worst_at = err, [m, float(th)]
    return {
        "suite": "identity",
        "alpha": float(alpha),
        "passed": worst <= tol,
        "tolerance": tol,
        "max_error": worst,
        "checks": len(ms) * len(thetas),
        "details": {"max_abs_error": worst_abs, "worst_at": worst_at, "m_values": ms},
    }


def oracle_suite(alpha, m_max=100, n_points=200, seed=0, tol=1e-10):
    """Forward recurrence against Clenshaw at random complex z in [-2, 2] x [-1, 1]."""
    rng = np.random.default_rng(seed)
    z = rng.uniform(-2, 2, n_points) + 1j * rng.uniform(-1, 1, n_points)
    worst = 0.0
    for m in range(m_max + 1):
        params = Params(alpha, m)
        rec = pm_by_recurrence(params, z)
        cheb = pm_by_cheb_combination(cheb_series(params), z)
        worst = max(worst, float(np.max(np.abs(rec - cheb) / (1 + np.abs(rec)))))
    return {
        "suite": "oracle",
        "alpha": float(alpha),
        "passed": worst <= tol,
        "tolerance": tol,
        "max_error": worst,
        "checks": (m_max + 1) * n_points,
        "details": {"seed": seed},
    }


def gamma_suite(alpha=0.5, tol=1e-12, asymptotic_tol=1e-4):
    """Gamma(1, x) = e^-x and the four-term large-x expansion at (s, x) = (0.5, 25)."""
    errs = [abs(gamma_upper(1.0, x) - math.exp(-x)) / math.exp(-x) for x in (0.1, 1.0, 10.0)]
    exact = gamma_upper(0.5, 25.0)
    asym = abs(gamma_upper_asymptotic(0.5, 25.0, terms=4) - exact) / exact
    return {
        "suite": "gamma",
        "alpha": float(alpha),
        "passed": max(errs) <= tol and asym <= asymptotic_tol,
        "tolerance": tol,
        "max_error": max(errs),
        "checks": 4,
        "details": {"asymptotic_rel_error": asym, "asymptotic_tolerance": asymptotic_tol},
    }


def growth_ratios(values):
    """Successive ratios v[i+1] / v[i]."""
    return [values[i + 1] / values[i] for i in range(len(values) - 1)]


def split_suite(alpha=0.5, thetas=(0.5, 1.0, 2.0), m_values=(25, 100, 400),
                rel_tol=1e-10, max_growth=1.25):
    """Stability of piece1 theta^2 m^(1-alpha) and piece2 m theta^2 e^sqrt(m) as m quadruples."""
    rows = {}
    worst = 0.0
    for th in thetas:
        recs = [verify_split_bounds(Params(alpha, m), th, rel_tol) for m in m_values]
        g1 = growth_ratios([r.scaled_piece1 for r in recs])
        g2 = growth_ratios([r.scaled_piece2 for r in recs])
        worst = max(worst, *g1, *g2)
        rows[repr(th)] = {
            "scaled_piece1": [r.scaled_piece1 for r in recs],
            "scaled_piece2": [r.scaled_piece2 for r in recs],
            "growth_piece1": g1,
            "growth_piece2": g2,
        }
    return {
        "suite": "split",
        "alpha": float(alpha),
        "passed": worst <= max_growth,
        "tolerance": max_growth,
        "max_error": worst,
        "checks": 2 * len(thetas) * (len(m_values) - 1),
        "details": {"m_values": list(m_values), "by_theta": rows},
    }


def signs_suite(alpha=0.5, m_values=(50, 100, 200), K=None, theta_points=40, rel_tol=1e-10):
    """sign(P_m(cos theta_h)) = (-1)^h for every theta_h > K/m.

    When ``K`` is not given it is taken from a lemma scan up to max(m_values).
    """
    scan = None
    if K is None:
        scan = scan_lemma(alpha, default_m_values(max(m_values)), theta_points, rel_tol)
        K = scan.K_emp
    mismatches = 0
    checks = 0
    per_m = {}
    for m in m_values:
        params = Params(alpha, m)
        ca = critical_angles(params, K)
        signs = np.array(sign_pattern(params, ca))
        expected = np.where(ca.h_values % 2 == 0, 1, -1)
        bad = int(np.count_nonzero(signs != expected))
        mismatches += bad
        checks += len(signs)
        per_m[str(m)] = {"angles": len(signs), "mismatches": bad}
    return {
        "suite": "signs",
        "alpha": float(alpha),
        "passed": mismatches == 0 and checks > 0,
        "tolerance": 0.0,
        "max_error": float(mismatches),
        "checks": checks,
        "details": {"K": K, "M": None if scan is None else scan.M_emp, "per_m": per_m},
    }


SUITES = {
    "identity": identity_suite,
    "oracle": oracle_suite,
    "gamma": gamma_suite,
    "split": split_suite,
    "signs": signs_suite,
}
