"""Zeros of P_m: comrade-matrix eigenvalues, theta-space bracketing, classification."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .polycore import Params, binomial_weights, cheb_series, pm_and_derivative, pm_by_recurrence

__all__ = [
    "INSIDE_IMAG_TOL",
    "INSIDE_EDGE_TOL",
    "BORDER_TOL",
    "ZeroAnalysisError",
    "CriticalAngles",
    "ZeroReport",
    "critical_angles",
    "sign_pattern",
    "comrade_matrix",
    "zeros_in_interval",
    "all_zeros",
    "outside_count_sweep",
]

INSIDE_IMAG_TOL = 1e-8
INSIDE_EDGE_TOL = 1e-10
BORDER_TOL = 1e-8


class ZeroAnalysisError(RuntimeError):
    pass


@dataclass(frozen=True)
class CriticalAngles:
    params: Params
    h_values: np.ndarray
    angles: np.ndarray

    @property
    def gap(self):
        return math.pi / (self.params.m + 1 + self.params.alpha / 2)


def _theta_h(alpha, m, h):
    return (h * math.pi + (alpha + 1) * math.pi / 2) / (m + 1 + alpha / 2)


def critical_angles(params: Params, K=0.0) -> CriticalAngles:
    """Angles where sin((m+1) theta + alpha (theta - pi)/2) = +-1, restricted to (K/m, pi).

    The admissible h satisfy (m+1+alpha/2) K/(m pi) - (alpha+1)/2 < h < m + 1/2.
    """
    params.require_unit_alpha()
    a, m = params.alpha, params.m
    if m < 1:
        raise ValueError("critical angles need m >= 1")
    if K < 0:
        raise ValueError("K must be nonnegative")
    h_low = (m + 1 + a / 2) * K / (m * math.pi) - (a + 1) / 2
    h_min = math.floor(h_low) + 1
    h_max = m  # largest integer below m + 1/2
    hs = np.arange(max(h_min, 0), h_max + 1)
    angles = np.array([_theta_h(a, m, h) for h in hs])
    # guard the strict window against rounding at the ends
    keep = (angles > K / m) & (angles < math.pi)
    return CriticalAngles(params, hs[keep], angles[keep])


def sign_pattern(params: Params, angles: CriticalAngles):
    """sign(P_m(cos theta_h)) for each critical angle; raises on an exact zero."""
    values = pm_by_recurrence(params, np.cos(angles.angles))
    signs = np.sign(values).astype(int)
    if np.any(signs == 0):
        bad = angles.h_values[signs == 0]
        raise ZeroAnalysisError(f"P_m vanishes exactly at critical angle(s) h={bad.tolist()}")
    return signs.tolist()


def comrade_matrix(params: Params) -> np.ndarray:
    """Matrix whose eigenvalues are the zeros of sum_k c_k U_k.

    Rows encode z U_k = (U_{k-1} + U_{k+1}) / 2; the last row eliminates U_m
    with the series itself.
    """
    c = cheb_series(params).weights
    m = len(c) - 1
    if m < 1:
        raise ValueError("a constant has no zeros")
    A = np.zeros((m, m))
    idx = np.arange(m - 1)
    A[idx, idx + 1] = 0.5
    A[idx + 1, idx] = 0.5
    A[m - 1, :] -= c[:m] / (2 * c[m])
    return A


def _bisect_theta(params, lo, hi, f_lo, tol):
    """Bisect all brackets [lo_i, hi_i] at once until each is narrower than tol."""
    lo, hi, f_lo = lo.copy(), hi.copy(), f_lo.copy()
    while np.any(hi - lo > tol):
        mid = 0.5 * (lo + hi)
        f_mid = pm_by_recurrence(params, np.cos(mid))
        same = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(same, mid, lo)
        f_lo = np.where(same, f_mid, f_lo)
        hi = np.where(same | (f_mid == 0), np.where(f_mid == 0, mid, hi), mid)
        lo = np.where(f_mid == 0, mid, lo)
    return 0.5 * (lo + hi)


def zeros_in_interval(params: Params, tol=1e-13, refine=8, edge=1e-9):
    """Real zeros in (-1, 1) from sign changes of theta -> P_m(cos theta).

    The grid is the critical-angle partition subdivided ``refine`` times,
    padded out to [edge, pi - edge].  Each bracket is bisected to width
    ``tol`` in theta.  Zeros of even multiplicity are invisible here.
    """
    a, m = params.alpha, params.m
    if m < 1:
        return []
    gap = math.pi / (m + 1 + a / 2)
    nodes = [_theta_h(a, m, h) for h in range(-1, m + 2)]
    nodes = [t for t in nodes if edge < t < math.pi - edge]
    grid = [edge] + nodes + [math.pi - edge]
    fine = []
    for lo, hi in zip(grid[:-1], grid[1:]):
        n = max(refine, int(math.ceil(refine * (hi - lo) / gap)))
        fine.extend(np.linspace(lo, hi, n, endpoint=False))
    fine.append(grid[-1])
    # extra geometric points toward both ends, where zeros may crowd
    fine.extend(np.geomspace(edge, gap / refine, 40))
    fine.extend(math.pi - np.geomspace(edge, gap / refine, 40))
    thetas = np.unique(np.array(fine))
    vals = pm_by_recurrence(params, np.cos(thetas))

    exact = thetas[vals == 0]
    change = np.flatnonzero(vals[:-1] * vals[1:] < 0)
    roots = _bisect_theta(params, thetas[change], thetas[change + 1], vals[change], tol)
    zs = sorted(np.cos(np.concatenate([exact, roots])).tolist())
    out = []
    for z in zs:
        if -1.0 < z < 1.0 and (not out or z - out[-1] > 10 * tol):
            out.append(z)
    return out


@dataclass
class ZeroReport:
    params: Params
    inside_zeros: list
    outside_zeros: list
    residuals: list
    method: str = "comrade-eig+newton"
    flagged: list = field(default_factory=list)
    interval_zeros: list = field(default_factory=list)

    @property
    def inside_count(self):
        return len(self.inside_zeros)

    @property
    def outside_count(self):
        return len(self.outside_zeros)

    def all_zeros(self):
        return [complex(z) for z in self.inside_zeros] + list(self.outside_zeros)

    def to_dict(self):
        return {
            "alpha": self.params.alpha,
            "m": self.params.m,
            "inside_count": self.inside_count,
            "inside_zeros": [float(z) for z in self.inside_zeros],
            "outside_zeros": [[float(z.real), float(z.imag)] for z in self.outside_zeros],
            "residuals": [float(r) for r in self.residuals],
            "method": self.method,
            "flagged": [[float(z.real), float(z.imag)] for z in self.flagged],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            params=Params(d["alpha"], d["m"]),
            inside_zeros=[float(z) for z in d["inside_zeros"]],
            outside_zeros=[complex(re, im) for re, im in d["outside_zeros"]],
            residuals=[float(r) for r in d["residuals"]],
            method=d["method"],
            flagged=[complex(re, im) for re, im in d.get("flagged", [])],
        )

    def rows(self):
        """(re, im, inside_flag, residual) per zero, inside zeros first."""
        zs = self.all_zeros()
        return [(z.real, z.imag, i < self.inside_count, r)
                for i, (z, r) in enumerate(zip(zs, self.residuals))]


def _newton_polish(params, z, max_iter=50):
    """Vectorised Newton on an array of starting points, keeping each best iterate."""
    z = np.asarray(z, dtype=complex)
    p, dp = pm_and_derivative(params, z)
    best_z, best_res = z.copy(), np.abs(p)
    active = np.ones(z.shape, dtype=bool)
    eps = np.finfo(float).eps
    for _ in range(max_iter):
        active &= dp != 0
        if not np.any(active):
            break
        step = np.zeros_like(z)
        step[active] = p[active] / dp[active]
        z = z - step
        p, dp = pm_and_derivative(params, z)
        better = np.abs(p) < best_res
        best_z[better] = z[better]
        best_res[better] = np.abs(p[better])
        active &= np.abs(step) > 4 * eps * np.maximum(1.0, np.abs(z))
    return best_z


def _residual_scale(params, z):
    # Magnitude bound for the terms of the forward recurrence; its rounding floor
    # is a small multiple of eps times this.
    b = binomial_weights(params.alpha, params.m).values
    two_r = 2 * abs(z)
    prev, cur = 0.0, 1.0
    for k in range(1, params.m + 1):
        prev, cur = cur, b[k] + two_r * cur + prev
    return cur


def all_zeros(params: Params, tol=1e-13, check_interval=True) -> ZeroReport:
    """All m zeros via comrade-matrix eigenvalues, Newton-polished, then classified.

    A zero is inside iff |Im z| <= 1e-8 and |Re z| <= 1 - 1e-10.  Zeros within
    1e-8 of +-1 are counted outside and also listed in ``flagged``.
    """
    m = params.m
    if m < 1:
        raise ValueError("all_zeros needs m >= 1")
    eig = np.linalg.eigvals(comrade_matrix(params))
    polished = _newton_polish(params, eig)

    eps = np.finfo(float).eps
    residuals = np.abs(pm_by_recurrence(params, polished))
    scales = np.array([_residual_scale(params, z) for z in polished])
    # each reported zero must sit at the recurrence's rounding floor
    bad = residuals > 1e3 * eps * (1 + m) * scales
    if np.any(bad):
        raise ZeroAnalysisError(
            f"Newton polish failed to converge for {int(bad.sum())} zero(s) of P_{m}, "
            f"alpha={params.alpha}: residuals {residuals[bad].tolist()}")

    inside, outside, flagged, res_in, res_out = [], [], [], [], []
    for z, r in zip(polished, residuals):
        if abs(z.imag) <= INSIDE_IMAG_TOL:
            z_real = complex(z.real, 0.0)
            if abs(z.real) <= 1 - INSIDE_EDGE_TOL:
                inside.append(z.real)
                res_in.append(r)
                continue
            if abs(abs(z.real) - 1) <= BORDER_TOL:
                flagged.append(z_real)
            outside.append(z_real)
        else:
            outside.append(complex(z))
        res_out.append(r)

    order = np.argsort(inside)
    inside = [float(inside[i]) for i in order]
    res_in = [float(res_in[i]) for i in order]
    out_order = sorted(range(len(outside)), key=lambda i: (outside[i].real, outside[i].imag))
    outside = [outside[i] for i in out_order]
    res_out = [float(res_out[i]) for i in out_order]

    report = ZeroReport(params, inside, outside, res_in + res_out, flagged=flagged)
    if check_interval:
        certified = zeros_in_interval(params, tol=tol)
        report.interval_zeros = certified
        if len(certified) > len(inside):
            raise ZeroAnalysisError(
                f"theta-bisection found {len(certified)} zeros in (-1, 1) but the "
                f"eigenvalue path only {len(inside)} (alpha={params.alpha}, m={m})")
    return report


def _sweep_one(args):
    alpha, m, tol = args
    try:
        return m, all_zeros(Params(alpha, m), tol).outside_count, None
    except (ZeroAnalysisError, np.linalg.LinAlgError, ValueError) as exc:
        return m, None, str(exc)


def outside_count_sweep(alpha, m_values, tol=1e-13, workers=None):
    """(m, outside_count) for each m; failures give count None and do not stop the sweep.

    Returns the list of pairs and a dict of per-m error messages.
    """
    jobs = [(alpha, int(m), tol) for m in m_values]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_one, jobs))
    else:
        results = [_sweep_one(j) for j in jobs]
    counts = [(m, c) for m, c, _ in results]
    errors = {m: e for m, _, e in results if e is not None}
    return counts, errors
