"""Numerical witnesses for the key inequality

    (1/pi) I_m(theta) < sin^alpha(theta/2) / (sin(theta) (1 - cos theta)^alpha)

for theta in (K/m, pi) and m >= M, and for the bounds used to prove it.

The left side deliberately omits the sin(pi alpha) factor carried by the
integral term of the representation; since sin(pi alpha) <= 1 the
inequality as scanned here is the stronger one.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .integral_rep import amplitude, laplace_integral
from .polycore import Params

__all__ = [
    "K_CANDIDATES",
    "M_CANDIDATES",
    "THETA_MARGIN",
    "NoWitnessError",
    "LemmaScanReport",
    "SplitBounds",
    "lemma_lhs",
    "lemma_rhs",
    "theta_grid",
    "scan_lemma",
    "extract_witness",
    "verify_split_bounds",
]

K_CANDIDATES = (0.5, 1.0, 2.0, 4.0, 8.0, 16.0)
M_CANDIDATES = (1, 5, 10, 25)
# rhs blows up at pi, so the inequality is trivial there
THETA_MARGIN = 0.01
# smallest m*theta on the scan grid
MIN_M_THETA = 0.25


class NoWitnessError(RuntimeError):
    """No (K, M) pair from the candidate sets makes the inequality hold on the grid."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


def lemma_lhs(params: Params, theta, rel_tol=1e-10):
    """(1/pi) int_0^inf dx / (x^alpha ((1+x)^2 - 2(1+x) cos theta + 1) (1+x)^(m+1))."""
    return laplace_integral(params, theta, rel_tol) / math.pi


def lemma_rhs(alpha, theta):
    return amplitude(alpha, theta)


def theta_grid(m, n_points, min_m_theta=MIN_M_THETA, margin=THETA_MARGIN):
    """Angles geometric in m*theta from min_m_theta/m up to pi - margin."""
    lo = min_m_theta / m
    hi = math.pi - margin
    if lo >= hi:
        return np.array([hi])
    return np.geomspace(lo, hi, n_points)


def _scan_one_m(args):
    alpha, m, n_points, rel_tol = args
    params = Params(alpha, m)
    thetas = theta_grid(m, n_points)
    lhs = np.array([lemma_lhs(params, th, rel_tol) for th in thetas])
    rhs = np.array([lemma_rhs(alpha, th) for th in thetas])
    return thetas, lhs, rhs


@dataclass
class LemmaScanReport:
    alpha: float
    grid: list
    lhs: list
    rhs: list
    ratio: list
    scaled_ratio: list
    K_emp: float | None
    M_emp: int | None
    notes: list = field(default_factory=list)

    def admissible_mask(self, K=None, M=None):
        K = self.K_emp if K is None else K
        M = self.M_emp if M is None else M
        m = np.array([g[0] for g in self.grid], dtype=float)
        th = np.array([g[1] for g in self.grid], dtype=float)
        return (m >= M) & (th > K / m)

    def max_scaled_ratio(self, m_max=None):
        mask = self.admissible_mask()
        if m_max is not None:
            mask &= np.array([g[0] for g in self.grid]) <= m_max
        return float(np.max(np.asarray(self.scaled_ratio)[mask]))

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "grid": [[int(m), float(t)] for m, t in self.grid],
            "lhs": [float(v) for v in self.lhs],
            "rhs": [float(v) for v in self.rhs],
            "ratio": [float(v) for v in self.ratio],
            "scaled_ratio": [float(v) for v in self.scaled_ratio],
            "K_emp": self.K_emp,
            "M_emp": self.M_emp,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            alpha=float(d["alpha"]),
            grid=[(int(m), float(t)) for m, t in d["grid"]],
            lhs=list(map(float, d["lhs"])),
            rhs=list(map(float, d["rhs"])),
            ratio=list(map(float, d["ratio"])),
            scaled_ratio=list(map(float, d["scaled_ratio"])),
            K_emp=None if d["K_emp"] is None else float(d["K_emp"]),
            M_emp=None if d["M_emp"] is None else int(d["M_emp"]),
        )


def extract_witness(grid, ratio, k_candidates=K_CANDIDATES, m_candidates=M_CANDIDATES):
    """Smallest M (then smallest K) with ratio < 1 at every grid point m >= M, theta > K/m.

    Returns (K, M) or None.  A candidate M above every scanned m is skipped,
    since it would make the check vacuous.
    """
    m = np.array([g[0] for g in grid], dtype=float)
    th = np.array([g[1] for g in grid], dtype=float)
    ratio = np.asarray(ratio)
    for M in sorted(m_candidates):
        if not np.any(m >= M):
            continue
        for K in sorted(k_candidates):
            mask = (m >= M) & (th > K / m)
            if np.any(mask) and np.all(ratio[mask] < 1.0):
                return K, M
    return None


def scan_lemma(alpha, m_range, theta_points_per_m=40, rel_tol=1e-10, workers=None):
    """Evaluate both sides of the inequality on a per-m angle grid and extract (K, M).

    Raises :class:`NoWitnessError` (carrying the partial report) when no
    candidate pair works, which would be evidence against the inequality.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    m_values = sorted({int(m) for m in m_range})
    if not m_values:
        raise ValueError("m_range is empty")
    if m_values[0] < 1:
        raise ValueError("m_range must start at m >= 1")

    jobs = [(alpha, m, theta_points_per_m, rel_tol) for m in m_values]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_one_m, jobs))
    else:
        results = [_scan_one_m(j) for j in jobs]

    grid, lhs, rhs = [], [], []
    for m, (thetas, l, r) in zip(m_values, results):
        grid.extend((m, float(t)) for t in thetas)
        lhs.extend(l)
        rhs.extend(r)
    lhs = np.array(lhs)
    rhs = np.array(rhs)
    ratio = lhs / rhs
    mt = np.array([m * t for m, t in grid])
    scaled = ratio * mt ** (1.0 - alpha)

    witness = extract_witness(grid, ratio)
    report = LemmaScanReport(
        alpha=float(alpha),
        grid=grid,
        lhs=lhs.tolist(),
        rhs=rhs.tolist(),
        ratio=ratio.tolist(),
        scaled_ratio=scaled.tolist(),
        K_emp=None if witness is None else witness[0],
        M_emp=None if witness is None else witness[1],
    )
    if witness is None:
        raise NoWitnessError(
            f"no (K, M) in {K_CANDIDATES} x {M_CANDIDATES} makes lhs < rhs "
            f"on the grid for alpha={alpha}", report)
    return report


@dataclass(frozen=True)
class SplitBounds:
    """The two pieces of int_0^inf exp(-(m+alpha)u) u^(-alpha) g(u) du split at 1/sqrt(m)."""

    alpha: float
    m: int
    theta: float
    piece1: float
    piece2: float
    total: float
    scaled_piece1: float
    scaled_piece2: float
    additivity_residual: float

    def to_dict(self):
        return dict(self.__dict__)


def verify_split_bounds(params: Params, theta, rel_tol=1e-10) -> SplitBounds:
    """Compute both pieces and their normalisations.

    scaled_piece1 = piece1 * theta^2 * m^(1-alpha)
    scaled_piece2 = piece2 * m * theta^2 * e^(sqrt(m))
    """
    params.require_unit_alpha()
    if params.m < 1:
        raise ValueError("the split at 1/sqrt(m) needs m >= 1")
    a, m = params.alpha, params.m
    cut = 1.0 / math.sqrt(m)
    piece1 = laplace_integral(params, theta, rel_tol, lower=0.0, upper=cut)
    piece2 = laplace_integral(params, theta, rel_tol, lower=cut)
    total = laplace_integral(params, theta, rel_tol)
    return SplitBounds(
        alpha=a,
        m=m,
        theta=float(theta),
        piece1=piece1,
        piece2=piece2,
        total=total,
        scaled_piece1=piece1 * theta ** 2 * m ** (1.0 - a),
        scaled_piece2=piece2 * m * theta ** 2 * math.exp(math.sqrt(m)),
        additivity_residual=abs(piece1 + piece2 - total),
    )
