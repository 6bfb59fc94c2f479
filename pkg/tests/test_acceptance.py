"""Acceptance checks, one test per criterion, each recording a pass/fail line.

Tolerances are fixed here and not tuned to the results.
"""

import math

import numpy as np
import pytest

from binomcheb.cli import run
from binomcheb.lemma import scan_lemma
from binomcheb.polycore import Params
from binomcheb.verify import (
    IDENTITY_M,
    gamma_suite,
    identity_suite,
    oracle_suite,
    signs_suite,
    split_suite,
)
from binomcheb.zeros import all_zeros, outside_count_sweep

ORACLE_TOL = 1e-10
IDENTITY_TOL = 1e-8
STABILITY = 1.25
GAMMA_TOL = 1e-12
ASYMPTOTIC_TOL = 1e-4
NONREAL_IM = 0.01

SWEEP_ALPHAS = (0.25, 0.5, 0.75)
SWEEP_M = list(range(10, 201, 10))


@pytest.fixture(scope="module")
def sweeps():
    """Full zero reports for every (alpha, m) of the boundedness sweep."""
    return {a: {m: all_zeros(Params(a, m)) for m in SWEEP_M} for a in SWEEP_ALPHAS}


@pytest.fixture(scope="module")
def figure_runs(tmp_path_factory):
    out = tmp_path_factory.mktemp("figure")
    svg = out / "zeros_m50_alpha3.svg"
    code = run(["figure", "--alpha", "3", "--m", "50", "--format", "svg", "-o", str(svg)])
    return {
        "svg": svg,
        "code": code,
        "large": all_zeros(Params(3.0, 50), check_interval=False),
        "unit": all_zeros(Params(0.5, 50)),
    }


def witness(reports, upto):
    return max(r.outside_count for m, r in reports.items() if m <= upto)


def test_1_oracle_equivalence(record):
    results = [oracle_suite(a, m_max=100, n_points=200, seed=0, tol=ORACLE_TOL)
               for a in (0.1, 0.3, 0.5, 0.7, 0.9)]
    worst = max(r["max_error"] for r in results)
    ok = all(r["passed"] for r in results)
    record(1, "oracle equivalence", ok,
           f"max |rec - cheb|/(1+|v|) = {worst:.2e} (tol {ORACLE_TOL:g})")
    assert ok


def test_2_representation_identity(record):
    results = [identity_suite(a, m_max=max(IDENTITY_M), n_theta=50, tol=IDENTITY_TOL)
               for a in (0.25, 0.5, 0.75)]
    worst = max(r["max_error"] for r in results)
    ok = all(r["passed"] for r in results) and all(r["checks"] == 350 for r in results)
    record(2, "representation identity", ok,
           f"max abs_error/(1+|P_m|) = {worst:.2e} over 3 x 350 points (tol {IDENTITY_TOL:g})")
    assert ok


def test_3_lemma_witness(record):
    parts = []
    ok = True
    for a in (0.25, 0.5, 0.75):
        scan = scan_lemma(a, list(range(1, 201)), theta_points_per_m=40)
        mask = scan.admissible_mask()
        below = bool(np.all(np.asarray(scan.ratio)[mask] < 1))
        growth = scan.max_scaled_ratio(200) / scan.max_scaled_ratio(100)
        ok &= below and scan.K_emp is not None and growth <= STABILITY
        parts.append(f"alpha={a}: K={scan.K_emp:g} M={scan.M_emp} growth={growth:.4f}")
    record(3, "lemma witness", ok, "; ".join(parts) + f" (tol {STABILITY})")
    assert ok


def test_4_split_bound_stability(record):
    res = split_suite(alpha=0.5, thetas=(0.5, 1.0, 2.0), m_values=(25, 100, 400),
                      max_growth=STABILITY)
    g1 = max(g for row in res["details"]["by_theta"].values() for g in row["growth_piece1"])
    g2 = max(g for row in res["details"]["by_theta"].values() for g in row["growth_piece2"])
    record(4, "split-bound stability", res["passed"],
           f"max growth piece1 = {g1:.4f}, piece2 = {g2:.4f} (tol {STABILITY})")
    assert res["passed"], (
        f"piece2 growth {g2:.4f} > {STABILITY}; the piece2 normalisation lacks a m^(alpha/2) "
        "factor from (1 - e^-u)^-alpha at the split point")


def test_5_sign_alternation(record):
    res = signs_suite(alpha=0.5, m_values=(50, 100, 200))
    record(5, "sign alternation", res["passed"],
           f"{res['checks']} critical angles, {int(res['max_error'])} mismatches, "
           f"K={res['details']['K']:g}")
    assert res["passed"]


def test_6_boundedness_witness(record, sweeps):
    parts = []
    ok = True
    for a in SWEEP_ALPHAS:
        counts, errors = outside_count_sweep(a, SWEEP_M)
        reports = sweeps[a]
        assert [c for _, c in counts] == [reports[m].outside_count for m in SWEEP_M]
        low = witness(reports, 100)
        high = max(r.outside_count for m, r in reports.items() if m > 100)
        ok &= high <= low and not errors
        parts.append(f"alpha={a}: max(m<=100)={low} max(m>100)={high}")
    record(6, "boundedness witness", ok, "; ".join(parts))
    assert ok


def test_7_figure_contrast(record, sweeps, figure_runs):
    large = figure_runs["large"]
    nonreal = [z for z in large.outside_zeros if abs(z.imag) > NONREAL_IM]
    upper = sum(z.imag > 0 for z in nonreal)
    paired = upper == len(nonreal) - upper
    svg = figure_runs["svg"]
    svg_ok = figure_runs["code"] == 0 and svg.exists() and "<svg" in svg.read_text()
    unit = figure_runs["unit"].outside_count
    bound = witness(sweeps[0.5], 100)
    ok = len(nonreal) >= 2 and paired and svg_ok and unit <= bound
    record(7, "large-alpha contrast", ok,
           f"alpha=3: {len(nonreal)} zeros with |Im|>{NONREAL_IM}, svg={'ok' if svg_ok else 'missing'}; "
           f"alpha=0.5: outside {unit} <= witness {bound}")
    assert ok


def test_8_degree_accounting(record, sweeps, figure_runs):
    runs = [r for by_m in sweeps.values() for r in by_m.values()]
    runs += [figure_runs["large"], figure_runs["unit"]]
    bad = [(r.params.alpha, r.params.m) for r in runs
           if r.inside_count + r.outside_count != r.params.m]
    record(8, "degree accounting", not bad, f"{len(runs)} runs, {len(bad)} mismatches")
    assert not bad


def test_9_gamma_checks(record):
    res = gamma_suite(tol=GAMMA_TOL, asymptotic_tol=ASYMPTOTIC_TOL)
    ok = res["passed"]
    record(9, "incomplete gamma", ok,
           f"max rel err Gamma(1,x) vs e^-x = {res['max_error']:.2e} (tol {GAMMA_TOL:g}); "
           f"asymptotic rel err = {res['details']['asymptotic_rel_error']:.2e} "
           f"(tol {ASYMPTOTIC_TOL:g})")
    assert ok
    assert math.isfinite(res["details"]["asymptotic_rel_error"])
