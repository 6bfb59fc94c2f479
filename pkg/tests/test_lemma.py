import json
import math

import numpy as np
import pytest

from binomcheb.integral_rep import integral_term
from binomcheb.lemma import (
    LemmaScanReport,
    NoWitnessError,
    extract_witness,
    lemma_lhs,
    lemma_rhs,
    scan_lemma,
    theta_grid,
    verify_split_bounds,
)
from binomcheb.polycore import Params


@pytest.fixture(scope="module")
def scan_half():
    return scan_lemma(0.5, [20, 30, 40, 50, 60, 80, 100], theta_points_per_m=30)


def test_lhs_positive_and_decreasing_in_m():
    vals = [lemma_lhs(Params(0.25, m), 0.9) for m in (1, 2, 5, 10, 50, 100)]
    assert all(v > 0 for v in vals)
    assert all(b < a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("alpha,m,theta", [(0.25, 3, 0.5), (0.5, 40, 2.0), (0.75, 7, 1.3)])
def test_lhs_consistent_with_integral_term(alpha, m, theta):
    params = Params(alpha, m)
    assert lemma_lhs(params, theta) * math.sin(math.pi * alpha) == pytest.approx(
        integral_term(params, theta), rel=1e-12)


def test_rhs_examples():
    assert lemma_rhs(0.5, math.pi / 2) == pytest.approx(2 ** -0.25, rel=1e-15)
    theta = 1e-4
    assert lemma_rhs(0.5, theta) * theta ** 1.5 == pytest.approx(1.0, abs=1e-3)
    assert lemma_rhs(0.5, math.pi - 1e-4) > 1e3
    with pytest.raises(ValueError):
        lemma_rhs(0.5, math.pi)


@pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
def test_rhs_lower_bound_chain(alpha):
    # rhs >= c theta^-(1+alpha) with one c > 0 on (0, pi - 0.01)
    thetas = np.geomspace(1e-6, math.pi - 0.01, 500)
    prod = np.array([lemma_rhs(alpha, t) * t ** (1 + alpha) for t in thetas])
    assert prod.min() > 0.5
    # and rhs * theta^(1+alpha) tends to 1 at 0
    assert prod[0] == pytest.approx(1.0, abs=1e-6)


def test_ratio_below_one_at_right_angle():
    params = Params(0.5, 50)
    assert lemma_lhs(params, math.pi / 2) / lemma_rhs(0.5, math.pi / 2) < 1


def test_theta_grid():
    g = theta_grid(20, 10)
    assert g[0] == pytest.approx(0.25 / 20)
    assert g[-1] == pytest.approx(math.pi - 0.01)
    assert np.all(np.diff(g) > 0)


def test_scan_report_invariants(scan_half):
    r = scan_half
    assert r.K_emp is not None and r.M_emp is not None
    mask = r.admissible_mask()
    assert np.all(np.asarray(r.ratio)[mask] < 1)
    np.testing.assert_allclose(r.ratio, np.asarray(r.lhs) / np.asarray(r.rhs))
    mt = np.array([m * t for m, t in r.grid])
    np.testing.assert_allclose(r.scaled_ratio, np.asarray(r.ratio) * mt ** 0.5)


def test_scaled_ratio_upper_bound_chain(scan_half):
    # lhs theta^2 m^(1-alpha) bounded over the admissible grid
    r = scan_half
    mask = r.admissible_mask()
    m = np.array([g[0] for g in r.grid], dtype=float)
    th = np.array([g[1] for g in r.grid])
    chain = np.asarray(r.lhs) * th ** 2 * m ** 0.5
    first_half = chain[mask & (m <= 50)].max()
    assert chain[mask].max() <= 1.25 * first_half


def test_scaling_collapse_is_diagnostic(scan_half):
    # matched m*theta across m: scaled ratio within +-50% (not a claimed bound)
    r = scan_half
    by_m = {}
    for (m, t), s in zip(r.grid, r.scaled_ratio):
        by_m.setdefault(m, []).append((m * t, s))
    ref = np.array(by_m[20])
    other = np.array(by_m[100])
    interp = np.interp(ref[:, 0], other[:, 0], other[:, 1])
    inner = (ref[:, 0] > 1) & (ref[:, 0] < 20)
    assert np.all(np.abs(interp[inner] / ref[inner, 1] - 1) < 0.5)


def test_report_json_round_trip(scan_half):
    text = json.dumps(scan_half.to_dict())
    back = LemmaScanReport.from_dict(json.loads(text))
    assert back.to_dict() == scan_half.to_dict()


def test_extract_witness_prefers_small_m():
    grid = [(1, 0.1), (1, 2.0), (10, 0.01), (10, 1.0)]
    ratio = [2.0, 0.5, 3.0, 0.5]
    assert extract_witness(grid, ratio) == (0.5, 1)
    # a violation at theta = 2 for m = 1 is cured either by K = 2 (theta > K/m strict)
    # or by M = 5; the smaller M wins
    ratio = [0.5, 2.0, 0.5, 0.5]
    assert extract_witness(grid, ratio) == (2.0, 1)
    ratio = [0.5, 2.0, 0.5, 0.5]
    assert extract_witness(grid, ratio, k_candidates=(0.5, 1.0)) == (0.5, 5)
    assert extract_witness(grid, [2.0] * 4) is None


def test_no_witness_raises(monkeypatch):
    import binomcheb.lemma as lemma

    monkeypatch.setattr(lemma, "lemma_rhs", lambda a, t: 1e-30)
    with pytest.raises(NoWitnessError) as info:
        scan_lemma(0.5, [5, 10], theta_points_per_m=5)
    assert info.value.report.K_emp is None


def test_scan_rejects_bad_input():
    with pytest.raises(ValueError):
        scan_lemma(1.2, [5])
    with pytest.raises(ValueError):
        scan_lemma(0.5, [])
    with pytest.raises(ValueError):
        scan_lemma(0.5, [0, 5])


def test_scan_parallel_matches_serial():
    a = scan_lemma(0.3, [4, 9, 16], theta_points_per_m=8)
    b = scan_lemma(0.3, [4, 9, 16], theta_points_per_m=8, workers=2)
    assert a.to_dict() == b.to_dict()


@pytest.mark.parametrize("m", [25, 100, 400])
def test_split_additivity(m):
    rec = verify_split_bounds(Params(0.5, m), 1.0)
    assert rec.additivity_residual <= 1e-9 * rec.total
    assert rec.total == pytest.approx(lemma_lhs(Params(0.5, m), 1.0) * math.pi, rel=1e-12)


def test_first_piece_normalisation_stable():
    vals = [verify_split_bounds(Params(0.5, m), 1.0).scaled_piece1 for m in (25, 100, 400)]
    assert max(vals) / min(vals) < 1.1


def test_second_piece_decays_like_corrected_rate():
    # piece2 ~ e^{-sqrt m} m^(alpha/2 - 1) / theta^2: the extra m^(alpha/2) comes from
    # (1 - e^{-u})^(-alpha) at the split point u = 1/sqrt(m)
    recs = [verify_split_bounds(Params(0.5, m), 1.0) for m in (100, 400, 1600)]
    corrected = [r.scaled_piece2 / r.m ** 0.25 for r in recs]
    assert max(corrected) / min(corrected) < 1.25
    raw = [r.scaled_piece2 for r in recs]
    assert all(b > a for a, b in zip(raw, raw[1:]))


def test_split_requires_positive_m():
    with pytest.raises(ValueError):
        verify_split_bounds(Params(0.5, 0), 1.0)
