from __future__ import annotations

import json
from fractions import Fraction

from etaxi import verify as vf
from etaxi.fock import R
from etaxi.operators import DEFAULT_CONVENTION, NormalOrderConvention
from etaxi.scalars import HbarSeries


def test_lagrange_recovers_quadratic():
    xs = [Fraction(x) for x in (0, 1, 2, 3)]
    assert vf.lagrange_coefficients(xs, [vf.c_of_alpha(x) for x in xs]) == [-2, 6, -3]


def test_sinh_ratio_by_division_matches_finite_sum():
    # sinh(n s h)/sinh(s h) = sum_j exp((n-1-2j) s h)
    from etaxi.scalars import exp_series

    for n in (1, 2, 3):
        for s in (Fraction(1), Fraction(3, 2)):
            direct = sum((exp_series((n - 1 - 2 * j) * s, 5) for j in range(n)), HbarSeries.const(0, 5))
            assert vf.sinh_ratio(n, s, 5) == direct
    assert vf.sinh_ratio(3, Fraction(0), 4) == HbarSeries.const(3, 4)


def test_virasoro_small():
    rep = vf.verify_virasoro(2, 5)
    assert rep.passed and rep.checked == 25


def test_virasoro_window_empty():
    assert vf.verify_virasoro(3, 1).status == "window-empty"


def test_anticommutators_r_sector():
    assert vf.verify_anticommutators(R, 2, Fraction(7, 2)).passed


def test_dq_three_rings():
    assert vf.verify_dq_algebra(1, 5).passed
    assert vf.verify_dq_algebra(1, 5, ring="rational", q=Fraction(2, 3), t=Fraction(-5)).passed
    assert vf.verify_dq_algebra(1, 5, ring="hbar", gamma=1, delta=-1, order=3).passed


def test_dq_fails_without_the_zero_mode_pair():
    rep = vf.verify_dq_algebra(1, 5, convention=DEFAULT_CONVENTION)
    assert not rep.passed
    assert any(f["instance"].startswith("[D_0") or "D_0" in f["instance"] for f in rep.failures)


def test_jacobi():
    assert vf.verify_jacobi(level=5).passed


def test_virasoro_alpha_results():
    rep = vf.verify_virasoro_alpha(max_index=2, level=5)
    assert rep.passed
    assert rep.results["fitted_c_alpha"] == ["-2", "6", "-3"]
    assert rep.results["anomaly_free_alpha"] == "1"
    assert rep.results["claimed_alpha_2"]["consistent"] is False


def test_v_algebra_signs():
    realized = vf.verify_v_algebra(1, 2, 6, structure_sign=-1)
    assert realized.passed and realized.results["measured_c"] == "1"
    assert not vf.verify_v_algebra(1, 2, 6, structure_sign=1).passed


def test_iom_and_w3_small():
    assert vf.verify_involution_and_eigenvalues(3, 5).passed
    assert vf.verify_primary_w3(2, 2, 6).passed


def test_expansion_small():
    assert vf.verify_expansion(2, 5, 3).passed


def test_jordan_equations_versus_brackets():
    omit = vf.verify_jordan(5, 1, convention=DEFAULT_CONVENTION)
    names = {f["instance"] for f in omit.failures}
    assert not any(n.startswith(("L~_0 ", "D~_0(q) ")) for n in names)
    bare = vf.verify_jordan(5, 1, convention=NormalOrderConvention(1, "bare"))
    assert any("xi_0 vac" in f["instance"] for f in bare.failures)
    assert not any(f["instance"].startswith("[") for f in bare.failures)


def test_convention_independence_reports_omit_split():
    rep = vf.verify_convention_independence(1, 5)
    assert rep.results["D_0 omit minus lambda=0"] == "not a scalar"
    assert rep.results["V0_0 lambda=1 minus lambda=0"] == "1"
    assert all("omit" in f["instance"] for f in rep.failures)


def test_report_json_roundtrip():
    rep = vf.verify_virasoro(1, 3)
    doc = json.loads(rep.to_json())
    assert doc["status"] == "pass" and doc["suite"] == "virasoro"
