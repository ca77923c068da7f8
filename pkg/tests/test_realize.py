from __future__ import annotations

import random

import pytest

from fusionreps.errors import FalsificationFlag, PreconditionError
from fusionreps.realize import (actual_search, monotone_points, p_local_surjectivity_check,
                                question_6_2_explorer, saturated_fusion_systems_on, sigma3_nonrealizability_demo,
                                solve_monotone, solve_virtual, theorem_A_check)
from fusionreps.rep_rings import dim_hom, stable_sublattice
from fusionreps.superclass import condition_lattice

from conftest import SATURATED, fusion


def test_zero_function():
    F = fusion("S4")
    r = solve_virtual([0] * len(F.fusion_classes), F)
    assert r.realized and not any(r.witness.coords)


def test_frobenius_twenty_virtual():
    r = solve_virtual([4, 0], fusion("C5-semidirect-C4"))
    assert r.witness.is_actual and sum(r.witness.coords) == 2


def test_symmetric_three_virtual():
    r = solve_virtual([2, 0], fusion("S3"))
    assert dict(zip(r.witness.labels, r.witness.coords)) == {"X1.1": 0, "X1.2+X1.3": 1}


def test_precondition_names_condition():
    with pytest.raises(PreconditionError, match="Borel-Smith"):
        solve_virtual([1, 0], fusion("C5-semidirect-C4"))
    with pytest.raises(PreconditionError, match="fusion Artin"):
        solve_virtual([2, 0], fusion("C5-semidirect-C4"))


@pytest.mark.parametrize("f,N", [([2, 0], 2), ([4, 0], 1), ([3, 3], 1)])
def test_monotone_frobenius_twenty(f, N):
    r = solve_monotone(f, fusion("C5-semidirect-C4"))
    assert r.N == N and r.witness.is_actual
    assert r.diagnostics["bound_N"] % r.N == 0


def test_monotone_weak_precondition():
    F = fusion("preset:C4")
    # (2,1,1) breaks the mod-2 congruence (iii) but has no equality condition to violate
    with pytest.raises(PreconditionError):
        solve_monotone([2, 1, 1], F)
    r = solve_monotone([2, 1, 1], F, condition_ii_only=True)
    assert r.N == 2 and r.witness.is_actual


@pytest.mark.parametrize("spec", SATURATED)
def test_theorem_A_and_p_local(spec):
    F = fusion(spec)
    v = theorem_A_check(F)
    assert v.equal
    for row in v.target.basis:
        assert solve_virtual(list(row), F).realized
    pl = p_local_surjectivity_check(F)
    assert pl.index % F.prime


def test_index_two_gap():
    F = fusion("C5-semidirect-C4")
    assert p_local_surjectivity_check(F).index == 2


@pytest.mark.parametrize("spec", ["A4", "S4", "preset:Q8", "C5-semidirect-C4"])
def test_round_trip(spec):
    F = fusion(spec)
    lat = stable_sublattice("R", F)
    D = dim_hom("R", F)
    rng = random.Random(2)
    for _ in range(20):
        coeffs = [rng.randint(-4, 4) for _ in lat.basis]
        x = [sum(c * r[j] for c, r in zip(coeffs, lat.basis)) for j in range(lat.ambient)]
        f = list(D.apply(x).values)
        assert list(D.apply(solve_virtual(f, F).witness).values) == f


def test_monotone_N_is_minimal():
    F = fusion("preset:C9")
    for f in monotone_points(F, condition_lattice("C_b", F), 8):
        r = solve_monotone(f, F)
        for d in range(1, r.N):
            if r.N % d == 0:
                # a proper divisor leaves some coordinate fractional
                assert any((c * d) % r.N for c in r.witness.coords)


def test_monotone_points_are_monotone_members():
    F = fusion("S4")
    L = condition_lattice("C_ba", F)
    pts = list(monotone_points(F, L, 6))
    assert pts and all(list(p) in L for p in pts)


def test_actual_search():
    F = fusion("C5-semidirect-C4")
    assert actual_search([4, 0], F).realized
    assert not actual_search([8, 4], F).realized or actual_search([8, 4], F).witness.is_actual


def test_sigma3_demo():
    rep = sigma3_nonrealizability_demo()
    assert rep.in_D_P and rep.unique
    assert [int(c) for c in rep.solution] == [1, -1, 1]
    assert not rep.actual_multiple_exists
    assert rep.sylow_restrictions[3].witness.is_actual and rep.sylow_restrictions[2].witness.is_actual


@pytest.mark.parametrize("name", ["C3", "C5", "D8"])
def test_question_explorer(name):
    for F in saturated_fusion_systems_on(name):
        rep = question_6_2_explorer(F, 8)
        assert rep.all_realized and rep.checked > 0


def test_falsification_flag_carries_inputs(monkeypatch):
    import fusionreps.realize as R
    F = fusion("S3")
    monkeypatch.setattr(R, "integer_combination", lambda gens, target: None)
    with pytest.raises(FalsificationFlag) as exc:
        R.solve_virtual([2, 0], F)
    assert exc.value.payload["function"] == [2, 0]
