from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from fusionreps.bisets import (BisetElement, act_on_character, act_on_superclass, characteristic_idempotent,
                               check_idempotent, coefficientwise_leq, compose_basis, compose_via_sets,
                               full_basis, fusion_basis, group_as_biset, is_characteristic,
                               minimal_characteristic_biset)
from fusionreps.fusion import trivial_fusion
from fusionreps.presets import group_preset
from fusionreps.rep_rings import dim_hom, irreducible_basis, stable_sublattice

from conftest import SATURATED, STRETCH, fusion


@pytest.mark.parametrize("name", ["C2xC2", "C4", "S3"])
def test_composition_matches_set_oracle(name):
    S = group_preset(name)
    subs = [H.members for H in S.subgroups().subgroups]
    for U, V, W in itertools.product(subs, repeat=3):
        for x in full_basis(S, U, V):
            for y in full_basis(S, V, W):
                assert compose_basis(S, U, V, W, x, y) == compose_via_sets(S, U, V, W, x, y)


def test_associativity_on_d8():
    S = group_preset("D8")
    whole = frozenset(range(S.order))
    keys = full_basis(S, whole, whole)
    rng = random.Random(3)
    for _ in range(20):
        a, b, c = (BisetElement.basis(S, whole, whole, rng.choice(keys)) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_identity_is_neutral():
    S = group_preset("Q8")
    whole = frozenset(range(S.order))
    e = BisetElement.identity(S)
    for k in full_basis(S, whole, whole)[:12]:
        x = BisetElement.basis(S, whole, whole, k)
        assert e * x == x == x * e


def test_basis_counts():
    S = group_preset("C2xC2")
    whole = frozenset(range(4))
    assert len(full_basis(S, whole, whole)) == 16
    assert len(full_basis(group_preset("D8"), range(8), range(8))) == 21


@pytest.mark.parametrize("spec", SATURATED)
def test_characteristic_idempotent(spec):
    F = fusion(spec)
    omega = characteristic_idempotent(F)
    checks = check_idempotent(omega, F)
    assert all(v for k, v in checks.items() if k not in ("size_over_S", "top_sum"))
    assert checks["top_sum"] == "1"
    keys = set(fusion_basis(F))
    assert set(omega.coeffs) <= keys


def test_symmetric_group_omega():
    F = fusion("S3")
    omega = characteristic_idempotent(F)
    assert sorted(omega.coeffs.values()) == [Fraction(1, 2), Fraction(1, 2)]


def test_trivial_fusion_omega_is_identity():
    for name in ["C4", "D8", "Q8", "C3xC3"]:
        S = group_preset(name)
        assert characteristic_idempotent(trivial_fusion(S)) == BisetElement.identity(S, trivial_fusion(S).prime)


@pytest.mark.parametrize("spec", SATURATED)
def test_minimal_characteristic_biset(spec):
    F = fusion(spec)
    Om = minimal_characteristic_biset(F)
    assert Om.is_actual()
    assert is_characteristic(Om, F).characteristic
    assert coefficientwise_leq(Om, group_as_biset(F))
    identity_key = next(iter(BisetElement.identity(F.S).coeffs))
    assert Om.coeffs.get(identity_key, 0) >= 1


@pytest.mark.parametrize("spec", SATURATED)
def test_transfer_fixes_stable_elements(spec):
    F = fusion(spec)
    omega = characteristic_idempotent(F)
    basis = irreducible_basis("R", F.S)
    D = dim_hom("R", F.S)
    for row in stable_sublattice("R", F).basis:
        chi = basis.combine(row)
        assert act_on_character(omega, chi) == chi
        f = [sum(a * c for a, c in zip(r, row)) for r in D.rows]
        assert act_on_superclass(omega, f) == [Fraction(v) for v in f]


@pytest.mark.slow
def test_stretch_omega():
    F = fusion(STRETCH)
    omega = characteristic_idempotent(F)
    checks = check_idempotent(omega, F)
    assert checks["idempotent"] and checks["characteristic"] and checks["p_local"] and checks["coefficient_sums"]
