from __future__ import annotations

import pytest

from fusionreps.presets import group_preset
from fusionreps.superclass import (check_borel_smith, check_D_P, check_fusion_artin, condition_lattice,
                                   make_function, monotone_check, PrimePowerClasses)

from conftest import SATURATED, fusion


def test_cyclic_three():
    S = group_preset("C3")
    assert condition_lattice("C_b", S).basis == ((1, 1), (0, 2))
    assert condition_lattice("C", S).rank == 2


def test_frobenius_group_of_order_twenty():
    F = fusion("C5-semidirect-C4")
    assert condition_lattice("C_b", F).basis == ((1, 1), (0, 2))
    assert condition_lattice("C_ba", F).basis == ((1, 1), (0, 4))


@pytest.mark.parametrize("spec", SATURATED)
def test_cyclic_only_artin_conditions_suffice(spec):
    F = fusion(spec)
    assert condition_lattice("C_ba", F) == condition_lattice("C_ba", F, cyclic_only=True)
    assert condition_lattice("C_b", F).contains_lattice(condition_lattice("C_ba", F))


def test_symmetric_group_D_P():
    G = group_preset("S3")
    pc = PrimePowerClasses.of(G)
    assert pc.labels == ["1.1", "2.1", "3.1"]
    assert condition_lattice("D_P", G).basis == ((1, 0, 1), (0, 1, 0), (0, 0, 2))
    assert check_D_P([2, 2, 0], G)
    v = check_D_P([1, 1, 0], G)
    assert not v and {x["condition"] for x in v.violations} == {"i", "iv"}


def test_quaternion_condition_iii_mod_4():
    S = group_preset("Q8")
    n = S.subgroups().n_classes
    f = [2] + [0] * (n - 1)
    v = check_borel_smith(f, S)
    assert not v and any(x["condition"] == "iii" and x["modulus"] == 4 for x in v.violations)


def test_dihedral_equality_condition():
    S = group_preset("C2xC2")
    # p f(V) = sum f(C2) - f(1) for the three intermediate C2's
    assert check_borel_smith([3, 1, 1, 1, 0], S)
    assert not check_borel_smith([3, 1, 1, 1, 1], S)


def test_monotone():
    F = fusion("C5-semidirect-C4")
    assert monotone_check([4, 0], F)
    assert not monotone_check([0, 4], F)


def test_checkers_agree_with_lattices_on_hnf_rows():
    F = fusion("S4")
    for row in condition_lattice("C_ba", F).basis:
        assert check_borel_smith(list(row), F) and check_fusion_artin(list(row), F)


def test_function_labels():
    F = fusion("A4")
    f = make_function(F, [3, 1, 1])
    assert f.domain == "F" and f["1.1"] == 3
