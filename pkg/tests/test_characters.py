from __future__ import annotations

import pytest

from fusionreps.characters import (character_table, frobenius_schur, galois_transfer, inner_product,
                                   is_F_stable, is_F_stable_by_restriction, real_irreducible_characters)
from fusionreps.presets import group_preset

from conftest import fusion

NAMES = ["C2xC2", "C4", "C9", "D8", "Q8", "SD16", "S3", "S4", "A4", "SL2-3", "C5-semidirect-C4", "C3xC3", "A6"]


@pytest.mark.parametrize("name", NAMES)
def test_table_is_complete_and_orthonormal(name):
    G = group_preset(name)
    t = character_table(G)
    t.verify()
    assert len(t) == len(G.element_classes)
    assert sum(d * d for d in t.degrees) == G.order
    for i, a in enumerate(t.irreducibles):
        for j, b in enumerate(t.irreducibles):
            assert inner_product(a, b) == (1 if i == j else 0)


def test_quaternion_indicators():
    t = character_table(group_preset("Q8"))
    assert sorted(frobenius_schur(chi) for chi in t.irreducibles) == [-1, 1, 1, 1, 1]
    reals = real_irreducible_characters(t)
    assert sorted(r.character.degree for r in reals) == [1, 1, 1, 1, 4]


def test_cyclic_real_pairs():
    reals = real_irreducible_characters(character_table(group_preset("C4")))
    assert sorted(r.character.degree for r in reals) == [1, 1, 2]


@pytest.mark.parametrize("spec", ["A4", "S4", "SL2-3", "C5-semidirect-C4"])
def test_stability_definitions_agree_on_irreducibles(spec):
    F = fusion(spec)
    for chi in character_table(F.S).irreducibles:
        assert is_F_stable(chi, F) == is_F_stable_by_restriction(chi, F)
        for target in ("Q", "R"):
            sums = galois_transfer(chi, target)
            if is_F_stable(chi, F):
                assert is_F_stable(sums, F)
