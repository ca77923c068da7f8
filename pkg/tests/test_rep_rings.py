from __future__ import annotations

import random
from fractions import Fraction

import pytest

from fusionreps.bisets import BisetElement, act_on_character, act_on_superclass, full_basis
from fusionreps.characters import ClassFunction, is_F_stable
from fusionreps.errors import ConsistencyError
from fusionreps.fusion import trivial_fusion
from fusionreps.presets import group_preset
from fusionreps.rep_rings import (RepVector, dim_hom, dim_image, grothendieck_split, irreducible_basis, product,
                                  stable_sublattice, trivial_vector)
from fusionreps.lattice import IntegerLattice

from conftest import SATURATED, fusion


def test_trivial_fusion_gives_full_lattice():
    F = trivial_fusion(group_preset("D8"))
    for field in "QRC":
        assert stable_sublattice(field, F) == IntegerLattice.full(len(irreducible_basis(field, F.S)))


def test_frobenius_twenty_real_lattice():
    F = fusion("C5-semidirect-C4")
    basis = irreducible_basis("R", F.S)
    lat = stable_sublattice("R", F)
    assert lat.rank == 2
    vecs = [dict((l, c) for l, c in zip(basis.labels, r) if c) for r in lat.basis]
    assert {"X1.1": 1} in vecs
    aug = next(v for v in vecs if "X1.1" not in v)
    assert sum(basis.degrees[basis.labels.index(l)] * c for l, c in aug.items()) == 4
    D = dim_hom("R", F)
    assert list(D.apply(list(lat.basis[1])).values) == [4, 0]


def test_alternating_four_complex_rank():
    F = fusion("A4")
    assert stable_sublattice("C", F).rank == len(F.element_classes) == 2


@pytest.mark.parametrize("name", ["C4", "D8", "Q8", "C3xC3"])
@pytest.mark.parametrize("field", ["Q", "R", "C"])
def test_dim_of_trivial_and_regular(name, field):
    S = group_preset(name)
    D = dim_hom(field, S)
    assert all(v == 1 for v in D.apply(trivial_vector(field, S)).values)
    basis = irreducible_basis(field, S)
    reg = basis.integer_coordinates(ClassFunction.regular(S, basis.characters[0].n))
    cls = S.subgroups()
    assert list(D.apply(reg).values) == [S.order // cls.class_order(c) for c in range(cls.n_classes)]
    assert D.rows[0] == basis.degrees
    assert all(v >= 0 for r in D.rows for v in r)


def test_cyclic_three_square():
    S = group_preset("C3")
    basis = irreducible_basis("R", S)
    x = RepVector.of(basis, [0, 1])            # chi + chi-bar
    sq = product(x, x, S)
    assert dict(zip(basis.labels, sq.coords)) == {"X1.1": 2, "X1.2+X1.3": 1}
    one = trivial_vector("R", S)
    assert product(one, x, S) == x


@pytest.mark.parametrize("spec", SATURATED)
def test_stable_lattice_closed_under_products(spec):
    F = fusion(spec)
    for field in "QRC":
        basis = irreducible_basis(field, F.S)
        lat = stable_sublattice(field, F)
        rows = [RepVector.of(basis, r) for r in lat.basis]
        for a in rows:
            for b in rows:
                assert list(product(a, b, F.S).coords) in lat


@pytest.mark.parametrize("spec", ["A4", "S4", "C5-semidirect-C4", "SL2-3", "preset:D8"])
def test_grothendieck_split(spec):
    F = fusion(spec)
    basis = irreducible_basis("R", F.S)
    lat = stable_sublattice("R", F)
    rng = random.Random(11)
    for _ in range(10):
        coeffs = [rng.randint(-3, 3) for _ in lat.basis]
        v = RepVector.of(basis, [sum(c * r[j] for c, r in zip(coeffs, lat.basis)) for j in range(len(basis))])
        A, B = grothendieck_split(v, F)
        assert A.is_actual and B.is_actual
        assert A - B == v
        assert list(A.coords) in lat and list(B.coords) in lat


def test_naturality_of_dim():
    F = fusion("S4")
    S = F.S
    basis = irreducible_basis("R", S)
    D = dim_hom("R", S)
    whole = frozenset(range(S.order))
    rng = random.Random(5)
    keys = full_basis(S, whole, whole)
    for _ in range(25):
        X = BisetElement.basis(S, whole, whole, rng.choice(keys))
        x = [rng.randint(-2, 2) for _ in basis.labels]
        lhs = D.apply(basis.integer_coordinates(act_on_character(X, basis.combine(x)))).values
        assert [Fraction(v) for v in lhs] == act_on_superclass(X, list(D.apply(x).values))


def test_non_integral_decomposition_raises():
    S = group_preset("C3")
    basis = irreducible_basis("R", S)
    with pytest.raises(ConsistencyError):
        basis.integer_coordinates(basis.characters[1].scale(Fraction(1, 2)))


def test_json_round_trip():
    basis = irreducible_basis("Q", group_preset("Q8"))
    v = RepVector.of(basis, [1, 0, 2, 0, 1])
    assert RepVector.from_json(v.to_json(), basis) == v
