from __future__ import annotations

import pytest
from sympy.combinatorics import Permutation, PermutationGroup

from fusionreps.errors import SizeError
from fusionreps.groups import FiniteGroup, centralizer, normalizer, sylow_subgroup
from fusionreps.presets import group_preset

NAMES = ["C2xC2", "C4", "D8", "Q8", "SD16", "S3", "S4", "A4", "SL2-3", "C5-semidirect-C4", "C3xC3", "A6"]


def sympy_group(G: FiniteGroup) -> PermutationGroup:
    return PermutationGroup([Permutation(list(g)) for g in G.generators])


@pytest.mark.parametrize("name", NAMES)
def test_order_and_classes_match_sympy(name):
    G = group_preset(name)
    P = sympy_group(G)
    assert G.order == P.order()
    assert len(G.element_classes) == len(list(P.conjugacy_classes()))


@pytest.mark.parametrize("name,n_sub,n_cls", [
    ("D8", 10, 8), ("Q8", 6, 6), ("A4", 10, 5), ("S4", 30, 11), ("C2xC2", 5, 5), ("S3", 6, 4),
])
def test_subgroup_counts(name, n_sub, n_cls):
    cls = group_preset(name).subgroups()
    assert len(cls.subgroups) == n_sub
    assert cls.n_classes == n_cls


def test_identity_is_index_zero_and_mul_convention():
    G = group_preset("S3")
    assert G.elements[0] == tuple(range(3))
    for a in range(G.order):
        for b in range(G.order):
            # (a*b)(i) = a(b(i)): apply b first
            assert G.elements[G.mul(a, b)] == tuple(G.elements[a][G.elements[b][i]] for i in range(3))


def test_sylow_normalizer_centralizer():
    G = group_preset("S4")
    P = sylow_subgroup(G, 2)
    assert P.order == 8
    assert normalizer(G, P).order == 8
    V = G.subgroup([G.index[(1, 0, 3, 2)], G.index[(2, 3, 0, 1)]], generators=True)
    assert normalizer(G, V).order == 24
    assert centralizer(G, V).order == 4


def test_subgroup_labels_sorted_by_order():
    cls = group_preset("D8").subgroups()
    orders = [cls.class_order(c) for c in range(cls.n_classes)]
    assert orders == sorted(orders)
    assert cls.labels[0] == "1.1"


def test_size_bound():
    with pytest.raises(SizeError):
        FiniteGroup([tuple(range(1, 70)) + (0,)])
