from __future__ import annotations

import itertools
import random

from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from fusionreps.lattice import (IntegerLattice, hnf, integer_combination, left_kernel, rational_reconstruct,
                                smith_normal_form, solution_lattice)

small = st.integers(-6, 6)
matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def _diag(M):
    n = min(M.shape)
    return [abs(M[i, i]) for i in range(n)]


@settings(max_examples=200)
@given(matrices)
def test_snf_matches_sympy(rows):
    diag, U, V = smith_normal_form(rows)
    theirs = [d for d in _diag(sympy_snf(Matrix(rows), domain=ZZ)) if d]
    assert [abs(d) for d in diag] == sorted(theirs)
    D = (Matrix(U) * Matrix(rows) * Matrix(V)).tolist()
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            assert v == (diag[i] if i == j and i < len(diag) else 0)


@settings(max_examples=200)
@given(matrices)
def test_hnf_spans_same_lattice(rows):
    n = len(rows[0])
    H = hnf(rows, n)
    L = IntegerLattice.from_generators(rows, n)
    assert all(list(r) in L for r in rows)
    assert all(integer_combination(rows, r) is not None for r in H)


@settings(max_examples=200)
@given(matrices)
def test_left_kernel(rows):
    n = len(rows[0])
    for y in left_kernel(rows, n):
        assert all(sum(y[i] * rows[i][j] for i in range(len(rows))) == 0 for j in range(n))


def test_solution_lattice_brute_force():
    rng = random.Random(7)
    for _ in range(30):
        n = 3
        eq = [rng.randint(-2, 2) for _ in range(n)]
        cong = ([rng.randint(-2, 2) for _ in range(n)], rng.randint(2, 5))
        L = solution_lattice(n, [eq], [cong])
        for v in itertools.product(range(-4, 5), repeat=n):
            want = sum(a * b for a, b in zip(eq, v)) == 0 and sum(a * b for a, b in zip(cong[0], v)) % cong[1] == 0
            assert (list(v) in L) == want


def test_index_and_equality():
    A = IntegerLattice.from_generators([[1, 1], [0, 4]], 2)
    B = IntegerLattice.from_generators([[1, 1], [0, 2]], 2)
    assert A.index_in(B) == 2
    assert A == IntegerLattice.from_generators([[1, 5], [0, 4], [2, 2]], 2)


def test_rational_reconstruct():
    m = 2 ** 64
    for q in [(1, 3), (-5, 117), (2, 15)]:
        a = q[0] * pow(q[1], -1, m) % m
        r = rational_reconstruct(a, m)
        assert (r.numerator, r.denominator) == q
