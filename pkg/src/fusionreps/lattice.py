"""Exact integer and rational linear algebra.

Row convention throughout: a lattice is the Z-span of the *rows* of a
matrix, and ``solve_left`` finds x with x @ A = b.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, isqrt
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x) if x else out
    return out


def hnf(rows: Sequence[Sequence[int]], ncols: Optional[int] = None, transform: bool = False):
    """Row Hermite normal form.

    Returns the nonzero HNF rows (positive pivots, entries above each pivot
    reduced into [0, pivot)).  With ``transform=True`` also returns a
    unimodular U (square, len(rows)) with U @ rows = full HNF, whose last
    rows span the left kernel.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transform else None
    r = 0
    for c in range(n):
        if r >= m:
            break
        for i in range(r + 1, m):
            if A[i][c] == 0:
                continue
            a, b = A[r][c], A[i][c]
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            Ar, Ai = A[r], A[i]
            A[r] = [x * u + y * v for u, v in zip(Ar, Ai)]
            A[i] = [-bg * u + ag * v for u, v in zip(Ar, Ai)]
            if U is not None:
                Ur, Ui = U[r], U[i]
                U[r] = [x * u + y * v for u, v in zip(Ur, Ui)]
                U[i] = [-bg * u + ag * v for u, v in zip(Ur, Ui)]
        piv = A[r][c]
        if piv == 0:
            continue
        if piv < 0:
            A[r] = [-v for v in A[r]]
            if U is not None:
                U[r] = [-v for v in U[r]]
            piv = -piv
        for i in range(r):
            q = A[i][c] // piv
            if q:
                A[i] = [u - q * v for u, v in zip(A[i], A[r])]
                if U is not None:
                    U[i] = [u - q * v for u, v in zip(U[i], U[r])]
        r += 1
    if transform:
        return A[:r], U, r
    return A[:r]


def left_kernel(rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> Matrix:
    """Integer basis (in HNF) of {y : y @ rows = 0}."""
    if not rows:
        return []
    _, U, r = hnf(rows, ncols, transform=True)
    return hnf(U[r:], len(rows))


def right_kernel(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Integer basis of {x : rows @ x = 0}."""
    if not rows:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    return left_kernel(transpose(rows, ncols), len(rows))


def transpose(rows: Sequence[Sequence], ncols: Optional[int] = None) -> List[list]:
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return [[r[j] for r in rows] for j in range(n)]


def smith_normal_form(M: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """(diag, U, V) with U @ M @ V diagonal; diag holds the nonzero invariants.

    Each entry of diag divides the next.
    """
    A = [list(map(int, r)) for r in M]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [u + q * v for u, v in zip(A[dst], A[src])]
        U[dst] = [u + q * v for u, v in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            piv = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
            rest = [(i, t) for i in range(t + 1, m) if A[i][t]] + [(t, j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                i, j = min(rest, key=lambda ij: abs(A[ij[0]][ij[1]]))
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv), None)
            if bad is not None:
                add_row(t, bad[0], 1)
                continue
            break
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    return [A[i][i] for i in range(t)], U, V


def int_det(M: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    A = [list(r) for r in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


# -- rational helpers ------------------------------------------------------


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[List[List[Fraction]], List[int]]:
    A = [[Fraction(x) for x in r] for r in rows]
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [u - f * v for u, v in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(rows: Sequence[Sequence], ncols: Optional[int] = None) -> int:
    return len(rref(rows, ncols)[1])


def solve_left(rows: Sequence[Sequence], target: Sequence) -> Optional[List[Fraction]]:
    """Some rational x with x @ rows = target, or None.

    Among solutions, free coordinates are set to zero.
    """
    m = len(rows)
    n = len(target)
    # columns of the augmented system are the rows of `rows`
    aug = [[Fraction(rows[i][j]) for i in range(m)] + [Fraction(target[j])] for j in range(n)]
    R, piv = rref(aug, m + 1)
    if m in piv:
        return None
    x = [Fraction(0)] * m
    for row, c in zip(R, piv):
        x[c] = row[m]
    return x


def rational_left_kernel(rows: Sequence[Sequence], ncols: Optional[int] = None) -> List[List[Fraction]]:
    """Rational basis of {y : y @ rows = 0}."""
    m = len(rows)
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    T = [[Fraction(rows[i][j]) for i in range(m)] for j in range(n)]
    R, piv = rref(T, m)
    free = [c for c in range(m) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * m
        v[f] = Fraction(1)
        for row, c in zip(R, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis


def clear_denominators(v: Sequence[Fraction]) -> List[int]:
    d = lcm(*[Fraction(x).denominator for x in v])
    return [int(Fraction(x) * d) for x in v]


def rational_reconstruct(a: int, m: int) -> Optional[Fraction]:
    """r/s ≡ a (mod m) with |r|, s <= sqrt(m/2), or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


# -- lattices --------------------------------------------------------------


@dataclass(frozen=True)
class IntegerLattice:
    """A sublattice of Z^ambient stored by its row HNF basis.

    HNF is canonical, so lattice equality is tuple equality of ``basis``.
    """

    ambient: int
    basis: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, gens: Sequence[Sequence[int]], ambient: int) -> "IntegerLattice":
        gens = [list(map(int, g)) for g in gens if any(g)]
        for g in gens:
            if len(g) != ambient:
                raise ValueError("generator length does not match ambient rank")
        return cls(ambient, tuple(tuple(r) for r in hnf(gens, ambient)))

    @classmethod
    def full(cls, n: int) -> "IntegerLattice":
        return cls(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "IntegerLattice":
        return cls(n, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(r) if v) for r in self.basis)

    def coordinates(self, v: Sequence[int]) -> Optional[List[int]]:
        """Integer coefficients of v in the HNF basis, or None if v is not a member."""
        v = list(map(int, v))
        coeffs = []
        for row, c in zip(self.basis, self.pivots):
            if v[c] % row[c]:
                return None
            q = v[c] // row[c]
            coeffs.append(q)
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return coeffs if not any(v) else None

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_lattice(self, other: "IntegerLattice") -> bool:
        return all(r in self for r in other.basis)

    def index_in(self, other: "IntegerLattice") -> Optional[int]:
        """[other : self] when self ⊆ other with equal rank; None if infinite or not contained."""
        if not other.contains_lattice(self) or self.rank != other.rank:
            return None
        C = [other.coordinates(r) for r in self.basis]
        return abs(int_det(C))

    def image(self, M: Sequence[Sequence[int]]) -> "IntegerLattice":
        """{v @ M : v in self}; M has ``ambient`` rows."""
        k = len(M[0]) if M else 0
        gens = [[sum(r[i] * M[i][j] for i in range(self.ambient)) for j in range(k)] for r in self.basis]
        return IntegerLattice.from_generators(gens, k)

    def preimage(self, M: Sequence[Sequence[int]]) -> "IntegerLattice":
        """{v in Z^n : v @ M in self}; M is n x ambient."""
        n = len(M)
        block = [list(r) for r in M] + [[-x for x in r] for r in self.basis]
        ker = left_kernel(block, self.ambient)
        return IntegerLattice.from_generators([r[:n] for r in ker], n)

    def __add__(self, other: "IntegerLattice") -> "IntegerLattice":
        return IntegerLattice.from_generators(list(self.basis) + list(other.basis), self.ambient)

    def intersection(self, other: "IntegerLattice") -> "IntegerLattice":
        block = [list(r) for r in self.basis] + [[-x for x in r] for r in other.basis]
        ker = left_kernel(block, self.ambient) if block else []
        gens = [[sum(y[i] * self.basis[i][j] for i in range(self.rank)) for j in range(self.ambient)] for y in ker]
        return IntegerLattice.from_generators(gens, self.ambient)

    def to_json(self, legend: Optional[Sequence[str]] = None) -> dict:
        out = {"ambient": self.ambient, "rank": self.rank, "hnf": [list(r) for r in self.basis]}
        if legend is not None:
            out["columns"] = list(legend)
        return out


def solution_lattice(n: int, equalities: Sequence[Sequence[int]] = (),
                     congruences: Sequence[Tuple[Sequence[int], int]] = ()) -> IntegerLattice:
    """{f in Z^n : E f = 0 and a·f ≡ 0 (mod m) for each (a, m)}.

    Solved as the projection of the integer kernel of [[E, 0], [A, diag(m)]].
    """
    cong = [(list(a), int(m)) for a, m in congruences if int(m) > 1 and any(x % int(m) for x in a)]
    k = len(cong)
    rows = [list(e) + [0] * k for e in equalities if any(e)]
    for i, (a, m) in enumerate(cong):
        rows.append(list(a) + [m if j == i else 0 for j in range(k)])
    if not rows:
        return IntegerLattice.full(n)
    ker = right_kernel(rows, n + k)
    return IntegerLattice.from_generators([v[:n] for v in ker], n)


def integer_combination(gens: Sequence[Sequence[int]], target: Sequence[int]) -> Optional[List[int]]:
    """Integer y with y @ gens = target, or None when target is outside the span."""
    if not gens:
        return [] if not any(target) else None
    n = len(target)
    A, U, r = hnf(gens, n, transform=True)
    lat = IntegerLattice(n, tuple(tuple(row) for row in A))
    c = lat.coordinates(target)
    if c is None:
        return None
    return [sum(ci * U[i][j] for i, ci in enumerate(c)) for j in range(len(gens))]
