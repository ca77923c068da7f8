"""Exact arithmetic in Q(zeta_n) over the power basis modulo Phi_n."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, List, Sequence, Tuple, Union

Number = Union[int, Fraction, "CyclotomicNumber"]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    # x^n - 1 = prod_{d | n} Phi_d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _poly_divexact(a: List[int], b: List[int]) -> List[int]:
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = a[i + len(b) - 1] // b[-1]
        out[i] = q
        for j, c in enumerate(b):
            a[i + j] -= q * c
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


@lru_cache(maxsize=None)
def _power_table(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Coordinates of zeta^j for 0 <= j < n."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    rows = []
    cur = [1] + [0] * (d - 1)
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce with the monic Phi_n
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    return tuple(rows)


class CyclotomicNumber:
    __slots__ = ("n", "coords")

    def __init__(self, n: int, coords: Sequence):
        self.n = n
        self.coords = tuple(Fraction(c) for c in coords)

    # -- constructors -------------------------------------------------------

    @classmethod
    def rational(cls, n: int, q) -> "CyclotomicNumber":
        d = euler_phi(n)
        return cls(n, [Fraction(q)] + [Fraction(0)] * (d - 1))

    @classmethod
    def zeta_power(cls, n: int, j: int) -> "CyclotomicNumber":
        return cls(n, _power_table(n)[j % n])

    @classmethod
    def from_exponent_counts(cls, n: int, counts: Dict[int, Fraction] | Sequence) -> "CyclotomicNumber":
        """sum_j counts[j] * zeta^j."""
        table = _power_table(n)
        d = euler_phi(n)
        acc = [Fraction(0)] * d
        items = counts.items() if isinstance(counts, dict) else enumerate(counts)
        for j, c in items:
            if c:
                for i, t in enumerate(table[j % n]):
                    if t:
                        acc[i] += c * t
        return cls(n, acc)

    # -- conversions --------------------------------------------------------

    def embed(self, m: int) -> "CyclotomicNumber":
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed Q(zeta_{self.n}) into Q(zeta_{m})")
        k = m // self.n
        return CyclotomicNumber.from_exponent_counts(m, {k * j: c for j, c in enumerate(self.coords) if c})

    def _align(self, other) -> Tuple["CyclotomicNumber", "CyclotomicNumber"]:
        if not isinstance(other, CyclotomicNumber):
            return self, CyclotomicNumber.rational(self.n, other)
        if other.n == self.n:
            return self, other
        m = self.n * other.n // gcd(self.n, other.n)
        return self.embed(m), other.embed(m)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __complex__(self):
        import cmath
        z = cmath.exp(2j * cmath.pi / self.n)
        return complex(sum(float(c) * z ** i for i, c in enumerate(self.coords)))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._align(other)
        return CyclotomicNumber(a.n, [x + y for x, y in zip(a.coords, b.coords)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.n, [-x for x in self.coords])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, CyclotomicNumber):
            q = Fraction(other)
            return CyclotomicNumber(self.n, [x * q for x in self.coords])
        a, b = self._align(other)
        prod: Dict[int, Fraction] = {}
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    if y:
                        prod[i + j] = prod.get(i + j, 0) + x * y
        return CyclotomicNumber.from_exponent_counts(a.n, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CyclotomicNumber):
            if not other.is_rational():
                raise NotImplementedError("division by an irrational cyclotomic")
            other = other.coords[0]
        q = Fraction(other)
        return CyclotomicNumber(self.n, [x / q for x in self.coords])

    def galois(self, k: int) -> "CyclotomicNumber":
        """Image under zeta -> zeta^k (k coprime to n)."""
        if gcd(k, self.n) != 1:
            raise ValueError("Galois exponent must be a unit")
        return CyclotomicNumber.from_exponent_counts(self.n, {i * k % self.n: c for i, c in enumerate(self.coords) if c})

    def conjugate(self) -> "CyclotomicNumber":
        return self.galois(-1 % self.n if self.n > 1 else 1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        a, b = self._align(other)
        return a.coords == b.coords

    def __hash__(self):
        # hash through the smallest conductor at which the number lives would be
        # costly; rational values hash like their Fraction, others by n and coords
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.n, self.coords))

    def __repr__(self):
        if self.is_rational():
            return str(self.coords[0])
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z{self.n}^{i}")
        return " + ".join(terms) or "0"

    def to_json(self):
        return {"conductor": self.n, "coords": [str(c) for c in self.coords]}


def units(n: int) -> List[int]:
    return [k for k in range(1, n + 1) if gcd(k, n) == 1] if n > 1 else [1]


def galois_orbit_exponents(n: int, subgroup: Iterable[int]) -> List[int]:
    """Coset representatives of (Z/n)^x modulo the given subgroup of units."""
    H = {h % n for h in subgroup}
    seen, reps = set(), []
    for k in units(n):
        if k % n in seen:
            continue
        reps.append(k)
        for h in H:
            seen.add(k * h % n)
    return reps
