"""Rational irreducible characters of p-groups from induced augmentation characters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .characters import (CharacterTable, ClassFunction, character_table, fixed_dim, induce, local_group,
                         rational_inner_product)
from .cyclotomic import units
from .errors import ConsistencyError
from .groups import FiniteGroup, Subgroup, prime_power
from .lattice import IntegerLattice, int_det, integer_combination


def augmentation_inflated(P: Subgroup, Q: Subgroup, p: int) -> ClassFunction:
    """Inflation to P of the augmentation character of P/Q (P/Q cyclic of order p)."""
    Pg, emb = local_group(P)
    vals = [p - 1 if emb[c[0]] in Q.members else -1 for c in Pg.element_classes]
    return ClassFunction(Pg, vals)


def permutation_character(S: FiniteGroup, H: Subgroup) -> ClassFunction:
    Hg, _ = local_group(H)
    return induce(ClassFunction.trivial(Hg), H)


def galois_orbits(table: CharacterTable) -> List[Tuple[int, ...]]:
    n = table.conductor
    perms = [table.galois_permutation(k) for k in units(n)]
    seen, out = set(), []
    for i in range(len(table)):
        if i in seen:
            continue
        orb = tuple(sorted({perm[i] for perm in perms}))
        seen.update(orb)
        out.append(orb)
    return out


@dataclass
class RationalIrreducibleBasis:
    group: FiniteGroup
    prime: int
    characters: List[ClassFunction]
    provenance: List[object]          # "trivial" or (P label, Q label) pair
    orbits: List[Tuple[int, ...]]     # complex irreducible indices in each character
    multipliers: List[int]            # character = multiplier * (orbit sum)
    table: CharacterTable
    labels: List[str]

    def __len__(self):
        return len(self.characters)

    @property
    def degrees(self) -> List[int]:
        return [x.degree for x in self.characters]

    def coordinates(self, chi: ClassFunction) -> List[Fraction]:
        """Coordinates of a rational-valued class function in this basis."""
        dec = self.table.decompose(chi)
        out = []
        for orb, m in zip(self.orbits, self.multipliers):
            vals = {dec[i] for i in orb}
            if len(vals) != 1:
                raise ConsistencyError("class function is not Galois invariant")
            out.append(vals.pop() / m)
        return out

    def integer_coordinates(self, chi: ClassFunction) -> List[int]:
        c = self.coordinates(chi)
        if any(x.denominator != 1 for x in c):
            raise ConsistencyError("class function is not a rational virtual character")
        return [int(x) for x in c]

    def complex_coordinates(self, coords: Sequence) -> List[Fraction]:
        out = [Fraction(0)] * len(self.table)
        for c, orb, m in zip(coords, self.orbits, self.multipliers):
            for i in orb:
                out[i] += Fraction(c) * m
        return out

    def combine(self, coords: Sequence) -> ClassFunction:
        return self.table.combine(self.complex_coordinates(coords))

    def to_json(self) -> dict:
        return {
            "group": self.group.name, "prime": self.prime,
            "characters": [{"label": l, "degree": x.degree, "provenance": pv,
                            "values": [str(v.to_rational()) for v in x.values], "schur_multiplier": m}
                           for l, x, pv, m in zip(self.labels, self.characters, self.provenance, self.multipliers)],
        }


def _index_p_pairs(S: FiniteGroup, p: int):
    cls = S.subgroups()
    for c in range(cls.n_classes):
        P = cls.rep(c)
        if P.order == 1:
            continue
        for Q in cls.subgroups:
            if Q.order * p == P.order and Q.members <= P.members and Q.is_normal_in(P):
                yield P, Q


def ritter_segal_basis(S: FiniteGroup, p: Optional[int] = None) -> RationalIrreducibleBasis:
    cached = S.__dict__.get("_rs_basis")
    if cached is not None:
        return cached
    pp = prime_power(S.order)
    if S.order > 1 and pp is None:
        raise ConsistencyError("rational basis construction needs a p-group")
    p = p or (pp[0] if pp else 2)
    table = character_table(S, p)
    cls = S.subgroups()
    orbits = galois_orbits(table)
    orbit_of = {i: k for k, orb in enumerate(orbits) for i in orb}
    best: Dict[int, Tuple[int, ClassFunction, object]] = {}
    triv = ClassFunction.trivial(S, table.conductor)
    best[orbit_of[0]] = (1, triv, "trivial")
    seen = set()
    for P, Q in _index_p_pairs(S, p):
        chi = induce(augmentation_inflated(P, Q, p), P, table.conductor)
        key = tuple(chi.values)
        if key in seen:
            continue
        seen.add(key)
        dec = table.decompose(chi)
        support = {i for i, c in enumerate(dec) if c}
        ks = {orbit_of[i] for i in support}
        if len(ks) != 1:
            continue
        k = ks.pop()
        if support != set(orbits[k]):
            raise ConsistencyError("rational character misses part of a Galois orbit")
        m = dec[min(support)]
        if m.denominator != 1:
            raise ConsistencyError("induced character has fractional multiplicity")
        if k not in best or m < best[k][0]:
            best[k] = (int(m), chi, (cls.labels[cls.class_index(P)], cls.labels[cls.class_index(Q)]))
    if len(best) != len(orbits):
        raise ConsistencyError(f"only {len(best)} of {len(orbits)} Galois orbits reached by induced augmentations")
    n_cyclic = len(cls.cyclic_classes())
    if len(best) != n_cyclic:
        raise ConsistencyError(f"{len(best)} rational irreducibles but {n_cyclic} cyclic subgroup classes")
    order = sorted(best, key=lambda k: (best[k][1].degree, orbits[k]))
    chars = [best[k][1] for k in order]
    labels = []
    counts: Dict[int, int] = {}
    for x in chars:
        counts[x.degree] = counts.get(x.degree, 0) + 1
        labels.append(f"Q{x.degree}.{counts[x.degree]}")
    basis = RationalIrreducibleBasis(S, p, chars, [best[k][2] for k in order], [orbits[k] for k in order],
                                     [best[k][0] for k in order], table, labels)
    S.__dict__["_rs_basis"] = basis
    return basis


@dataclass
class DetectionMatrix:
    rows: List[List[int]]
    row_labels: List[str]
    determinant: int

    @property
    def nonsingular(self) -> bool:
        return self.determinant != 0


def cyclic_detection_matrix(S: FiniteGroup, basis: RationalIrreducibleBasis) -> DetectionMatrix:
    cls = S.subgroups()
    cyc = cls.cyclic_classes()
    rows = []
    for c in cyc:
        H = cls.rep(c)
        row = []
        for chi in basis.characters:
            v = fixed_dim(chi, H, actual=True)
            row.append(int(v))
        rows.append(row)
    if len(rows) != len(basis):
        raise ConsistencyError("detection matrix is not square")
    det = int_det(rows)
    if det == 0:
        raise ConsistencyError("cyclic detection matrix is singular")
    return DetectionMatrix(rows, [cls.labels[c] for c in cyc], det)


def linearize(S: FiniteGroup, X: Sequence[Tuple[Subgroup, int]]) -> ClassFunction:
    """Character of the permutation module of the formal S-set sum m_i S/H_i."""
    n = character_table(S).conductor
    acc = ClassFunction(S, [0] * len(S.element_classes), n)
    for H, m in X:
        if m:
            acc = acc + permutation_character(S, H).scale(m)
    return acc


@dataclass
class LinearizationWitness:
    """basis character i = sum_j combos[i][j] * (permutation character of S/H_j)."""

    subgroup_labels: List[str]
    combos: List[List[int]]
    spans_equal: bool


def linearization_witness(S: FiniteGroup, basis: RationalIrreducibleBasis) -> LinearizationWitness:
    cls = S.subgroups()
    perm_coords = [basis.integer_coordinates(permutation_character(S, cls.rep(c))) for c in range(cls.n_classes)]
    r = len(basis)
    combos = []
    for i in range(r):
        e = [int(i == j) for j in range(r)]
        y = integer_combination(perm_coords, e)
        if y is None:
            raise ConsistencyError(f"rational irreducible {basis.labels[i]} is not a permutation combination")
        combos.append(y)
    equal = IntegerLattice.from_generators(perm_coords, r) == IntegerLattice.full(r)
    return LinearizationWitness(list(cls.labels), combos, equal)


@dataclass
class SchurIndexReport:
    orbits: List[List[str]]
    multipliers: List[int]

    @property
    def index(self) -> int:
        """[R-bar_Q(S) : R_Q(S)], the product of the multipliers."""
        out = 1
        for m in self.multipliers:
            out *= m
        return out

    def to_json(self):
        return {"orbits": self.orbits, "multipliers": self.multipliers, "index": self.index}


def schur_index_report(S: FiniteGroup, p: Optional[int] = None) -> SchurIndexReport:
    basis = ritter_segal_basis(S, p)
    table = basis.table
    ms = []
    for chi, orb in zip(basis.characters, basis.orbits):
        orbit_sum = table.combine([1 if i in orb else 0 for i in range(len(table))])
        m = rational_inner_product(chi, table.irreducibles[orb[0]])
        if chi != orbit_sum.scale(m):
            raise ConsistencyError("orbit sum is not proportional to a rational irreducible")
        ms.append(int(m))
    return SchurIndexReport([[table.labels[i] for i in orb] for orb in basis.orbits], ms)
