"""Representation rings over Q, R and C as integer lattices in irreducible bases."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .characters import (ClassFunction, character_table, fixed_dim, real_irreducible_characters)
from .cyclotomic import CyclotomicNumber
from .errors import ConsistencyError, PreconditionError
from .fusion import FusionSystem
from .groups import FiniteGroup
from .lattice import IntegerLattice, left_kernel, lcm
from .rational_reps import ritter_segal_basis
from .superclass import SuperClassFunction, restrict_to_F_classes

FIELDS = ("Q", "R", "C")
Context = Union[FiniteGroup, FusionSystem]


@dataclass
class IrreducibleBasis:
    """Irreducible K-characters of S, each a nonneg combination of complex irreducibles."""

    field: str
    group: FiniteGroup
    characters: List[ClassFunction]
    labels: List[str]
    components: List[Dict[int, int]]   # complex irreducible index -> multiplicity

    def __len__(self):
        return len(self.characters)

    @property
    def degrees(self) -> List[int]:
        return [x.degree for x in self.characters]

    def coordinates(self, chi: ClassFunction) -> List[Fraction]:
        table = character_table(self.group)
        dec = table.decompose(chi)
        out, used = [], set()
        for comp in self.components:
            ratios = {dec[i] / m for i, m in comp.items()}
            if len(ratios) != 1:
                raise ConsistencyError(f"class function is not a {self.field}-character combination")
            out.append(ratios.pop())
            used.update(comp)
        if any(dec[i] for i in range(len(dec)) if i not in used):
            raise ConsistencyError("class function has components outside the basis")
        return out

    def integer_coordinates(self, chi: ClassFunction) -> List[int]:
        c = self.coordinates(chi)
        if any(x.denominator != 1 for x in c):
            raise ConsistencyError(f"decomposition over {self.field} is not integral: {c}")
        return [int(x) for x in c]

    def combine(self, coords: Sequence) -> ClassFunction:
        table = character_table(self.group)
        acc = ClassFunction(self.group, [0] * len(self.group.element_classes), table.conductor)
        for c, chi in zip(coords, self.characters):
            if c:
                acc = acc + chi.scale(c)
        return acc


def irreducible_basis(field: str, S: FiniteGroup) -> IrreducibleBasis:
    if field not in FIELDS:
        raise PreconditionError(f"field must be one of {FIELDS}")
    cache = S.__dict__.setdefault("_irr_bases", {})
    if field in cache:
        return cache[field]
    table = character_table(S)
    if field == "C":
        basis = IrreducibleBasis("C", S, list(table.irreducibles), list(table.labels),
                                 [{i: 1} for i in range(len(table))])
    elif field == "R":
        reals = real_irreducible_characters(table)
        comps = []
        for r in reals:
            comps.append({i: (2 if r.indicator == -1 else 1) for i in r.components})
        basis = IrreducibleBasis("R", S, [r.character for r in reals], [r.label for r in reals], comps)
    else:
        rs = ritter_segal_basis(S)
        comps = [{i: m for i in orb} for orb, m in zip(rs.orbits, rs.multipliers)]
        basis = IrreducibleBasis("Q", S, list(rs.characters), list(rs.labels), comps)
    cache[field] = basis
    return basis


@dataclass(frozen=True)
class RepVector:
    field: str
    labels: Tuple[str, ...]
    coords: Tuple[int, ...]

    def __post_init__(self):
        if self.field not in FIELDS:
            raise PreconditionError(f"unknown field {self.field!r}")
        if len(self.labels) != len(self.coords):
            raise PreconditionError("labels and coordinates differ in length")

    @classmethod
    def of(cls, basis: IrreducibleBasis, coords: Sequence[int]) -> "RepVector":
        return cls(basis.field, tuple(basis.labels), tuple(int(c) for c in coords))

    @property
    def is_actual(self) -> bool:
        return all(c >= 0 for c in self.coords)

    def _same(self, other: "RepVector"):
        if self.field != other.field or self.labels != other.labels:
            raise PreconditionError("representation vectors over different bases")

    def __add__(self, other: "RepVector") -> "RepVector":
        self._same(other)
        return RepVector(self.field, self.labels, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "RepVector") -> "RepVector":
        self._same(other)
        return RepVector(self.field, self.labels, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def scale(self, k: int) -> "RepVector":
        return RepVector(self.field, self.labels, tuple(k * c for c in self.coords))

    def positive_part(self) -> "RepVector":
        return RepVector(self.field, self.labels, tuple(max(c, 0) for c in self.coords))

    def negative_part(self) -> "RepVector":
        return RepVector(self.field, self.labels, tuple(max(-c, 0) for c in self.coords))

    def to_json(self) -> dict:
        return {"field": self.field, "coordinates": {l: c for l, c in zip(self.labels, self.coords) if c}}

    @classmethod
    def from_json(cls, data: dict, basis: IrreducibleBasis) -> "RepVector":
        if data.get("field", basis.field) != basis.field:
            raise PreconditionError("field tag does not match the basis")
        coords = data.get("coordinates", {})
        bad = [k for k in coords if k not in basis.labels]
        if bad:
            raise PreconditionError(f"unknown irreducible labels {bad}")
        return cls.of(basis, [int(coords.get(l, 0)) for l in basis.labels])


def character_of(v: RepVector, S: FiniteGroup) -> ClassFunction:
    return irreducible_basis(v.field, S).combine(v.coords)


def product(a: RepVector, b: RepVector, S: FiniteGroup) -> RepVector:
    """Tensor product, decomposed back into the irreducible basis."""
    a._same(b)
    basis = irreducible_basis(a.field, S)
    chi = basis.combine(a.coords) * basis.combine(b.coords)
    return RepVector.of(basis, basis.integer_coordinates(chi))


def trivial_vector(field: str, S: FiniteGroup) -> RepVector:
    basis = irreducible_basis(field, S)
    return RepVector.of(basis, [1 if x.degree == 1 and all(v == 1 for v in x.values) else 0
                                for x in basis.characters])


# -- F-stability ----------------------------------------------------------------


def _flat(z: CyclotomicNumber, n: int) -> List[Fraction]:
    return list(z.embed(n).coords)


def stability_constraints(basis: IrreducibleBasis, F: FusionSystem) -> List[List[Fraction]]:
    """Row b lists chi_b(x) - chi_b(x0) over all F-classes and all coordinates."""
    n = character_table(basis.group).conductor
    rows = []
    for chi in basis.characters:
        row: List[Fraction] = []
        for cl in F.element_classes:
            base = _flat(chi(cl[0]), n)
            for x in cl[1:]:
                row.extend(a - b for a, b in zip(_flat(chi(x), n), base))
        rows.append(row)
    return rows


def stable_sublattice(field: str, F: FusionSystem) -> IntegerLattice:
    """Integer vectors whose character is constant on F-classes of elements (HNF)."""
    cache = F.__dict__.setdefault("_stable_lattices", {})
    if field in cache:
        return cache[field]
    basis = irreducible_basis(field, F.S)
    rows = stability_constraints(basis, F)
    r = len(basis)
    if not rows or not rows[0]:
        lat = IntegerLattice.full(r)
    else:
        den = lcm(*[x.denominator for row in rows for x in row])
        M = [[int(x * den) for x in row] for row in rows]
        lat = IntegerLattice.from_generators(left_kernel(M, len(M[0])), r)
    cache[field] = lat
    return lat


def is_stable_vector(v: RepVector, F: FusionSystem) -> bool:
    return list(v.coords) in stable_sublattice(v.field, F)


# -- dimension homomorphism -------------------------------------------------------


@dataclass
class DimMatrix:
    field: str
    domain: str                      # "S" or "F"
    rows: List[List[int]]            # one per S-class; F-domain rows are representatives
    row_labels: List[str]
    col_labels: List[str]
    _full: Optional[List[List[int]]] = None
    _fusion: Optional[FusionSystem] = None

    def apply(self, v: Union[RepVector, Sequence[int]]) -> SuperClassFunction:
        coords = v.coords if isinstance(v, RepVector) else tuple(v)
        full = self._full if self._full is not None else self.rows
        vals = [sum(a * c for a, c in zip(row, coords)) for row in full]
        if self.domain == "F":
            vals = restrict_to_F_classes(vals, self._fusion)
        return SuperClassFunction(self.domain, tuple(self.row_labels), tuple(vals))

    def transpose(self) -> List[List[int]]:
        """Basis x classes, the shape IntegerLattice.image expects."""
        return [list(col) for col in zip(*self.rows)]

    def to_json(self) -> dict:
        return {"field": self.field, "domain": self.domain, "rows": self.row_labels,
                "columns": self.col_labels, "matrix": self.rows}


def dim_hom(field: str, context: Context) -> DimMatrix:
    cache = context.__dict__.setdefault("_dim_matrices", {})
    if field in cache:
        return cache[field]
    F = context if isinstance(context, FusionSystem) else None
    S = F.S if F is not None else context
    basis = irreducible_basis(field, S)
    cls = S.subgroups()
    full = [[int(fixed_dim(chi, cls.rep(c), actual=True)) for chi in basis.characters]
            for c in range(cls.n_classes)]
    if F is None:
        D = DimMatrix(field, "S", full, list(cls.labels), list(basis.labels))
    else:
        reps = [fc[0] for fc in F.fusion_classes]
        D = DimMatrix(field, "F", [full[c] for c in reps], list(F.fusion_labels), list(basis.labels),
                      _full=full, _fusion=F)
    cache[field] = D
    return D


def dim_image(field: str, F: FusionSystem) -> IntegerLattice:
    """Dim(R_K(F)) inside Z^{F-classes}."""
    D = dim_hom(field, F)
    lat = stable_sublattice(field, F)
    gens = [list(D.apply(row).values) for row in lat.basis]
    return IntegerLattice.from_generators(gens, len(D.row_labels))


def omega_action_matrix(F: FusionSystem, field: str, omega_min=None) -> List[List[int]]:
    """Row i: coordinates of Omega applied to the i-th irreducible (cached)."""
    from .bisets import act_on_character, minimal_characteristic_biset

    cache = F.__dict__.setdefault("_omega_action", {})
    if omega_min is None and field in cache:
        return cache[field]
    basis = irreducible_basis(field, F.S)
    Om = omega_min if omega_min is not None else minimal_characteristic_biset(F)
    M = [basis.integer_coordinates(act_on_character(Om, chi)) for chi in basis.characters]
    if omega_min is None:
        cache[field] = M
    return M


def grothendieck_split(v: RepVector, F: FusionSystem, omega_min=None) -> Tuple[RepVector, RepVector]:
    """Write a stable virtual v as A - B with A, B actual and F-stable.

    With v = U - V (positive and negative parts), B = Omega V and
    A = U + (Omega - [S, id]) V, where Omega is the minimal characteristic biset.
    """
    basis = irreducible_basis(v.field, F.S)
    M = omega_action_matrix(F, v.field, omega_min)
    U, V = v.positive_part(), v.negative_part()
    B = RepVector.of(basis, [sum(V.coords[i] * M[i][j] for i in range(len(M))) for j in range(len(M))])
    A = U + B - V
    return A, B
