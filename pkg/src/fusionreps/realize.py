"""Realizing super class functions as dimension functions of F-stable representations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .characters import character_table, fixed_dim
from .cyclotomic import euler_phi
from .errors import FalsificationFlag, PreconditionError
from .fusion import FusionSystem, fusion_from_spec
from .groups import FiniteGroup
from .lattice import IntegerLattice, integer_combination, lcm, solve_left
from .presets import group_preset
from .rep_rings import (RepVector, dim_hom, dim_image, irreducible_basis, is_stable_vector,
                        stable_sublattice)
from .superclass import (PrimePowerClasses, SuperClassFunction, check_borel_smith, check_D_P,
                         check_fusion_artin, condition_lattice, monotone_check,
                         on_S_classes)


@dataclass
class RealizationResult:
    status: str                         # "realized" | "not-realizable" | "falsification-flag"
    function: Tuple[int, ...]
    witness: Optional[RepVector] = None
    N: int = 1
    diagnostics: Dict[str, object] = field(default_factory=dict)

    @property
    def realized(self) -> bool:
        return self.status == "realized"

    def to_json(self) -> dict:
        out = {"status": self.status, "function": list(self.function), "N": self.N,
               "diagnostics": self.diagnostics}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["witness_actual"] = self.witness.is_actual
        return out


def _F_values(f, F: FusionSystem) -> List[int]:
    if isinstance(f, SuperClassFunction):
        if f.domain == "F":
            return list(f.values)
        vals = on_S_classes(f, F)
        return [vals[fc[0]] for fc in F.fusion_classes]
    vals = [int(v) for v in f]
    if len(vals) != len(F.fusion_classes):
        raise PreconditionError(f"expected {len(F.fusion_classes)} values on F-classes, got {len(vals)}")
    return vals


def _payload(F: FusionSystem, vals, **extra) -> dict:
    return {"fusion": F.name, "prime": F.prime, "function": list(vals), **extra}


# -- virtual realization over C_ba -------------------------------------------------


@dataclass
class LatticeVerdict:
    image: IntegerLattice
    target: IntegerLattice
    equal: bool
    contained: bool
    index: Optional[int]
    labels: List[str]

    def to_json(self) -> dict:
        return {"equal": self.equal, "contained": self.contained, "index": self.index,
                "image": self.image.to_json(self.labels), "target": self.target.to_json(self.labels)}


def theorem_A_check(F: FusionSystem) -> LatticeVerdict:
    """Compare Dim(R_R(F)) with C_ba(F); containment must always hold."""
    img = dim_image("R", F)
    cba = condition_lattice("C_ba", F)
    contained = cba.contains_lattice(img)
    if not contained:
        raise FalsificationFlag("dimension image is not contained in C_ba(F)",
                                _payload(F, [], image=img.to_json(), target=cba.to_json()))
    return LatticeVerdict(img, cba, img == cba, contained, img.index_in(cba), list(F.fusion_labels))


def p_local_surjectivity_check(F: FusionSystem) -> LatticeVerdict:
    """[C_b(F) : Dim(R_R(F))] must be finite and prime to p."""
    img = dim_image("R", F)
    cb = condition_lattice("C_b", F)
    idx = img.index_in(cb)
    if idx is None or idx % F.prime == 0:
        raise FalsificationFlag("dimension image has infinite or p-divisible index in C_b(F)",
                                _payload(F, [], index=idx, image=img.to_json(), target=cb.to_json()))
    return LatticeVerdict(img, cb, img == cb, True, idx, list(F.fusion_labels))


def solve_virtual(f, F: FusionSystem) -> RealizationResult:
    """Integer x in the stable real lattice with Dim x = f."""
    vals = _F_values(f, F)
    for name, verdict in (("Borel-Smith", check_borel_smith(vals, F)), ("fusion Artin", check_fusion_artin(vals, F))):
        if not verdict:
            raise PreconditionError(f"function violates the {name} conditions: {verdict.violations[0]['condition']}")
    D = dim_hom("R", F)
    lat = stable_sublattice("R", F)
    gens = [list(D.apply(row).values) for row in lat.basis]
    y = integer_combination(gens, vals)
    if y is None:
        raise FalsificationFlag("function in C_ba(F) has no stable virtual preimage", _payload(F, vals))
    x = [sum(c * row[j] for c, row in zip(y, lat.basis)) for j in range(lat.ambient)]
    w = RepVector.of(irreducible_basis("R", F.S), x)
    if list(D.apply(w).values) != vals or not is_stable_vector(w, F):
        raise FalsificationFlag("virtual witness fails its re-check", _payload(F, vals, witness=x))
    return RealizationResult("realized", tuple(vals), w, 1, {"recheck": True})


# -- N-scaled actual rational realization ---------------------------------------------


@dataclass
class _RationalSolver:
    F: FusionSystem
    rows: List[int]                     # S-class indices of cyclic subgroups
    inverse: List[List[Fraction]]       # inverse of the square cyclic Dim block
    full: List[List[int]]

    @classmethod
    def get(cls, F: FusionSystem) -> "_RationalSolver":
        hit = F.__dict__.get("_rational_solver")
        if hit is not None:
            return hit
        D = dim_hom("Q", F.S)
        cls_ = F.S.subgroups()
        rows = cls_.cyclic_classes()
        block = [D.rows[c] for c in rows]
        r = len(block)
        # column i of block^-1 solves y @ block^T = e_i
        cols = [solve_left([list(c) for c in zip(*block)], [int(i == j) for j in range(r)]) for i in range(r)]
        inverse = [[cols[i][j] for i in range(r)] for j in range(r)]
        solver = cls(F, rows, inverse, D.rows)
        F.__dict__["_rational_solver"] = solver
        return solver

    def solve(self, f_S: Sequence[int]) -> Optional[List[Fraction]]:
        fc = [f_S[c] for c in self.rows]
        r = len(self.rows)
        x = [sum(self.inverse[i][k] * fc[k] for k in range(r)) for i in range(r)]
        if any(sum(a * b for a, b in zip(row, x)) != v for row, v in zip(self.full, f_S)):
            return None
        return x


def monotone_bound(S: FiniteGroup) -> int:
    """A uniform N: lcm of Schur multipliers times phi of the exponent."""
    rs = irreducible_basis("Q", S)
    m = lcm(*[max(c.values()) for c in rs.components])
    return m * euler_phi(S.exponent)


def solve_monotone(f, F: FusionSystem, condition_ii_only: bool = False) -> RealizationResult:
    vals = _F_values(f, F)
    if not monotone_check(vals, F):
        raise PreconditionError("function is not monotone")
    verdict = check_borel_smith(vals, F, only=["ii"] if condition_ii_only else None)
    if not verdict:
        raise PreconditionError(f"function violates the Borel-Smith conditions: {verdict.violations[0]['condition']}")
    f_S = on_S_classes(vals, F)
    x = _RationalSolver.get(F).solve(f_S)
    if x is None:
        raise FalsificationFlag("no rational solution of Dim x = f", _payload(F, vals))
    N = lcm(*[c.denominator for c in x])
    xi = [int(c * N) for c in x]
    w = RepVector.of(irreducible_basis("Q", F.S), xi)
    diag = {"bound_N": monotone_bound(F.S), "condition_ii_only": condition_ii_only}
    if not w.is_actual:
        raise FalsificationFlag("scaled rational solution has a negative coordinate",
                                _payload(F, vals, N=N, solution=[str(c) for c in x]))
    if not is_stable_vector(w, F):
        raise FalsificationFlag("rational solution is not F-stable", _payload(F, vals, solution=xi))
    if list(dim_hom("Q", F).apply(w).values) != [N * v for v in vals]:
        raise FalsificationFlag("rational witness fails its re-check", _payload(F, vals, solution=xi))
    diag["recheck"] = True
    return RealizationResult("realized", tuple(vals), w, N, diag)


# -- enumeration of monotone lattice points ---------------------------------------------


def _F_subconjugacy(F: FusionSystem) -> List[List[bool]]:
    sub = F.S.subgroups().subconjugacy
    fcs = F.fusion_classes
    return [[any(sub[a][b] for a in fi for b in fj) for fj in fcs] for fi in fcs]


def monotone_points(F: FusionSystem, lattice: IntegerLattice, bound: int) -> Iterator[Tuple[int, ...]]:
    """Monotone f in the lattice with f(1) <= bound.

    F-classes are ordered by subgroup order, so prefix membership in the HNF
    echelon form prunes the search.
    """
    n = lattice.ambient
    sub = _F_subconjugacy(F)
    below = [[i for i in range(j) if sub[i][j]] for j in range(n)]
    rows = [list(r) for r in lattice.basis]
    piv = list(lattice.pivots)
    f = [0] * n

    def prefix_ok(k: int) -> bool:
        # does f[:k+1] lie in the projection of the lattice onto the first k+1 coordinates?
        v = f[:k + 1]
        for row, c in zip(rows, piv):
            if c > k:
                break
            if v[c] % row[c]:
                return False
            q = v[c] // row[c]
            if q:
                v = [a - q * b for a, b in zip(v, row[:k + 1])]
        return not any(v)

    def rec(k: int):
        if k == n:
            yield tuple(f)
            return
        top = bound if not below[k] else min(f[i] for i in below[k])
        for v in range(top + 1):
            f[k] = v
            if prefix_ok(k):
                yield from rec(k + 1)
        f[k] = 0

    yield from rec(0)


# -- explorer: monotone C_ba functions versus sums of stable atoms --------------


def _nonneg_stable_vectors(F: FusionSystem, bound: int, field_: str = "R") -> List[Tuple[int, ...]]:
    basis = irreducible_basis(field_, F.S)
    lat = stable_sublattice(field_, F)
    degs = basis.degrees
    out = []
    r = len(degs)
    cur = [0] * r

    def rec(i: int, room: int):
        if i == r:
            if any(cur) and cur in lat:
                out.append(tuple(cur))
            return
        for k in range(room // degs[i] + 1):
            cur[i] = k
            rec(i + 1, room - k * degs[i])
        cur[i] = 0

    rec(0, bound)
    return out


def stable_atoms(F: FusionSystem, bound: int) -> List[Tuple[int, ...]]:
    """Nonneg stable real vectors of degree <= bound that are not a sum of two such."""
    vecs = _nonneg_stable_vectors(F, bound)
    vs = set(vecs)
    atoms = []
    for v in sorted(vecs, key=lambda x: (sum(x), x)):
        split = any(tuple(a - b for a, b in zip(v, u)) in vs for u in atoms
                    if all(a >= b for a, b in zip(v, u)) and u != v)
        if not split:
            atoms.append(v)
    return atoms


@dataclass
class ExplorerReport:
    fusion: str
    bound: int
    atoms: List[Tuple[int, ...]]
    checked: int
    realized: int
    unknown: List[Tuple[int, ...]]
    witnesses: Dict[Tuple[int, ...], Tuple[int, ...]]

    @property
    def all_realized(self) -> bool:
        return not self.unknown

    def to_json(self) -> dict:
        return {"fusion": self.fusion, "bound": self.bound, "atoms": [list(a) for a in self.atoms],
                "checked": self.checked, "realized_with_N_1": self.realized,
                "unknown_within_bound": [list(u) for u in self.unknown],
                "note": "evidence within the bound only; the question itself stays open"}


def question_6_2_explorer(F: FusionSystem, bound: int = 12) -> ExplorerReport:
    """Search nonneg combinations of stable real atoms realizing each monotone f in C_ba(F)."""
    atoms = stable_atoms(F, bound)
    D = dim_hom("R", F)
    basis = irreducible_basis("R", F.S)
    reach: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    zero = tuple([0] * len(basis))
    frontier = [zero]
    seen = {zero}
    while frontier:
        nxt = []
        for v in frontier:
            for a in atoms:
                w = tuple(x + y for x, y in zip(v, a))
                if sum(d * c for d, c in zip(basis.degrees, w)) > bound or w in seen:
                    continue
                seen.add(w)
                nxt.append(w)
        frontier = nxt
    for v in sorted(seen):
        reach.setdefault(tuple(D.apply(v).values), v)
    checked, unknown, wits = 0, [], {}
    for f in monotone_points(F, condition_lattice("C_ba", F), bound):
        checked += 1
        w = reach.get(f)
        if w is None:
            unknown.append(f)
        else:
            wits[f] = w
    return ExplorerReport(F.name, bound, atoms, checked, checked - len(unknown), unknown, wits)


def actual_search(f, F: FusionSystem, bound: Optional[int] = None) -> RealizationResult:
    """Look for a nonneg stable real vector with Dim = f exactly (N = 1)."""
    vals = _F_values(f, F)
    deg = vals[0]
    if bound is not None and deg > bound:
        return RealizationResult("not-realizable", tuple(vals), diagnostics={"reason": "f(1) exceeds the bound"})
    D = dim_hom("R", F)
    basis = irreducible_basis("R", F.S)
    if not any(vals):
        return RealizationResult("realized", tuple(vals), RepVector.of(basis, [0] * len(basis)), 1, {"searched": 0})
    searched = 0
    for v in _nonneg_stable_vectors(F, deg):
        if sum(d * c for d, c in zip(basis.degrees, v)) != deg:
            continue
        searched += 1
        if list(D.apply(v).values) == vals:
            return RealizationResult("realized", tuple(vals), RepVector.of(basis, v), 1,
                                     {"searched": searched, "recheck": True})
    return RealizationResult("not-realizable", tuple(vals),
                             diagnostics={"searched": searched, "note": "no actual stable real representation of this dimension function"})


def saturated_fusion_systems_on(name: str) -> List[FusionSystem]:
    """Every saturated fusion system on C3, C5 or D8, each realized by a group."""
    table = {
        "C3": ["preset:C3", "S3"],
        "C5": ["preset:C5", "D10", "C5-semidirect-C4"],
        "D8": ["preset:D8", "S4", "A6"],
    }
    if name not in table:
        raise PreconditionError(f"no fusion system catalogue for {name!r}")
    return [fusion_from_spec(s) for s in table[name]]


# -- the symmetric group on three letters -------------------------------------------------


@dataclass
class NonRealizabilityReport:
    labels: List[str]
    function: List[int]
    in_D_P: bool
    irreducible_labels: List[str]
    solution: List[Fraction]
    unique: bool
    actual_multiple_exists: bool
    sylow_restrictions: Dict[int, RealizationResult]

    def to_json(self) -> dict:
        return {"labels": self.labels, "function": self.function, "in_D_P": self.in_D_P,
                "irreducibles": self.irreducible_labels, "solution": [str(c) for c in self.solution],
                "unique": self.unique, "actual_multiple_exists": self.actual_multiple_exists,
                "sylow_restrictions": {str(p): r.to_json() for p, r in self.sylow_restrictions.items()}}


def sigma3_nonrealizability_demo() -> NonRealizabilityReport:
    G = group_preset("S3")
    pc = PrimePowerClasses.of(G)
    by_order = {1: 2, 2: 2, 3: 0}
    f = [by_order[pc.classification.class_order(c)] for c in range(len(pc))]
    in_dp = bool(check_D_P(f, G))
    table = character_table(G)
    M = [[int(fixed_dim(chi, pc.classification.rep(c), actual=True)) for c in range(len(pc))]
         for chi in table.irreducibles]
    sol = solve_left(M, f)
    square = len(M) == len(pc)
    from .lattice import int_det
    unique = square and int_det(M) != 0
    # Unique solution with a negative entry: N * sol is never an actual character.
    actual_multiple = sol is not None and all(c >= 0 for c in sol)
    restr = {}
    for spec, p in (("S3", 3), ("S3@2", 2)):
        F = fusion_from_spec(spec)
        fp = [by_order[F.S.subgroups().class_order(fc[0])] for fc in F.fusion_classes]
        res = solve_virtual(fp, F)
        if not res.witness.is_actual:
            res = solve_monotone(fp, F)
        restr[p] = res
    return NonRealizabilityReport(list(pc.labels), f, in_dp, list(table.labels), sol, unique,
                                  actual_multiple, restr)
