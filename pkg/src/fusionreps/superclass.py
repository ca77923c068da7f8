"""Super class functions, Borel-Smith type conditions, and the lattices they cut out.

Conditions are enumerated once as structured records over subgroup classes.
The checkers evaluate those records on function values directly; the lattice
builders turn the same records into integer constraint rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import PreconditionError
from .fusion import FusionSystem
from .groups import (FiniteGroup, Subgroup, SubgroupClassification, multiplicative_order, normalizer,
                     p_subgroups, prime_factors, prime_power, sylow_subgroup)
from .lattice import IntegerLattice, solution_lattice


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class Condition:
    """One constraint on a super class function, indexed by class numbers.

    kind "i", "iii", "**", "iv": f(L) ≡ f(H) mod ``modulus``.
    kind "ii": p f(H) = sum f(H_i) - f(L) over the p + 1 intermediate subgroups.
    """

    kind: str
    L: int
    H: int
    modulus: int = 0
    intermediates: Tuple[int, ...] = ()
    p: int = 0
    extra: Tuple = ()

    def holds(self, f: Sequence[int]) -> bool:
        if self.kind == "ii":
            return self.p * f[self.H] == sum(f[i] for i in self.intermediates) - f[self.L]
        return (f[self.L] - f[self.H]) % self.modulus == 0

    def row(self, n: int) -> List[int]:
        r = [0] * n
        if self.kind == "ii":
            r[self.H] += self.p
            for i in self.intermediates:
                r[i] -= 1
            r[self.L] += 1
        else:
            r[self.L] += 1
            r[self.H] -= 1
        return r

    def merged(self, column_of: Sequence[int]) -> "Condition":
        return Condition(self.kind, column_of[self.L], column_of[self.H], self.modulus,
                         tuple(sorted(column_of[i] for i in self.intermediates)), self.p, self.extra)

    def describe(self, labels: Sequence[str]) -> dict:
        out = {"condition": self.kind, "L": labels[self.L], "H": labels[self.H]}
        if self.kind == "ii":
            out["intermediates"] = [labels[i] for i in self.intermediates]
        else:
            out["modulus"] = self.modulus
        if self.extra:
            out["detail"] = list(self.extra)
        return out


@dataclass
class Verdict:
    passed: bool
    violations: List[dict] = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {"passed": self.passed, "violations": self.violations}


def _dedupe(conds) -> List[Condition]:
    seen, out = set(), []
    for c in conds:
        key = (c.kind, c.L, c.H, c.modulus, c.intermediates)
        if key not in seen and not (c.kind != "ii" and (c.modulus <= 1 or c.L == c.H)):
            seen.add(key)
            out.append(c)
    return out


def _coset_order(G: FiniteGroup, x: int, L: frozenset) -> int:
    k, y = 1, x
    while y not in L:
        y = G.mul(y, x)
        k += 1
    return k


# -- enumeration over a p-group ---------------------------------------------


def borel_smith_conditions(S: FiniteGroup, p: int) -> List[Condition]:
    """Conditions (i)-(iii) over the S-classes of subgroups of the p-group S."""
    cls = S.subgroups()
    subs = cls.subgroups
    out = []
    for c in range(cls.n_classes):
        H = cls.rep(c)
        below = [K for K in subs if K.members <= H.members]
        for L in below:
            idx = H.order // L.order
            if idx == p and p % 2 == 1:
                out.append(Condition("i", cls.class_of[cls.index_of(L)], c, 2))
            if idx == p * p and L.is_normal_in(H):
                mids = [K for K in below if L.order < K.order < H.order and L.members <= K.members]
                if len(mids) == p + 1:
                    out.append(Condition("ii", cls.class_index(L), c,
                                         intermediates=tuple(sorted(cls.class_index(K) for K in mids)), p=p))
    if p == 2:
        for c in range(cls.n_classes):
            L = cls.rep(c)
            NL = normalizer(S, L)
            for N in subs:
                if not (L.members <= N.members <= NL.members):
                    continue
                idx = N.order // L.order
                if idx not in (4, 8):
                    continue
                orders = [_coset_order(S, x, L.members) for x in N.members]
                small = sum(1 for o in orders if o <= 2) // L.order
                if small != 2:
                    continue  # quotient has more than one involution
                if idx == 4:
                    kind_mod, name = 2, "Z/4"
                elif max(orders) == 4:
                    kind_mod, name = 4, "Q8"
                else:
                    continue
                H = frozenset(x for x, o in zip(N.members, orders) if o <= 2)
                out.append(Condition("iii", c, cls.class_index(H), kind_mod,
                                     extra=(name, cls.labels[cls.class_index(N)])))
    return _dedupe(out)


def _induced_unit(G: FiniteGroup, phi: Dict[int, int], H: Subgroup, L: frozenset, p: int) -> int:
    """Multiplicative order of the unit by which phi acts on H/L (cyclic of order p)."""
    h = next(x for x in H.sorted if x not in L)
    y = phi[h]
    u, z = 1, h
    while not G.mul(G.inv(z), y) in L:
        z = G.mul(z, h)
        u += 1
    return multiplicative_order(u, p)


def fusion_artin_conditions(F: FusionSystem, cyclic_only: bool = False) -> List[Condition]:
    """(**): f(L) ≡ f(H) mod m for automorphisms of H fixing L, m their order on H/L."""
    S, p = F.S, F.prime
    cls = F.subgroups
    out = []
    for c in range(cls.n_classes):
        H = cls.rep(c)
        if cyclic_only and not H.is_cyclic():
            continue
        autos = [t for t in F.hom_to_S(H) if frozenset(t) == H.members]
        for L in cls.subgroups:
            if L.order * p != H.order or not L.members <= H.members:
                continue
            m = 1
            for t in autos:
                phi = dict(zip(H.sorted, t))
                if all(phi[x] in L.members for x in L.members):
                    m = _lcm(m, _induced_unit(S, phi, H, L.members, p))
            out.append(Condition("**", cls.class_index(L), c, m))
    return _dedupe(out)


# -- prime-power classes of an ambient group --------------------------------


@dataclass
class PrimePowerClasses:
    """Subgroups of G of prime power order (including 1), up to G-conjugacy."""

    group: FiniteGroup
    classification: SubgroupClassification
    primes: List[int]

    @classmethod
    def of(cls, G: FiniteGroup) -> "PrimePowerClasses":
        cached = G.__dict__.get("_pp_classes")
        if cached is not None:
            return cached
        primes = prime_factors(G.order)
        sets = set()
        for q in primes:
            sets.update(p_subgroups(G, q))
        sets.add(frozenset([0]))
        out = cls(G, SubgroupClassification.build(G, sets), primes)
        G.__dict__["_pp_classes"] = out
        return out

    @property
    def labels(self) -> List[str]:
        return self.classification.labels

    def __len__(self):
        return self.classification.n_classes

    def prime_of(self, c: int) -> Optional[int]:
        pp = prime_power(self.classification.class_order(c))
        return pp[0] if pp else None


def bauer_conditions(G: FiniteGroup, pc: Optional[PrimePowerClasses] = None) -> List[Condition]:
    """(iv): L ◁ H p-groups of index p, g normalizing both with gH of prime power order."""
    pc = pc or PrimePowerClasses.of(G)
    cls = pc.classification
    out = []
    for c in range(cls.n_classes):
        H = cls.rep(c)
        pp = prime_power(H.order)
        if pp is None:
            continue
        p = pp[0]
        NH = normalizer(G, H)
        for L in cls.subgroups:
            if L.order * p != H.order or not L.members <= H.members:
                continue
            m = 1
            for g in NH.members:
                if not all(G.conj(g, x) in L.members for x in L.generators):
                    continue
                if prime_power(_coset_order(G, g, H.members)) is None and _coset_order(G, g, H.members) != 1:
                    continue
                phi = {x: G.conj(g, x) for x in H.members}
                m = _lcm(m, _induced_unit(G, phi, H, L.members, p))
            out.append(Condition("iv", cls.class_index(L), c, m))
    return _dedupe(out)


def sylow_conditions_in_G(G: FiniteGroup, pc: Optional[PrimePowerClasses] = None) -> List[Condition]:
    """(i)-(iii) on each Sylow subgroup, re-indexed by G-classes."""
    pc = pc or PrimePowerClasses.of(G)
    out = []
    for q in pc.primes:
        P = sylow_subgroup(G, q)
        Pg, emb = P.as_group()
        local = Pg.subgroups()
        column_of = [pc.classification.class_index(frozenset(emb[x] for x in local.rep(c).members))
                     for c in range(local.n_classes)]
        out.extend(cond.merged(column_of) for cond in borel_smith_conditions(Pg, q))
    return _dedupe(out)


# -- super class functions --------------------------------------------------


Context = Union[FiniteGroup, FusionSystem]


@dataclass(frozen=True)
class SuperClassFunction:
    domain: str                  # "S", "F" or "G-prime-power"
    labels: Tuple[str, ...]
    values: Tuple[int, ...]

    def __post_init__(self):
        if self.domain not in ("S", "F", "G-prime-power"):
            raise PreconditionError(f"unknown domain {self.domain!r}")
        if len(self.labels) != len(self.values):
            raise PreconditionError("labels and values differ in length")

    def __getitem__(self, label: str) -> int:
        return self.values[self.labels.index(label)]

    def to_json(self) -> dict:
        return {"domain": self.domain, "values": {l: v for l, v in zip(self.labels, self.values)}}

    @classmethod
    def from_json(cls, data: dict, labels: Sequence[str]) -> "SuperClassFunction":
        unknown = set(data) - {"domain", "values"}
        if unknown:
            raise PreconditionError(f"unknown fields in function JSON: {sorted(unknown)}")
        vals = data.get("values")
        if isinstance(vals, list):
            if len(vals) != len(labels):
                raise PreconditionError(f"expected {len(labels)} values, got {len(vals)}")
            return cls(data.get("domain", "F"), tuple(labels), tuple(int(v) for v in vals))
        missing = [l for l in labels if l not in vals]
        extra = [l for l in vals if l not in labels]
        if missing or extra:
            raise PreconditionError(f"function labels mismatch: missing {missing}, unknown {extra}")
        return cls(data.get("domain", "F"), tuple(labels), tuple(int(vals[l]) for l in labels))


def domain_labels(context: Context, domain: Optional[str] = None) -> Tuple[str, List[str]]:
    if isinstance(context, FusionSystem):
        if domain == "S":
            return "S", list(context.subgroups.labels)
        return "F", context.fusion_labels
    if domain == "G-prime-power":
        return domain, PrimePowerClasses.of(context).labels
    return "S", list(context.subgroups().labels)


def make_function(context: Context, values: Sequence[int], domain: Optional[str] = None) -> SuperClassFunction:
    dom, labels = domain_labels(context, domain)
    return SuperClassFunction(dom, tuple(labels), tuple(int(v) for v in values))


def on_S_classes(f: Union[SuperClassFunction, Sequence[int]], context: Context) -> List[int]:
    """Values indexed by S-classes; F-domain functions are expanded along F-classes."""
    if isinstance(f, SuperClassFunction):
        dom, vals = f.domain, list(f.values)
    else:
        vals = list(f)
        dom = "F" if isinstance(context, FusionSystem) else "S"
    if dom == "S":
        return vals
    if dom == "F":
        if not isinstance(context, FusionSystem):
            raise PreconditionError("F-domain function needs a fusion system")
        return [vals[context.fusion_class_of[c]] for c in range(context.subgroups.n_classes)]
    raise PreconditionError("prime-power domain functions are not indexed by S-classes")


def restrict_to_F_classes(vals: Sequence[int], F: FusionSystem) -> List[int]:
    """Inverse of the expansion; asserts constancy on F-classes."""
    out = []
    for fc in F.fusion_classes:
        vs = {vals[c] for c in fc}
        if len(vs) != 1:
            raise PreconditionError("function is not constant on F-classes")
        out.append(vs.pop())
    return out


def _S_group(context: Context) -> Tuple[FiniteGroup, int]:
    if isinstance(context, FusionSystem):
        return context.S, context.prime
    pp = prime_power(context.order)
    if pp is None and context.order > 1:
        raise PreconditionError("Borel-Smith conditions need a p-group (or a fusion system)")
    return context, pp[0] if pp else 2


def _verdict(vals: Sequence[int], conds: Sequence[Condition], labels: Sequence[str]) -> Verdict:
    bad = [c.describe(labels) for c in conds if not c.holds(vals)]
    return Verdict(not bad, bad)


def check_borel_smith(f, context: Context, only: Optional[Sequence[str]] = None) -> Verdict:
    S, p = _S_group(context)
    vals = on_S_classes(f, context)
    conds = borel_smith_conditions(S, p)
    if only is not None:
        conds = [c for c in conds if c.kind in only]
    return _verdict(vals, conds, S.subgroups().labels)


def check_fusion_artin(f, F: FusionSystem, cyclic_only: bool = False) -> Verdict:
    vals = on_S_classes(f, F)
    return _verdict(vals, fusion_artin_conditions(F, cyclic_only), F.subgroups.labels)


def check_bauer_iv(f, G: FiniteGroup) -> Verdict:
    pc = PrimePowerClasses.of(G)
    vals = list(f.values) if isinstance(f, SuperClassFunction) else list(f)
    return _verdict(vals, bauer_conditions(G, pc), pc.labels)


def check_D_P(f, G: FiniteGroup) -> Verdict:
    pc = PrimePowerClasses.of(G)
    vals = list(f.values) if isinstance(f, SuperClassFunction) else list(f)
    conds = sylow_conditions_in_G(G, pc) + bauer_conditions(G, pc)
    return _verdict(vals, conds, pc.labels)


def _lattice_from(conds: Sequence[Condition], n: int) -> IntegerLattice:
    eqs = [c.row(n) for c in conds if c.kind == "ii"]
    congs = [(c.row(n), c.modulus) for c in conds if c.kind != "ii"]
    return solution_lattice(n, eqs, congs)


def condition_lattice(kind: str, context: Context, cyclic_only: bool = False) -> IntegerLattice:
    """C, C_b, C_ba (over S-classes for a p-group, F-classes for a fusion system) or D_P (over G)."""
    if kind == "D_P":
        if isinstance(context, FusionSystem):
            context = context.G
        pc = PrimePowerClasses.of(context)
        return _lattice_from(sylow_conditions_in_G(context, pc) + bauer_conditions(context, pc), len(pc))
    if kind not in ("C", "C_b", "C_ba"):
        raise PreconditionError(f"unknown lattice kind {kind!r}")
    S, p = _S_group(context)
    conds: List[Condition] = []
    if kind in ("C_b", "C_ba"):
        conds += borel_smith_conditions(S, p)
    if kind == "C_ba":
        F = context if isinstance(context, FusionSystem) else None
        if F is not None:
            conds += fusion_artin_conditions(F, cyclic_only)
    if isinstance(context, FusionSystem):
        n = len(context.fusion_classes)
        conds = _dedupe(c.merged(context.fusion_class_of) for c in conds)
        conds = [c for c in conds if c.kind == "ii" or c.L != c.H]
    else:
        n = S.subgroups().n_classes
    return _lattice_from(conds, n)


# -- monotonicity and extension ---------------------------------------------


def monotone_check(f, context: Context) -> bool:
    """f(K) >= f(H) >= 0 whenever K is subconjugate to H."""
    vals = on_S_classes(f, context)
    S, _ = _S_group(context)
    sub = S.subgroups().subconjugacy
    if any(v < 0 for v in vals):
        return False
    n = len(vals)
    return all(vals[i] >= vals[j] for i in range(n) for j in range(n) if sub[i][j])


def extend_to_prime_power(f: Sequence[int], G: FiniteGroup, p: int) -> SuperClassFunction:
    """f given on the p-subgroup classes (in prime-power class order) of G; q-classes get f(1)."""
    pc = PrimePowerClasses.of(G)
    pcls = [c for c in range(len(pc)) if pc.classification.class_order(c) == 1 or pc.prime_of(c) == p]
    if len(f) != len(pcls):
        raise PreconditionError(f"expected {len(pcls)} values on {p}-subgroup classes")
    vals = dict(zip(pcls, f))
    f1 = vals[pc.classification.class_index(frozenset([0]))]
    out = [vals.get(c, f1) for c in range(len(pc))]
    return SuperClassFunction("G-prime-power", tuple(pc.labels), tuple(out))
