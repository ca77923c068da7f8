"""Class functions and complex character tables with exact cyclotomic values."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclotomic import CyclotomicNumber, units
from .errors import ConsistencyError, PreconditionError
from .groups import FiniteGroup, Subgroup, abelian_coordinates, prime_power

_LOCAL_CACHE: Dict[Tuple[int, frozenset], Tuple[FiniteGroup, List[int]]] = {}


def local_group(H: Subgroup) -> Tuple[FiniteGroup, List[int]]:
    """H as a standalone group plus its embedding (cached per parent group)."""
    key = (id(H.group), H.members)
    hit = _LOCAL_CACHE.get(key)
    if hit is None or hit[0] is None:
        hit = H.as_group()
        _LOCAL_CACHE[key] = hit
        # keep the parent alive so the id stays unique
        hit[0].__dict__.setdefault("_parent_ref", H.group)
    return hit


def class_labels(G: FiniteGroup) -> List[str]:
    counts: Dict[int, int] = {}
    out = []
    for c in G.element_classes:
        o = G.element_order(c[0])
        counts[o] = counts.get(o, 0) + 1
        out.append(f"{o}{chr(ord('a') + counts[o] - 1)}" if counts[o] <= 26 else f"{o}.{counts[o]}")
    return out


class ClassFunction:
    """A function on the element classes of ``group`` with values in Q(zeta_n)."""

    __slots__ = ("group", "n", "values")

    def __init__(self, group: FiniteGroup, values: Sequence, n: Optional[int] = None):
        self.group = group
        if n is None:
            n = max([v.n for v in values if isinstance(v, CyclotomicNumber)] + [1])
        vals = []
        for v in values:
            if isinstance(v, CyclotomicNumber):
                vals.append(v.embed(n) if v.n != n else v)
            else:
                vals.append(CyclotomicNumber.rational(n, v))
        if len(vals) != len(group.element_classes):
            raise PreconditionError("one value per element class is required")
        self.n = n
        self.values: Tuple[CyclotomicNumber, ...] = tuple(vals)

    @classmethod
    def from_element_values(cls, group: FiniteGroup, f, n: int) -> "ClassFunction":
        return cls(group, [f(c[0]) for c in group.element_classes], n)

    @classmethod
    def trivial(cls, group: FiniteGroup, n: int = 1) -> "ClassFunction":
        return cls(group, [1] * len(group.element_classes), n)

    @classmethod
    def regular(cls, group: FiniteGroup, n: int = 1) -> "ClassFunction":
        return cls(group, [group.order] + [0] * (len(group.element_classes) - 1), n)

    def __call__(self, g: int) -> CyclotomicNumber:
        return self.values[self.group.class_of[g]]

    @property
    def degree(self) -> int:
        return int(self.values[0].to_rational())

    def _check(self, other):
        if other.group is not self.group:
            raise PreconditionError("class functions live on different groups")

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self):
        return ClassFunction(self.group, [-a for a in self.values], self.n)

    def scale(self, q) -> "ClassFunction":
        return ClassFunction(self.group, [a * q for a in self.values], self.n)

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ClassFunction) and other.group is self.group and \
            all(a == b for a, b in zip(self.values, other.values))

    def __hash__(self):
        return hash(tuple(self.values))

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.group, [a.conjugate() for a in self.values], self.n)

    def galois(self, k: int) -> "ClassFunction":
        return ClassFunction(self.group, [a.galois(k) for a in self.values], self.n)

    def is_rational(self) -> bool:
        return all(v.is_rational() for v in self.values)

    def is_real(self) -> bool:
        return self == self.conjugate()

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def sort_key(self):
        return (self.values[0].coords[0], tuple(-c for v in self.values for c in v.coords))

    def __repr__(self):
        return f"ClassFunction({list(self.values)})"

    def to_json(self):
        return [v.to_json() for v in self.values]


def inner_product(a: ClassFunction, b: ClassFunction) -> CyclotomicNumber:
    a._check(b)
    G = a.group
    acc = None
    for cls, x, y in zip(G.element_classes, a.values, b.values):
        if x.is_zero() or y.is_zero():
            continue
        term = x * y.conjugate() * len(cls)
        acc = term if acc is None else acc + term
    if acc is None:
        return CyclotomicNumber.rational(a.n, 0)
    return acc / G.order


def rational_inner_product(a: ClassFunction, b: ClassFunction) -> Fraction:
    ip = inner_product(a, b)
    if not ip.is_rational():
        raise ConsistencyError("inner product of characters is not rational")
    return ip.to_rational()


def element_sum(chi: ClassFunction, members) -> CyclotomicNumber:
    G = chi.group
    counts: Dict[int, int] = {}
    for h in members:
        c = G.class_of[h]
        counts[c] = counts.get(c, 0) + 1
    acc = CyclotomicNumber.rational(chi.n, 0)
    for c, k in counts.items():
        acc = acc + chi.values[c] * k
    return acc


def fixed_dim(chi: ClassFunction, H, actual: bool = False) -> Fraction:
    """dim V^H = (1/|H|) sum_{h in H} chi(h)."""
    members = H.members if isinstance(H, Subgroup) else frozenset(H)
    s = element_sum(chi, members)
    if not s.is_rational():
        raise ConsistencyError("fixed-point dimension is not rational")
    val = s.to_rational() / len(members)
    if actual and (val.denominator != 1 or val < 0):
        raise ConsistencyError(f"actual character has fixed dimension {val} at a subgroup")
    return val


def restrict(chi: ClassFunction, H: Subgroup) -> ClassFunction:
    Hg, emb = local_group(H)
    return ClassFunction(Hg, [chi(emb[c[0]]) for c in Hg.element_classes], chi.n)


def restrict_along(chi: ClassFunction, phi) -> ClassFunction:
    """x -> chi(phi(x)) on the source of a FusionMorphism (indices in chi.group)."""
    P = Subgroup(chi.group, frozenset(phi.source))
    Pg, emb = local_group(P)
    d = phi.as_dict
    return ClassFunction(Pg, [chi(d[emb[c[0]]]) for c in Pg.element_classes], chi.n)


def induce(psi: ClassFunction, H: Subgroup, n: Optional[int] = None) -> ClassFunction:
    """Induced class function on H.group from a class function on local_group(H)."""
    G = H.group
    Hg, emb = local_group(H)
    if psi.group is not Hg:
        raise PreconditionError("induce expects a class function on local_group(H)")
    n = n or psi.n
    loc = {g: i for i, g in enumerate(emb)}
    vals = []
    for cls in G.element_classes:
        inside = [loc[x] for x in cls if x in loc]
        if not inside:
            vals.append(CyclotomicNumber.rational(n, 0))
            continue
        s = element_sum(psi, inside).embed(n) if psi.n != n else element_sum(psi, inside)
        vals.append(s * Fraction(G.order, len(cls) * H.order))
    return ClassFunction(G, vals, n)


def linear_characters(H: FiniteGroup, n: int) -> List[ClassFunction]:
    """All linear characters of H with values written at conductor n."""
    factors, coords = abelian_coordinates(H)
    out = []

    def rec(i, k):
        if i == len(factors):
            vals = []
            for cls in H.element_classes:
                c = coords[cls[0]]
                e = sum(ki * ci * (n // d) for ki, ci, d in zip(k, c, factors))
                vals.append(CyclotomicNumber.zeta_power(n, e))
            out.append(ClassFunction(H, vals, n))
            return
        for ki in range(factors[i]):
            rec(i + 1, k + (ki,))

    rec(0, ())
    return out


@dataclass
class CharacterTable:
    group: FiniteGroup
    conductor: int
    irreducibles: List[ClassFunction]
    labels: List[str] = field(default_factory=list)

    @property
    def degrees(self) -> List[int]:
        return [chi.degree for chi in self.irreducibles]

    @property
    def class_labels(self) -> List[str]:
        return class_labels(self.group)

    def __len__(self):
        return len(self.irreducibles)

    def decompose(self, chi: ClassFunction) -> List[Fraction]:
        return [rational_inner_product(chi, x) for x in self.irreducibles]

    def combine(self, coeffs: Sequence) -> ClassFunction:
        acc = ClassFunction(self.group, [0] * len(self.group.element_classes), self.conductor)
        for c, x in zip(coeffs, self.irreducibles):
            if c:
                acc = acc + x.scale(c)
        return acc

    def index_of(self, chi: ClassFunction) -> int:
        for i, x in enumerate(self.irreducibles):
            if x == chi:
                return i
        raise KeyError("not an irreducible character")

    def galois_permutation(self, k: int) -> List[int]:
        return [self.index_of(x.galois(k)) for x in self.irreducibles]

    @property
    def conjugation(self) -> List[int]:
        return self.galois_permutation(-1 % self.conductor if self.conductor > 1 else 1)

    def verify(self) -> None:
        G = self.group
        k = len(G.element_classes)
        if len(self.irreducibles) != k:
            raise ConsistencyError("wrong number of irreducibles")
        if sum(d * d for d in self.degrees) != G.order:
            raise ConsistencyError("sum of squared degrees differs from the group order")
        for i, a in enumerate(self.irreducibles):
            for j, b in enumerate(self.irreducibles[i:], i):
                if inner_product(a, b) != (1 if i == j else 0):
                    raise ConsistencyError("row orthogonality fails")
        for c1 in range(k):
            for c2 in range(k):
                s = sum((chi.values[c1] * chi.values[c2].conjugate() for chi in self.irreducibles),
                        CyclotomicNumber.rational(self.conductor, 0))
                expected = G.order // len(G.element_classes[c1]) if c1 == c2 else 0
                if s != expected:
                    raise ConsistencyError("column orthogonality fails")

    def to_json(self) -> dict:
        G = self.group
        return {
            "group": G.name, "order": G.order, "conductor": self.conductor,
            "classes": [{"label": l, "size": len(c), "representative": list(G.elements[c[0]])}
                        for l, c in zip(self.class_labels, G.element_classes)],
            "irreducibles": [{"label": l, "degree": x.degree, "values": [[str(q) for q in v.coords] for v in x.values]}
                             for l, x in zip(self.labels, self.irreducibles)],
        }


def _peel(candidate: ClassFunction, found: List[ClassFunction]) -> ClassFunction:
    r = candidate
    for chi in found:
        m = inner_product(candidate, chi)
        if not m.is_zero():
            r = r - chi.scale(m.to_rational())
    return r


def _accept(r: ClassFunction, found: List[ClassFunction], seen: set, n: int) -> None:
    for k in units(n):
        x = r.galois(k)
        key = tuple(x.values)
        if key not in seen:
            seen.add(key)
            found.append(x)


def _cyclic_subgroup_reps(G: FiniteGroup) -> List[Subgroup]:
    seen, out = set(), []
    for c in G.element_classes:
        H = G.closure([c[0]])
        if H not in seen:
            seen.update(G.conjugate(g, H) for g in range(G.order))
            out.append(Subgroup(G, H))
    return out


def _class_algebra_characters(G: FiniteGroup, n: int) -> List[ClassFunction]:
    """Irreducibles from a numerical eigenbasis of the class algebra.

    Central characters are common eigenvectors of the class multiplication
    matrices.  Values are made exact by rounding the eigenvalue
    multiplicities of each element, which are integers.
    """
    import numpy as np

    classes = G.element_classes
    k = len(classes)
    reps = [c[0] for c in classes]
    rng = np.random.default_rng(20240601)
    weights = rng.standard_normal(k)
    M = np.zeros((k, k))
    for r, cr in enumerate(classes):
        for t, z in enumerate(reps):
            for x in cr:
                M[G.class_of[G.mul(G.inv(x), z)], t] += weights[r]
    _, vecs = np.linalg.eig(M)
    sizes = np.array([len(c) for c in classes], dtype=float)
    out = []
    for j in range(k):
        w = vecs[:, j] / vecs[0, j]
        deg = np.sqrt(G.order / np.sum(np.abs(w) ** 2 / sizes).real)
        approx = deg * w / sizes
        vals = []
        for g in reps:
            m = G.element_order(g)
            powers = [approx[G.class_of[G.power(g, e)]] for e in range(m)]
            counts = {}
            for kk in range(m):
                a = sum(powers[e] * np.exp(-2j * np.pi * e * kk / m) for e in range(m)) / m
                ai = int(round(a.real))
                if abs(a - ai) > 1e-6 or ai < 0:
                    raise ConsistencyError("class algebra eigenvalue multiplicities are not integral")
                if ai:
                    counts[kk * (n // m)] = ai
            vals.append(CyclotomicNumber.from_exponent_counts(n, counts))
        out.append(ClassFunction(G, vals, n))
    return out


def character_table(G: FiniteGroup, p: Optional[int] = None) -> CharacterTable:
    cached = G.__dict__.get("_char_table")
    if cached is not None:
        return cached
    n = G.exponent
    k = len(G.element_classes)
    found: List[ClassFunction] = []
    seen: set = set()
    pp = prime_power(G.order)
    is_pgroup = G.order == 1 or (pp is not None and (p is None or pp[0] == p))
    if is_pgroup:
        reps = sorted(G.subgroups().reps(), key=lambda H: -H.order)
    else:
        reps = sorted(_cyclic_subgroup_reps(G), key=lambda H: -H.order)
    for H in reps:
        if len(found) == k:
            break
        Hg, _ = local_group(H)
        for lam in linear_characters(Hg, n):
            if len(found) == k:
                break
            r = _peel(induce(lam, H, n), found)
            if not r.is_zero() and inner_product(r, r) == 1 and r.values[0].to_rational() > 0:
                _accept(r, found, seen, n)
    if len(found) < k and not is_pgroup:
        # non-monomial ambient groups: complete from the class algebra
        for chi in _class_algebra_characters(G, n):
            key = tuple(chi.values)
            if key not in seen:
                seen.add(key)
                found.append(chi)
    if len(found) != k:
        raise ConsistencyError(f"character table of {G.name or 'group'} incomplete: {len(found)} of {k}")
    found.sort(key=lambda x: x.sort_key())
    labels = []
    counts: Dict[int, int] = {}
    for x in found:
        counts[x.degree] = counts.get(x.degree, 0) + 1
        labels.append(f"X{x.degree}.{counts[x.degree]}")
    table = CharacterTable(G, n, found, labels)
    table.verify()
    G.__dict__["_char_table"] = table
    return table


def is_F_stable(chi: ClassFunction, F) -> bool:
    return all(len({chi(x) for x in c}) == 1 for c in F.element_classes)


def is_F_stable_by_restriction(chi: ClassFunction, F) -> bool:
    """res_phi chi = res_P chi for every subgroup P and every phi in F(P, S)."""
    for H in F.subgroups.subgroups:
        base = [chi(x) for x in H.sorted]
        for t in F.hom_to_S(H):
            if any(chi(y) != b for y, b in zip(t, base)):
                return False
    return True


def galois_transfer(chi: ClassFunction, target: str) -> ClassFunction:
    """Sum of the Galois conjugates of chi over Gal(target(zeta_n)/target)."""
    if target == "Q":
        ks = units(chi.n)
    elif target == "R":
        ks = [1, -1 % chi.n] if chi.n > 2 else [1, 1]
    else:
        raise PreconditionError("target field must be Q or R")
    acc = chi.galois(ks[0])
    for k in ks[1:]:
        acc = acc + chi.galois(k)
    return acc


def frobenius_schur(chi: ClassFunction) -> int:
    G = chi.group
    acc = CyclotomicNumber.rational(chi.n, 0)
    for c in G.element_classes:
        acc = acc + chi(G.mul(c[0], c[0])) * len(c)
    nu = acc / G.order
    if not nu.is_rational() or nu.to_rational() not in (-1, 0, 1):
        raise ConsistencyError(f"Frobenius-Schur indicator {nu} out of range")
    return int(nu.to_rational())


@dataclass
class RealCharacter:
    character: ClassFunction
    indicator: int
    components: Tuple[int, ...]  # indices of complex irreducibles involved
    label: str


def real_irreducible_characters(table: CharacterTable) -> List[RealCharacter]:
    conj = table.conjugation
    out, used = [], set()
    for i, chi in enumerate(table.irreducibles):
        if i in used:
            continue
        nu = frobenius_schur(chi)
        if nu == 1:
            out.append(RealCharacter(chi, 1, (i,), table.labels[i]))
        elif nu == -1:
            out.append(RealCharacter(chi.scale(2), -1, (i,), "2*" + table.labels[i]))
        else:
            j = conj[i]
            used.add(j)
            out.append(RealCharacter(chi + table.irreducibles[j], 0, (i, j),
                                     f"{table.labels[i]}+{table.labels[j]}"))
        used.add(i)
    return out
