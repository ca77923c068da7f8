"""Finite permutation groups carried as full, canonically sorted element lists.

Elements are addressed by their index in ``FiniteGroup.elements``; index 0 is
always the identity because the identity image tuple is lexicographically
smallest.  Products follow function composition: ``mul(a, b)`` applies ``b``
first, then ``a``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import SizeError, StructuralError

Perm = Tuple[int, ...]

MAX_DEGREE = 64
MAX_ORDER = 10000
MAX_SUBGROUP_ORDER = 512
TABLE_LIMIT = 2048


def perm_mul(a: Perm, b: Perm) -> Perm:
    return tuple(a[i] for i in b)


def perm_inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def permutation(images: Sequence[int]) -> Perm:
    """Validate an image list and return it as a tuple."""
    images = tuple(int(x) for x in images)
    if sorted(images) != list(range(len(images))):
        raise StructuralError(f"not a permutation of 0..{len(images) - 1}: {images}")
    return images


def from_cycles(degree: int, *cycles: Sequence[int]) -> Perm:
    images = list(range(degree))
    for cyc in cycles:
        for i, x in enumerate(cyc):
            images[x] = cyc[(i + 1) % len(cyc)]
    return permutation(images)


def prime_factors(n: int) -> List[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(n: int) -> Optional[Tuple[int, int]]:
    """(p, k) with n = p**k, or None.  n = 1 gives None."""
    ps = prime_factors(n)
    if len(ps) != 1:
        return None
    p, k = ps[0], 0
    while n > 1:
        n //= p
        k += 1
    return p, k


def multiplicative_order(u: int, m: int) -> int:
    u %= m
    k, x = 1, u
    while x != 1 % m:
        x = x * u % m
        k += 1
    return k


class FiniteGroup:
    """A permutation group with every element enumerated.

    ``elements`` is sorted lexicographically by image tuple, which makes the
    indexing independent of the generating set.
    """

    def __init__(
        self,
        generators: Iterable[Sequence[int]],
        name: Optional[str] = None,
        degree: Optional[int] = None,
        max_degree: int = MAX_DEGREE,
        max_order: int = MAX_ORDER,
    ):
        gens = [permutation(g) for g in generators]
        if degree is None:
            if not gens:
                raise StructuralError("need a degree or at least one generator")
            degree = len(gens[0])
        if any(len(g) != degree for g in gens):
            raise StructuralError("generators have different degrees")
        if degree > max_degree:
            raise SizeError(f"degree {degree} exceeds bound {max_degree}")
        self.degree = degree
        self.name = name
        ident = tuple(range(degree))
        gens = [g for g in gens if g != ident]
        self.generators: Tuple[Perm, ...] = tuple(gens)

        seen = {ident}
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = perm_mul(g, x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > max_order:
                        raise SizeError(f"group order exceeds bound {max_order}")
                    queue.append(y)
        self.elements: Tuple[Perm, ...] = tuple(sorted(seen))
        self.index: Dict[Perm, int] = {e: i for i, e in enumerate(self.elements)}
        self.order = len(self.elements)
        self.identity = 0
        self._table: Optional[List[List[int]]] = None
        self._inv = [self.index[perm_inv(e)] for e in self.elements]

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order}, degree={self.degree})"

    def __len__(self):
        return self.order

    # -- arithmetic ---------------------------------------------------------

    @property
    def table(self) -> Optional[List[List[int]]]:
        if self._table is None and self.order <= TABLE_LIMIT:
            self._table = _build_table(self.elements, self.degree)
        return self._table

    def mul(self, a: int, b: int) -> int:
        t = self.table
        if t is not None:
            return t[a][b]
        return self.index[perm_mul(self.elements[a], self.elements[b])]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.mul(self.mul(g, x), self._inv[g])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self._inv[a], -k
        out = 0
        while k:
            if k & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            k >>= 1
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    @cached_property
    def generator_indices(self) -> Tuple[int, ...]:
        return tuple(self.index[g] for g in self.generators)

    @cached_property
    def exponent(self) -> int:
        e = 1
        for a in range(self.order):
            o = self.element_order(a)
            e = e * o // gcd(e, o)
        return e

    @cached_property
    def is_abelian(self) -> bool:
        gi = self.generator_indices
        return all(self.mul(a, b) == self.mul(b, a) for a in gi for b in gi)

    def order_by_stabilizer_chain(self) -> int:
        """|G| as the product of orbit lengths along a point-stabilizer chain."""
        current = list(range(self.order))
        total = 1
        for point in range(self.degree):
            if len(current) == 1:
                break
            orbit = {self.elements[g][point] for g in current}
            total *= len(orbit)
            current = [g for g in current if self.elements[g][point] == point]
        return total

    # -- element classes ----------------------------------------------------

    @cached_property
    def element_classes(self) -> Tuple[Tuple[int, ...], ...]:
        """Conjugacy classes of elements, ordered by smallest member index."""
        class_of = [-1] * self.order
        classes = []
        gi = self.generator_indices
        for x in range(self.order):
            if class_of[x] >= 0:
                continue
            cls = {x}
            queue = [x]
            while queue:
                y = queue.pop()
                for g in gi:
                    z = self.conj(g, y)
                    if z not in cls:
                        cls.add(z)
                        queue.append(z)
            for y in cls:
                class_of[y] = len(classes)
            classes.append(tuple(sorted(cls)))
        self.__dict__["class_of"] = tuple(class_of)
        return tuple(classes)

    @cached_property
    def class_of(self) -> Tuple[int, ...]:
        self.element_classes
        return self.__dict__["class_of"]

    # -- subgroups ----------------------------------------------------------

    def closure(self, gens: Iterable[int]) -> frozenset:
        gens = [g for g in set(gens) if g != 0]
        seen = {0}
        queue = [0]
        while queue:
            x = queue.pop()
            for g in gens:
                y = self.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def subgroup(self, members_or_gens: Iterable[int], generators: bool = False) -> "Subgroup":
        members = self.closure(members_or_gens) if generators else frozenset(members_or_gens)
        if not generators and self.closure(members) != members:
            raise StructuralError("member set is not closed under multiplication")
        return Subgroup(self, members)

    @cached_property
    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    @cached_property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([0]))

    def conjugate(self, g: int, members: Iterable[int]) -> frozenset:
        return frozenset(self.conj(g, x) for x in members)

    def subgroups(self, bound: int = MAX_SUBGROUP_ORDER) -> "SubgroupClassification":
        cached = self.__dict__.get("_subgroups")
        if cached is not None:
            return cached
        if self.order > bound:
            raise SizeError(f"subgroup enumeration bound {bound} exceeded by order {self.order}")
        result = SubgroupClassification.build(self, enumerate_subgroups(self))
        self.__dict__["_subgroups"] = result
        return result


def _build_table(elements: Sequence[Perm], degree: int) -> List[List[int]]:
    n = len(elements)
    E = np.array(elements, dtype=np.int64).reshape(n, degree)
    if degree <= 15:
        weights = degree ** np.arange(degree - 1, -1, -1, dtype=np.int64)
        codes = E @ weights  # sorted because elements are lexicographically sorted
        rows = []
        for a in range(n):
            prod = E[a][E]
            rows.append(np.searchsorted(codes, prod @ weights).tolist())
        return rows
    index = {e: i for i, e in enumerate(elements)}
    return [[index[perm_mul(a, b)] for b in elements] for a in elements]


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by the set of member indices in ``group``."""

    group: FiniteGroup = field(compare=False, hash=False, repr=False)
    members: frozenset

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "Subgroup") -> bool:
        return self.members < other.members

    @cached_property
    def sorted(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))

    @cached_property
    def generators(self) -> Tuple[int, ...]:
        """A small generating set, chosen greedily in index order."""
        G = self.group
        gens: List[int] = []
        span = frozenset([0])
        for x in self.sorted:
            if x not in span:
                gens.append(x)
                span = G.closure(gens)
                if len(span) == self.order:
                    break
        return tuple(gens)

    def conjugate(self, g: int) -> "Subgroup":
        return Subgroup(self.group, self.group.conjugate(g, self.members))

    def is_normal_in(self, other: "Subgroup") -> bool:
        G = self.group
        return all(G.conj(g, x) in self.members for g in other.generators for x in self.generators)

    def is_cyclic(self) -> bool:
        G = self.group
        return any(G.element_order(x) == self.order for x in self.members)

    def join(self, x: int) -> "Subgroup":
        return Subgroup(self.group, self.group.closure(self.generators + (x,)))

    def as_group(self, name: Optional[str] = None) -> Tuple[FiniteGroup, List[int]]:
        """This subgroup as a standalone group, with local-to-parent index map."""
        G = self.group
        H = FiniteGroup([G.elements[g] for g in self.generators], name=name, degree=G.degree,
                        max_degree=max(G.degree, MAX_DEGREE))
        return H, [G.index[e] for e in H.elements]


def enumerate_subgroups(G: FiniteGroup) -> List[frozenset]:
    """All subgroups by cyclic extension: adjoin one element at a time, dedupe by member set."""
    cyclic_gens = {}
    for x in range(G.order):
        c = G.closure([x])
        cyclic_gens.setdefault(c, x)
    gens_sorted = sorted(cyclic_gens.items(), key=lambda kv: (len(kv[0]), min(kv[0] - {0}, default=0)))
    found = {frozenset([0]): (0,)}
    queue = deque([frozenset([0])])
    while queue:
        H = queue.popleft()
        hg = found[H]
        for C, x in gens_sorted:
            if C <= H:
                continue
            K = G.closure(hg + (x,))
            if K not in found:
                found[K] = hg + (x,)
                queue.append(K)
    return list(found)


@dataclass
class SubgroupClassification:
    """All subgroups of a group, partitioned into conjugacy classes.

    ``subgroups`` is ordered by (order, sorted members); ``classes`` by
    (order, smallest sorted member set in the class); class labels read
    ``"<order>.<k>"`` with k counting from 1 within each order.
    """

    group: FiniteGroup
    subgroups: List[Subgroup]
    classes: List[List[int]]
    labels: List[str]
    class_of: List[int]
    position: Dict[frozenset, int]

    @classmethod
    def build(cls, G: FiniteGroup, member_sets: Iterable[frozenset], acting: Optional[Sequence[int]] = None):
        subs = sorted(member_sets, key=lambda m: (len(m), tuple(sorted(m))))
        position = {m: i for i, m in enumerate(subs)}
        gi = G.generator_indices if acting is None else tuple(acting)
        class_of = [-1] * len(subs)
        raw = []
        for i, m in enumerate(subs):
            if class_of[i] >= 0:
                continue
            orbit = {m}
            queue = [m]
            while queue:
                h = queue.pop()
                for g in gi:
                    k = G.conjugate(g, h)
                    if k not in orbit:
                        if k not in position:
                            raise StructuralError("subgroup family is not closed under conjugation")
                        orbit.add(k)
                        queue.append(k)
            members = sorted(position[h] for h in orbit)
            for j in members:
                class_of[j] = len(raw)
            raw.append(members)
        # subgroups are sorted, so members[0] is the minimal member set of the class
        order_key = sorted(range(len(raw)), key=lambda c: raw[c][0])
        renum = {old: new for new, old in enumerate(order_key)}
        classes = [raw[c] for c in order_key]
        class_of = [renum[c] for c in class_of]
        labels, counts = [], {}
        for c in classes:
            n = len(subs[c[0]])
            counts[n] = counts.get(n, 0) + 1
            labels.append(f"{n}.{counts[n]}")
        return cls(G, [Subgroup(G, m) for m in subs], classes, labels, class_of, position)

    def __len__(self):
        return len(self.subgroups)

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def rep(self, c: int) -> Subgroup:
        return self.subgroups[self.classes[c][0]]

    def reps(self) -> List[Subgroup]:
        return [self.rep(c) for c in range(len(self.classes))]

    def index_of(self, H) -> int:
        members = H.members if isinstance(H, Subgroup) else frozenset(H)
        return self.position[members]

    def class_index(self, H) -> int:
        return self.class_of[self.index_of(H)]

    def class_order(self, c: int) -> int:
        return self.rep(c).order

    def label_index(self, label: str) -> int:
        return self.labels.index(label)

    @cached_property
    def subconjugacy(self) -> List[List[bool]]:
        """sub[i][j]: some member of class i lies in the representative of class j."""
        n = len(self.classes)
        out = [[False] * n for _ in range(n)]
        for j in range(n):
            R = self.rep(j).members
            for k, S in enumerate(self.subgroups):
                if S.members <= R:
                    out[self.class_of[k]][j] = True
        return out

    def cyclic_classes(self) -> List[int]:
        return [c for c in range(len(self.classes)) if self.rep(c).is_cyclic()]


# -- standalone operations -------------------------------------------------


def normalizer(G: FiniteGroup, H: Subgroup, within: Optional[Iterable[int]] = None) -> Subgroup:
    pool = range(G.order) if within is None else within
    gens = H.generators
    return Subgroup(G, frozenset(g for g in pool if all(G.conj(g, x) in H.members for x in gens)))


def centralizer(G: FiniteGroup, H: Subgroup, within: Optional[Iterable[int]] = None) -> Subgroup:
    pool = range(G.order) if within is None else within
    gens = H.generators
    return Subgroup(G, frozenset(g for g in pool if all(G.mul(g, x) == G.mul(x, g) for x in gens)))


def center(G: FiniteGroup) -> Subgroup:
    return centralizer(G, G.whole)


def commutator_subgroup(G: FiniteGroup) -> Subgroup:
    comms = {G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))) for a in range(G.order) for b in G.generator_indices}
    # normal closure of generator commutators equals [G, G]
    N = G.closure(comms)
    while True:
        bigger = G.closure(set(N) | {G.conj(g, x) for g in G.generator_indices for x in N})
        if bigger == N:
            return Subgroup(G, N)
        N = bigger


@dataclass
class Quotient:
    group: FiniteGroup
    projection: List[int]
    cosets: List[frozenset]


def quotient(G: FiniteGroup, N: Subgroup) -> Quotient:
    """G/N as a permutation group on the left cosets of N."""
    if not N.is_normal_in(G.whole):
        raise StructuralError("quotient by a non-normal subgroup")
    coset_id = [-1] * G.order
    cosets = []
    for g in range(G.order):
        if coset_id[g] < 0:
            c = frozenset(G.mul(g, n) for n in N.members)
            for x in c:
                coset_id[x] = len(cosets)
            cosets.append(c)
    reps = [min(c) for c in cosets]
    k = len(cosets)

    def action(g: int) -> Perm:
        return tuple(coset_id[G.mul(g, r)] for r in reps)

    Q = FiniteGroup([action(g) for g in G.generator_indices], degree=k, max_degree=max(k, MAX_DEGREE),
                    name=f"{G.name}/N" if G.name else None)
    projection = [Q.index[action(g)] for g in range(G.order)]
    return Quotient(Q, projection, cosets)


def abelian_coordinates(G: FiniteGroup) -> Tuple[List[int], List[Tuple[int, ...]]]:
    """Invariant factors of G/[G,G] and each element's coordinates in them.

    The relation lattice of the generator images is read off a spanning tree
    of the Cayley graph of G/[G,G]; integral diagonalization then yields a
    basis in which element g has coordinates ``coords[g]`` (mod the factors).
    """
    from .lattice import smith_normal_form

    Gp = commutator_subgroup(G)
    gens = G.generator_indices
    k = len(gens)
    if k == 0:
        return [], [()] * G.order
    coset_of = {}
    cosets = []
    for g in range(G.order):
        if g not in coset_of:
            c = frozenset(G.mul(g, n) for n in Gp.members)
            for x in c:
                coset_of[x] = len(cosets)
            cosets.append(c)
    reps = [min(c) for c in cosets]
    vec = {0: (0,) * k}
    queue = deque([0])
    relations = []
    while queue:
        c = queue.popleft()
        for j, g in enumerate(gens):
            d = coset_of[G.mul(reps[c], g)]
            step = tuple(v + (1 if i == j else 0) for i, v in enumerate(vec[c]))
            if d not in vec:
                vec[d] = step
                queue.append(d)
            else:
                rel = tuple(a - b for a, b in zip(step, vec[d]))
                if any(rel):
                    relations.append(list(rel))
    diag, _, V = smith_normal_form(relations, ncols=k)
    diag = diag + [0] * (k - len(diag))
    keep = [i for i, d in enumerate(diag) if d != 1]
    if any(diag[i] == 0 for i in keep):
        raise StructuralError("abelianization came out infinite")
    factors = [diag[i] for i in keep]
    coords = []
    for g in range(G.order):
        x = vec[coset_of[g]]
        y = [sum(x[r] * V[r][c] for r in range(k)) for c in range(k)]
        coords.append(tuple(y[i] % diag[i] for i in keep))
    return factors, coords


def abelian_invariants(G: FiniteGroup) -> List[int]:
    return abelian_coordinates(G)[0]


def sylow_subgroup(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown deterministically one factor p at a time."""
    target = 1
    n = G.order
    while n % p == 0:
        n //= p
        target *= p
    P = G.trivial
    while P.order < target:
        N = normalizer(G, P)
        step = None
        for x in sorted(N.members - P.members):
            k, y = 1, x
            while y not in P.members:
                y = G.mul(y, x)
                k += 1
            if k % p == 0:
                step = G.power(x, k // p)
                break
        if step is None:
            raise StructuralError("Sylow growth stalled")  # impossible by Sylow's theorem
        P = P.join(step)
    return P


def p_subgroups(G: FiniteGroup, p: int) -> List[frozenset]:
    """Every p-subgroup of G, as unions of conjugates of a Sylow's subgroups."""
    P = sylow_subgroup(G, p)
    H, emb = P.as_group()
    local = enumerate_subgroups(H)
    out = set()
    seen_conj = set()
    for g in range(G.order):
        Pg = G.conjugate(g, P.members)
        if Pg in seen_conj:
            continue
        seen_conj.add(Pg)
        for m in local:
            out.add(G.conjugate(g, (emb[x] for x in m)))
    return sorted(out, key=lambda m: (len(m), tuple(sorted(m))))
