"""Bifree bisets between subgroups of a p-group S.

A basis element [A, alpha]_U^W (A <= U, alpha: A -> W injective) is the
(U, W)-biset (U x W)/{(a, alpha(a))}; it acts on functors as
Ind_A^U o Res_alpha.  Products follow the biset convention
X x_V Y, which acts as "X after Y".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import ConsistencyError, PreconditionError
from .fusion import FusionSystem
from .groups import FiniteGroup, Subgroup, normalizer, centralizer
from .lattice import rational_reconstruct

Key = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (sorted A, alpha values on sorted A)


def _group_key(S: FiniteGroup):
    cache = S.__dict__.get("_biset_cache")
    if cache is None:
        cache = {"canon": {}, "prod": {}, "marks": {}, "spaces": {}}
        S.__dict__["_biset_cache"] = cache
    return cache


class BisetSpace:
    """Canonical forms of basis elements of A(U, W) for subgroups U, W of S."""

    def __init__(self, S: FiniteGroup, U: frozenset, W: frozenset):
        self.S = S
        self.U = U
        self.W = W
        self.U_sorted = tuple(sorted(U))
        self.W_sorted = tuple(sorted(W))
        self._canon: Dict[Key, Key] = {}

    @classmethod
    def get(cls, S: FiniteGroup, U: Iterable[int], W: Iterable[int]) -> "BisetSpace":
        U, W = frozenset(U), frozenset(W)
        spaces = _group_key(S)["spaces"]
        sp = spaces.get((U, W))
        if sp is None:
            sp = cls(S, U, W)
            spaces[(U, W)] = sp
        return sp

    def canonical(self, A: Sequence[int], alpha: Sequence[int]) -> Key:
        key = (tuple(A), tuple(alpha))
        hit = self._canon.get(key)
        if hit is not None:
            return hit
        S = self.S
        amap = dict(zip(key[0], key[1]))
        conjs = {}
        for u in self.U_sorted:
            Au = tuple(sorted(S.conj(u, a) for a in key[0]))
            conjs.setdefault(Au, []).append(u)
        Amin = min(conjs)
        best = None
        for u in conjs[Amin]:
            ui = S.inv(u)
            base = [amap[S.conj(ui, x)] for x in Amin]
            for w in self.W_sorted:
                t = tuple(S.conj(w, y) for y in base)
                if best is None or t < best:
                    best = t
        out = (Amin, best)
        self._canon[key] = out
        self._canon[out] = out
        return out

    def basis_size(self, key: Key) -> int:
        """|[A, alpha]_U^W| = |U| |W| / |A|."""
        return len(self.U) * len(self.W) // len(key[0])


def injective_homs(S: FiniteGroup, A: Sequence[int], W: Iterable[int]) -> List[Tuple[int, ...]]:
    """All injective homomorphisms A -> W as value tables on sorted A."""
    A = tuple(sorted(A))
    W = sorted(W)
    gens = Subgroup(S, frozenset(A)).generators
    orders = [S.element_order(g) for g in gens]
    out = []
    cands = [[w for w in W if S.element_order(w) == o] for o in orders]
    for imgs in itertools.product(*cands):
        phi = {0: 0}
        queue = [0]
        ok = True
        while queue and ok:
            x = queue.pop()
            for g, ig in zip(gens, imgs):
                y = S.mul(x, g)
                v = S.mul(phi[x], ig)
                if y in phi:
                    if phi[y] != v:
                        ok = False
                        break
                else:
                    phi[y] = v
                    queue.append(y)
        if ok and len(set(phi.values())) == len(A):
            out.append(tuple(phi[a] for a in A))
    return sorted(set(out))


def full_basis(S: FiniteGroup, U: Iterable[int], W: Iterable[int]) -> List[Key]:
    """Every basis element of the bifree part of A(U, W)."""
    sp = BisetSpace.get(S, U, W)
    Ug, emb = Subgroup(S, sp.U).as_group()
    keys = set()
    for m in Ug.subgroups().subgroups:
        A = tuple(sorted(emb[x] for x in m.members))
        for t in injective_homs(S, A, sp.W):
            keys.add(sp.canonical(A, t))
    return sorted(keys, key=lambda k: (len(k[0]), k))


def fusion_basis(F: FusionSystem, U: Optional[Iterable[int]] = None, W: Optional[Iterable[int]] = None) -> List[Key]:
    """Basis elements [A, alpha] with alpha a morphism of F."""
    S = F.S
    U = frozenset(range(S.order)) if U is None else frozenset(U)
    W = frozenset(range(S.order)) if W is None else frozenset(W)
    sp = BisetSpace.get(S, U, W)
    keys = set()
    for H in F.subgroups.subgroups:
        if not H.members <= U:
            continue
        for t in F.hom_to_S(H):
            if set(t) <= W:
                keys.add(sp.canonical(H.sorted, t))
    return sorted(keys, key=lambda k: (len(k[0]), k))


# -- composition -------------------------------------------------------------


def compose_basis(S: FiniteGroup, U, V, W, x: Key, y: Key) -> Dict[Key, int]:
    """[A,alpha]_U^V x_V [B,beta]_V^W by the Mackey double coset formula."""
    U, V, W = frozenset(U), frozenset(V), frozenset(W)
    cache = _group_key(S)["prod"]
    ck = (U, V, W, x, y)
    hit = cache.get(ck)
    if hit is not None:
        return hit
    A, alpha = x
    B, beta = y
    amap = dict(zip(A, alpha))
    bmap = dict(zip(B, beta))
    aA = set(alpha)
    Bset = frozenset(B)
    sp = BisetSpace.get(S, U, W)
    out: Dict[Key, int] = {}
    seen = set()
    for t in sorted(V):
        if t in seen:
            continue
        dc = {S.mul(S.mul(a, t), b) for a in aA for b in Bset}
        seen |= dc
        ti = S.inv(t)
        C = tuple(a for a in A if S.mul(S.mul(ti, amap[a]), t) in Bset)
        gamma = tuple(bmap[S.mul(S.mul(ti, amap[a]), t)] for a in C)
        k = sp.canonical(C, gamma)
        out[k] = out.get(k, 0) + 1
    cache[ck] = out
    return out


class _TransitiveBiset:
    """Explicit (U, V)-set (U x V)/Delta(A, alpha) with action tables."""

    def __init__(self, S: FiniteGroup, U: frozenset, V: frozenset, key: Key):
        A, alpha = key
        self.U = sorted(U)
        self.V = sorted(V)
        pts: Dict[Tuple[int, int], int] = {}
        reps = []
        for u in self.U:
            for v in self.V:
                if (u, v) in pts:
                    continue
                idx = len(reps)
                reps.append((u, v))
                for a, al in zip(A, alpha):
                    pts[(S.mul(u, a), S.mul(v, al))] = idx
        self.points = pts
        self.size = len(reps)
        # u . [(x, y)] . v = [(u x, v^-1 y)]
        self.left = {u: [pts[(S.mul(u, x), y)] for x, y in reps] for u in self.U}
        self.right = {v: [pts[(x, S.mul(S.inv(v), y))] for x, y in reps] for v in self.V}


def compose_via_sets(S: FiniteGroup, U, V, W, x: Key, y: Key) -> Dict[Key, int]:
    """Oracle: build X x_V Y as a finite set and read off the orbit stabilizers."""
    U, V, W = frozenset(U), frozenset(V), frozenset(W)
    X = _TransitiveBiset(S, U, V, x)
    Y = _TransitiveBiset(S, V, W, y)
    Vs = sorted(V)
    # (x.v, y) ~ (x, v.y): a pair's class is its orbit under v -> (x.v, v^-1.y)
    cls_id: Dict[Tuple[int, int], int] = {}
    classes = []
    for a in range(X.size):
        for b in range(Y.size):
            if (a, b) in cls_id:
                continue
            idx = len(classes)
            members = []
            for v in Vs:
                pair = (X.right[v][a], Y.left[S.inv(v)][b])
                cls_id[pair] = idx
                members.append(pair)
            classes.append(members[0])
    seen = [False] * len(classes)
    sp = BisetSpace.get(S, U, W)
    out: Dict[Key, int] = {}
    Us, Ws = sorted(U), sorted(W)
    for c0 in range(len(classes)):
        if seen[c0]:
            continue
        a, b = classes[c0]
        stab = []
        for u in Us:
            for w in Ws:
                # u . (a, b) . w
                img = cls_id[(X.left[u][a], Y.right[w][b])]
                seen[img] = True
                if img == c0:
                    stab.append((u, w))
        # stabilizer {(u, w) : u z w = z} = {(c, gamma(c)^-1 ...)}; as a subgroup of
        # U x W acting by (u, w^-1) it is the twisted diagonal {(c, gamma(c))}
        pairs = sorted((u, S.inv(w)) for u, w in stab)
        C = tuple(u for u, _ in pairs)
        if len(set(C)) != len(C):
            raise ConsistencyError("composite is not left-free")
        k = sp.canonical(C, tuple(g for _, g in pairs))
        out[k] = out.get(k, 0) + 1
    return out


# -- elements ----------------------------------------------------------------


@dataclass
class BisetElement:
    """Rational combination of basis elements of A(U, W) (denominators prime to p)."""

    S: FiniteGroup
    U: frozenset
    W: frozenset
    coeffs: Dict[Key, Fraction]
    prime: int = 0

    @classmethod
    def basis(cls, S, U, W, key: Key, prime: int = 0, coeff=1) -> "BisetElement":
        sp = BisetSpace.get(S, U, W)
        return cls(S, frozenset(U), frozenset(W), {sp.canonical(*key): Fraction(coeff)}, prime)

    @classmethod
    def zero(cls, S, U, W, prime: int = 0) -> "BisetElement":
        return cls(S, frozenset(U), frozenset(W), {}, prime)

    @classmethod
    def identity(cls, S: FiniteGroup, prime: int = 0) -> "BisetElement":
        whole = tuple(range(S.order))
        return cls.basis(S, whole, whole, (whole, whole), prime)

    @property
    def space(self) -> BisetSpace:
        return BisetSpace.get(self.S, self.U, self.W)

    def _clean(self, d) -> "BisetElement":
        return BisetElement(self.S, self.U, self.W, {k: v for k, v in d.items() if v}, self.prime)

    def __add__(self, other: "BisetElement") -> "BisetElement":
        d = dict(self.coeffs)
        for k, v in other.coeffs.items():
            d[k] = d.get(k, 0) + v
        return self._clean(d)

    def __sub__(self, other: "BisetElement") -> "BisetElement":
        return self + other.scale(-1)

    def scale(self, q) -> "BisetElement":
        q = Fraction(q)
        return self._clean({k: v * q for k, v in self.coeffs.items()})

    def __mul__(self, other: "BisetElement") -> "BisetElement":
        """self x_V other (acts as self after other)."""
        if self.W != other.U:
            raise PreconditionError("biset composition over mismatched middle groups")
        d: Dict[Key, Fraction] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                for k, m in compose_basis(self.S, self.U, self.W, other.W, k1, k2).items():
                    d[k] = d.get(k, 0) + c1 * c2 * m
        return BisetElement(self.S, self.U, other.W, {k: v for k, v in d.items() if v},
                            self.prime or other.prime)

    def __eq__(self, other):
        return isinstance(other, BisetElement) and (self.U, self.W) == (other.U, other.W) and \
            self.coeffs == other.coeffs

    def size(self) -> Fraction:
        sp = self.space
        return sum((c * sp.basis_size(k) for k, c in self.coeffs.items()), Fraction(0))

    def is_actual(self) -> bool:
        return all(c >= 0 and c.denominator == 1 for c in self.coeffs.values())

    def is_p_local(self, p: Optional[int] = None) -> bool:
        p = p or self.prime
        return all(c.denominator % p for c in self.coeffs.values())

    def sorted_items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (-len(kv[0][0]), kv[0]))

    def to_json(self, F: Optional[FusionSystem] = None) -> List[dict]:
        out = []
        for (A, alpha), c in self.sorted_items():
            entry = {"Q": list(A), "psi": list(alpha), "coeff": str(c)}
            if F is not None:
                entry["Q_class"] = F.subgroups.labels[F.subgroups.class_index(frozenset(A))]
            out.append(entry)
        return out

    def coefficient_sums(self) -> Dict[Tuple[int, ...], Fraction]:
        """Sum of coefficients per subgroup class (canonical A is a class minimum)."""
        out: Dict[Tuple[int, ...], Fraction] = {}
        for (A, _), c in self.coeffs.items():
            out[A] = out.get(A, 0) + c
        return out


def restriction_biset(S: FiniteGroup, P: Sequence[int], phi: Sequence[int]) -> BisetElement:
    """[P, phi]_P^S, acting as Res_phi from S to P."""
    P = tuple(sorted(P))
    return BisetElement.basis(S, P, range(S.order), (P, tuple(phi)))


def induction_biset(S: FiniteGroup, P: Sequence[int], phi: Sequence[int]) -> BisetElement:
    """[phi(P), phi^-1]_S^P, acting as Ind_{phi P}^S o c_phi from P to S."""
    P = tuple(sorted(P))
    inv = sorted(zip(phi, P))
    return BisetElement.basis(S, range(S.order), P, (tuple(a for a, _ in inv), tuple(b for _, b in inv)))


# -- constructions from a fusion system --------------------------------------


def group_as_biset(F: FusionSystem) -> BisetElement:
    """G as an (S, S)-biset: one orbit [S ∩ gSg^-1, s -> g^-1 s g] per double coset SgS."""
    G = F.G
    S_in_G = F.embed
    loc = F.local
    whole = tuple(range(F.S.order))
    out = BisetElement.zero(F.S, whole, whole, F.prime)
    seen = set()
    d: Dict[Key, Fraction] = {}
    sp = BisetSpace.get(F.S, whole, whole)
    for g in range(G.order):
        if g in seen:
            continue
        seen.update(G.mul(G.mul(s, g), t) for s in S_in_G for t in S_in_G)
        gi = G.inv(g)
        A = []
        img = []
        for i, s in enumerate(S_in_G):
            y = loc.get(G.conj(gi, s))
            if y is not None:
                A.append(i)
                img.append(y)
        k = sp.canonical(tuple(A), tuple(img))
        d[k] = d.get(k, 0) + 1
    out.coeffs = d
    return out


@dataclass
class CharacteristicVerdict:
    characteristic: bool
    support_ok: bool
    left_stable: bool
    right_stable: bool
    size_ratio: Fraction
    failures: List[dict] = field(default_factory=list)

    def to_json(self):
        return {"characteristic": self.characteristic, "support_in_F": self.support_ok,
                "left_stable": self.left_stable, "right_stable": self.right_stable,
                "size_over_S": str(self.size_ratio), "failures": self.failures}


def stability_tests(F: FusionSystem):
    """(P, phi) up to S-conjugacy of P and post-composition with S-conjugation."""
    S = F.S
    out = []
    for c in range(F.subgroups.n_classes):
        P = F.subgroups.rep(c)
        seen = set()
        for t in F.hom_to_S(P):
            canon = min(tuple(S.conj(b, y) for y in t) for b in range(S.order))
            if canon in seen:
                continue
            seen.add(canon)
            out.append((P.sorted, t))
    return out


def is_left_stable(X: BisetElement, F: FusionSystem, tests=None) -> Tuple[bool, List[dict]]:
    bad = []
    for P, t in tests or stability_tests(F):
        if tuple(t) == tuple(P):
            continue
        if restriction_biset(F.S, P, t) * X != restriction_biset(F.S, P, P) * X:
            bad.append({"side": "left", "P": list(P), "phi": list(t)})
    return not bad, bad


def is_right_stable(X: BisetElement, F: FusionSystem, tests=None) -> Tuple[bool, List[dict]]:
    bad = []
    for P, t in tests or stability_tests(F):
        if tuple(t) == tuple(P):
            continue
        if X * induction_biset(F.S, P, t) != X * induction_biset(F.S, P, P):
            bad.append({"side": "right", "P": list(P), "phi": list(t)})
    return not bad, bad


def is_characteristic(X: BisetElement, F: FusionSystem) -> CharacteristicVerdict:
    S, p = F.S, F.prime
    failures = []
    support_ok = True
    for (A, alpha), c in X.coeffs.items():
        if tuple(alpha) not in F.hom_to_S(frozenset(A)):
            support_ok = False
            failures.append({"support": [list(A), list(alpha)]})
    tests = stability_tests(F)
    left, bl = is_left_stable(X, F, tests)
    right, br = is_right_stable(X, F, tests)
    failures += bl + br
    ratio = X.size() / S.order
    unit = ratio != 0 and ratio.numerator % p != 0 and ratio.denominator % p != 0
    if not unit:
        failures.append({"size_over_S": str(ratio)})
    return CharacteristicVerdict(support_ok and left and right and unit, support_ok, left, right, ratio, failures)


# -- the characteristic idempotent --------------------------------------------


class _ModAlgebra:
    """A(S,S) restricted to F-morphism orbits with coefficients in Z/mod."""

    def __init__(self, S: FiniteGroup):
        self.S = S
        self.whole = frozenset(range(S.order))

    def mul(self, x: Dict[Key, int], y: Dict[Key, int], mod: int) -> Dict[Key, int]:
        d: Dict[Key, int] = {}
        for k1, c1 in x.items():
            for k2, c2 in y.items():
                c = c1 * c2
                for k, m in compose_basis(self.S, self.whole, self.whole, self.whole, k1, k2).items():
                    d[k] = (d.get(k, 0) + c * m) % mod
        return {k: v for k, v in d.items() if v}


def _poly_mulmod(a: List[int], b: List[int], mu: List[int], p: int) -> List[int]:
    d = len(mu) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for i in range(len(prod) - 1, d - 1, -1):
        c = prod[i]
        if c:
            for j in range(d + 1):
                prod[i - d + j] = (prod[i - d + j] - c * mu[j]) % p
    out = prod[:d] + [0] * max(0, d - len(prod))
    return out


def _poly_powmod(e: int, mu: List[int], p: int) -> List[int]:
    d = len(mu) - 1
    result = [1] + [0] * (d - 1)
    base = _poly_mulmod([0, 1], [1], mu, p) if d > 1 else _poly_mulmod([0, 1], [1], mu, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mu, p)
        base = _poly_mulmod(base, base, mu, p)
        e >>= 1
    return result


def _minimal_polynomial_mod_p(powers_fn, p: int, limit: int = 400):
    """Monic minimal polynomial of Y over F_p together with the powers Y^0..Y^d mod p."""
    powers = []
    keys: Dict[Key, int] = {}
    rows: List[Tuple[List[int], List[int]]] = []  # reduced rows with their combination of powers
    k = 0
    while k <= limit:
        v = powers_fn(k)
        powers.append(v)
        for key in v:
            if key not in keys:
                keys[key] = len(keys)
        vec = [0] * len(keys)
        for key, c in v.items():
            vec[keys[key]] = c % p
        comb = [0] * (k + 1)
        comb[k] = 1
        for rv, rc, piv in rows:
            rv2 = rv + [0] * (len(vec) - len(rv))
            f = vec[piv]
            if f:
                vec = [(a - f * b) % p for a, b in zip(vec, rv2)]
                comb = [(a - f * b) % p for a, b in zip(comb, rc + [0] * (len(comb) - len(rc)))]
        piv = next((i for i, a in enumerate(vec) if a), None)
        if piv is None:
            return comb, powers  # comb is the monic relation sum comb[i] Y^i = 0
        inv = pow(vec[piv], p - 2, p)
        rows.append(([a * inv % p for a in vec], [a * inv % p for a in comb], piv))
        k += 1
    raise ConsistencyError("minimal polynomial degree exceeds the search limit")


def characteristic_idempotent(F: FusionSystem, X: Optional[BisetElement] = None,
                              max_precision_bits: int = 4096) -> BisetElement:
    """omega_F from a characteristic element by a p-adic idempotent lift."""
    if X is None:
        if not F.is_sylow:
            raise PreconditionError("S is not Sylow in G: no characteristic element available from the group")
        if not F.saturated:
            raise PreconditionError("fusion system is not saturated")
        X = group_as_biset(F)
    S, p = F.S, F.prime
    lam = X.size() / S.order
    if lam.numerator % p == 0 or lam.denominator % p == 0:
        raise PreconditionError("|X|/|S| is not a p-local unit")
    alg = _ModAlgebra(S)
    ident = {next(iter(BisetElement.identity(S).coeffs)): 1}

    def as_mod(el: BisetElement, mod: int) -> Dict[Key, int]:
        out = {}
        for k, c in el.coeffs.items():
            v = c.numerator * pow(c.denominator, -1, mod) % mod
            if v:
                out[k] = v
        return out

    Y = X.scale(1 / lam)
    bits = 64
    while True:
        omega = _lift_idempotent(alg, Y, ident, p, bits)
        if omega is not None:
            return omega
        bits *= 2
        if bits > max_precision_bits:
            raise ConsistencyError("idempotent lift did not stabilize to a rational idempotent")


def _lift_idempotent(alg: "_ModAlgebra", Y: BisetElement, ident, p: int, bits: int) -> Optional[BisetElement]:
    """Idempotent of Z/p^N[Y] lifting x^M mod the minimal polynomial mod p, then reconstructed.

    All powers are taken modulo p^N so the iteration never leaves the
    commutative subalgebra generated by Y.
    """
    N = 1
    while (p ** N).bit_length() < bits:
        N += 1
    mod = p ** N
    Ym = {}
    for k, c in Y.coeffs.items():
        v = c.numerator * pow(c.denominator, -1, mod) % mod
        if v:
            Ym[k] = v
    cache = {0: ident}

    def power(k):
        if k not in cache:
            cache[k] = alg.mul(power(k - 1), Ym, mod)
        return cache[k]

    mu, _ = _minimal_polynomial_mod_p(lambda k: {a: b % p for a, b in power(k).items() if b % p}, p)
    d = len(mu) - 1
    c = 0
    while p ** c < d:
        c += 1
    L = 1
    for f in range(1, d + 1):
        q = p ** f - 1
        L = L * q // gcd(L, q)
    coeffs = _poly_powmod(p ** c * L, mu, p) if d > 0 else [0]
    e: Dict[Key, int] = {}
    for i, ci in enumerate(coeffs):
        if ci:
            for k, v in power(i).items():
                e[k] = (e.get(k, 0) + ci * v) % mod
    e = {k: v for k, v in e.items() if v}
    prec = 1
    while prec < N:
        prec *= 2
        e2 = alg.mul(e, e, mod)
        e3 = alg.mul(e2, e, mod)
        e = {k: (3 * e2.get(k, 0) - 2 * e3.get(k, 0)) % mod for k in set(e2) | set(e3)}
        e = {k: v for k, v in e.items() if v}
    recon = {}
    for k, v in e.items():
        r = rational_reconstruct(v, mod)
        if r is None:
            return None
        recon[k] = r
    omega = BisetElement(alg.S, alg.whole, alg.whole, recon, p)
    return omega if omega * omega == omega else None


def check_idempotent(omega: BisetElement, F: FusionSystem) -> dict:
    sums = omega.coefficient_sums()
    top = tuple(range(F.S.order))
    sums_ok = True
    for H in F.subgroups.reps():
        expected = 1 if H.order == F.S.order else 0
        if sums.get(H.sorted, 0) != expected:
            sums_ok = False
    # every canonical A is a class minimum, which is what reps() returns
    if any(A not in {H.sorted for H in F.subgroups.reps()} for A in sums):
        sums_ok = False
    ver = is_characteristic(omega, F)
    return {
        "idempotent": omega * omega == omega,
        "characteristic": ver.characteristic,
        "support_in_F": ver.support_ok,
        "left_stable": ver.left_stable,
        "right_stable": ver.right_stable,
        "size_over_S": str(ver.size_ratio),
        "p_local": omega.is_p_local(F.prime),
        "coefficient_sums": sums_ok,
        "top_sum": str(sums.get(top, 0)),
    }


# -- the minimal characteristic biset ------------------------------------------


def mark(S: FiniteGroup, d: Key, e: Key) -> int:
    """|[Q, psi]^{Delta(P, phi)}| for d = (P, phi), e = (Q, psi), both in A(S, S)."""
    cache = _group_key(S)["marks"]
    hit = cache.get((d, e))
    if hit is not None:
        return hit
    P, phi = d
    Q, psi = e
    if len(P) > len(Q) or len(Q) % len(P):
        cache[(d, e)] = 0
        return 0
    Qs = frozenset(Q)
    psimap = dict(zip(Q, psi))
    gens = Subgroup(S, frozenset(P)).generators
    phimap = dict(zip(P, phi))
    phig = [phimap[x] for x in gens]
    cen = len(centralizer(S, Subgroup(S, frozenset(phi))).members)
    count = 0
    for a in range(S.order):
        ai = S.inv(a)
        conj = [S.conj(ai, x) for x in gens]
        if not all(y in Qs for y in conj):
            continue
        target = [psimap[y] for y in conj]
        if any(all(S.conj(S.inv(b), f) == t for f, t in zip(phig, target)) for b in range(S.order)):
            count += cen
    val, r = divmod(count, len(Q))
    if r:
        raise ConsistencyError("mark count not divisible by |Q|")
    cache[(d, e)] = val
    return val


def minimal_characteristic_biset(F: FusionSystem) -> BisetElement:
    """Omega_F by greedy mark stabilization from [S, id] downward."""
    S, p = F.S, F.prime
    basis = fusion_basis(F)
    whole = tuple(range(S.order))
    by_fclass: Dict[int, List[Key]] = {}
    for k in basis:
        by_fclass.setdefault(F.fusion_class_of[F.subgroups.class_index(frozenset(k[0]))], []).append(k)
    order = sorted(by_fclass, key=lambda f: -F.fusion_rep(f).order)
    chosen: Dict[Key, int] = {}
    for f in order:
        ds = by_fclass[f]
        current = {d: sum(m * mark(S, d, e) for e, m in chosen.items()) for d in ds}
        weight = {d: mark(S, d, d) for d in ds}
        lo = max(current.values())
        if len(ds[0][0]) == S.order:
            lo = max(lo, 1)
        M = lo
        limit = lo + _lcm_list(weight.values()) + 1
        while M <= limit and not all((M - current[d]) % weight[d] == 0 for d in ds):
            M += 1
        if M > limit:
            raise ConsistencyError("no common mark value satisfies the stabilization congruences")
        for d in ds:
            x = (M - current[d]) // weight[d]
            if x:
                chosen[d] = x
    sp = BisetSpace.get(S, whole, whole)
    out = BisetElement(S, frozenset(whole), frozenset(whole), {k: Fraction(v) for k, v in chosen.items()}, p)
    ver = is_characteristic(out, F)
    if not ver.characteristic:
        raise ConsistencyError(f"stabilized biset is not characteristic: {ver.failures[:3]}")
    return out


def _lcm_list(xs) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out


def coefficientwise_leq(a: BisetElement, b: BisetElement) -> bool:
    return all(c <= b.coeffs.get(k, 0) for k, c in a.coeffs.items())


# -- actions on functors ---------------------------------------------------------


def act_on_character(X: BisetElement, chi):
    """sum_c c * Ind_A^S Res_alpha chi for X in A(S, S)."""
    from .characters import ClassFunction, induce, local_group

    S = X.S
    acc = ClassFunction(S, [0] * len(S.element_classes), chi.n)
    for (A, alpha), c in X.sorted_items():
        H = Subgroup(S, frozenset(A))
        Hg, emb = local_group(H)
        amap = dict(zip(A, alpha))
        res = ClassFunction(Hg, [chi(amap[emb[cl[0]]]) for cl in Hg.element_classes], chi.n)
        acc = acc + induce(res, H, chi.n).scale(c)
    return acc


def _double_coset_reps(S: FiniteGroup, left: frozenset, right: frozenset) -> List[int]:
    seen, reps = set(), []
    for x in range(S.order):
        if x in seen:
            continue
        reps.append(x)
        seen.update(S.mul(S.mul(a, x), b) for a in left for b in right)
    return reps


def act_on_superclass(X: BisetElement, f: Sequence[Fraction]) -> List[Fraction]:
    """Biset action on functions over S-classes of subgroups:
    ([Q, psi] f)(L) = sum_{x in Q\\S/L} f(psi(Q ∩ xLx^-1))."""
    S = X.S
    cls = S.subgroups()
    out = []
    for c in range(cls.n_classes):
        L = cls.rep(c).members
        total = Fraction(0)
        for (A, alpha), coeff in X.coeffs.items():
            Q = frozenset(A)
            amap = dict(zip(A, alpha))
            for x in _double_coset_reps(S, Q, L):
                K = Q & S.conjugate(x, L)
                total += coeff * f[cls.class_index(frozenset(amap[k] for k in K))]
        out.append(total)
    return out


def act_on_burnside(X: BisetElement, v: Sequence[Fraction]) -> List[Fraction]:
    """Biset action on Burnside elements sum v_L [S/L] over S-classes:
    [Q, psi] S/L = sum_{x in psi(Q)\\S/L} S/psi^-1(psi(Q) ∩ xLx^-1)."""
    S = X.S
    cls = S.subgroups()
    out = [Fraction(0)] * cls.n_classes
    for c in range(cls.n_classes):
        if not v[c]:
            continue
        L = cls.rep(c).members
        for (A, alpha), coeff in X.coeffs.items():
            img = frozenset(alpha)
            inv = dict(zip(alpha, A))
            for x in _double_coset_reps(S, img, L):
                K = img & S.conjugate(x, L)
                out[cls.class_index(frozenset(inv[k] for k in K))] += coeff * v[c]
    return out


def burnside_marks(S: FiniteGroup, v: Sequence[Fraction]) -> List[Fraction]:
    """|X^H| for X = sum v_L S/L, indexed by S-classes of H."""
    cls = S.subgroups()
    out = []
    for h in range(cls.n_classes):
        H = cls.rep(h).members
        tot = Fraction(0)
        for c in range(cls.n_classes):
            if v[c]:
                L = cls.rep(c).members
                fixed = sum(1 for x in range(S.order) if all(S.conj(S.inv(x), y) in L for y in H))
                tot += v[c] * Fraction(fixed, len(L))
        out.append(tot)
    return out


def burnside_is_stable(S_F: FusionSystem, v: Sequence[Fraction]) -> bool:
    m = burnside_marks(S_F.S, v)
    return all(len({m[c] for c in fc}) == 1 for fc in S_F.fusion_classes)


def transfer(omega: BisetElement, element, kind: str):
    """Apply omega_F to a class function, a super class function or a Burnside vector."""
    if kind == "character":
        return act_on_character(omega, element)
    if kind == "superclass":
        return act_on_superclass(omega, [Fraction(x) for x in element])
    if kind == "burnside":
        return act_on_burnside(omega, [Fraction(x) for x in element])
    raise PreconditionError(f"unknown functor {kind!r}")
