"""Fusion systems F_S(G) induced by an ambient group.

Everything downstream works in the *local* indexing of S (``F.S`` is a
standalone FiniteGroup); ``F.embed`` maps local indices back into G.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from .errors import PreconditionError, StructuralError
from .groups import (FiniteGroup, Subgroup, SubgroupClassification, centralizer, normalizer,
                     prime_power, sylow_subgroup)
from .presets import FUSION_PRESETS, default_prime, group_preset, load_group


@dataclass(frozen=True)
class FusionMorphism:
    """Injective map P -> Q given by its value table on sorted(P).

    Equality is by table; ``witness`` (an element of G) is diagnostic only.
    """

    source: Tuple[int, ...]
    table: Tuple[int, ...]
    target: Tuple[int, ...]
    witness: int = -1

    def __eq__(self, other):
        return isinstance(other, FusionMorphism) and (self.source, self.table) == (other.source, other.table)

    def __hash__(self):
        return hash((self.source, self.table))

    @cached_property
    def as_dict(self) -> Dict[int, int]:
        return dict(zip(self.source, self.table))

    def __call__(self, x: int) -> int:
        return self.as_dict[x]

    @property
    def image(self) -> frozenset:
        return frozenset(self.table)

    def restrict(self, sub) -> "FusionMorphism":
        src = tuple(sorted(sub))
        d = self.as_dict
        return FusionMorphism(src, tuple(d[x] for x in src), self.target, self.witness)


@dataclass
class SaturationVerdict:
    saturated: bool
    axiom: Optional[str] = None
    witness: Optional[dict] = None

    def to_json(self):
        return {"saturated": self.saturated, "axiom": self.axiom, "witness": self.witness}


class FusionSystem:
    """F_S(G) for a p-subgroup S of G (S need not be Sylow)."""

    def __init__(self, G: FiniteGroup, S: Subgroup, p: int, name: Optional[str] = None):
        pp = prime_power(S.order)
        if S.order > 1 and (pp is None or pp[0] != p):
            raise StructuralError(f"S has order {S.order}, not a power of {p}")
        self.G = G
        self.prime = p
        self.name = name or G.name
        self.S, self.embed = S.as_group(name=f"S<{G.name}>" if G.name else None)
        self.local = {g: i for i, g in enumerate(self.embed)}
        self.S_in_G = S
        n = self.S.order
        maps: Dict[Tuple[int, ...], int] = {}
        for g in range(G.order):
            m = tuple(self.local.get(G.conj(g, self.embed[x]), -1) for x in range(n))
            maps.setdefault(m, g)
        self._maps = maps
        self.subgroups: SubgroupClassification = self.S.subgroups()
        self._hom_cache: Dict[frozenset, Dict[Tuple[int, ...], int]] = {}

    def __repr__(self):
        return f"FusionSystem({self.name}, |S|={self.S.order}, p={self.prime})"

    @property
    def is_sylow(self) -> bool:
        n, q = self.G.order, 1
        while n % self.prime == 0:
            n //= self.prime
            q *= self.prime
        return self.S.order == q

    @property
    def is_trivial_fusion(self) -> bool:
        return all(len(self.fusion_classes[i]) == 1 for i in range(len(self.fusion_classes))) and \
            all(len(c) == len(self.S.element_classes[self.S.class_of[min(c)]]) for c in self.element_classes)

    # -- morphisms ----------------------------------------------------------

    def hom_to_S(self, P) -> Dict[Tuple[int, ...], int]:
        """Distinct tables of F(P, S), each with one witness in G."""
        members = frozenset(P.members if isinstance(P, Subgroup) else P)
        cached = self._hom_cache.get(members)
        if cached is None:
            src = sorted(members)
            cached = {}
            for m, g in self._maps.items():
                t = tuple(m[x] for x in src)
                if -1 not in t:
                    cached.setdefault(t, g)
            cached = dict(sorted(cached.items()))
            self._hom_cache[members] = cached
        return cached

    def hom(self, P, Q=None) -> List[FusionMorphism]:
        Pm = frozenset(P.members if isinstance(P, Subgroup) else P)
        Qm = frozenset(range(self.S.order)) if Q is None else frozenset(Q.members if isinstance(Q, Subgroup) else Q)
        src = tuple(sorted(Pm))
        tgt = tuple(sorted(Qm))
        return [FusionMorphism(src, t, tgt, g) for t, g in self.hom_to_S(Pm).items() if set(t) <= Qm]

    def aut(self, P) -> Tuple[FiniteGroup, FiniteGroup]:
        """(Aut_F(P), Aut_S(P)) as permutation groups on the positions of sorted(P)."""
        Pm = frozenset(P.members if isinstance(P, Subgroup) else P)
        src = sorted(Pm)
        pos = {x: i for i, x in enumerate(src)}
        autos = [tuple(pos[y] for y in t) for t in self.hom_to_S(Pm) if frozenset(t) == Pm]
        S = self.S
        inner = {tuple(pos[S.conj(s, x)] for x in src)
                 for s in normalizer(S, Subgroup(S, Pm)).members}
        deg = len(src)
        return (FiniteGroup(autos, degree=deg, name="Aut_F"), FiniteGroup(sorted(inner), degree=deg, name="Aut_S"))

    # -- classes ------------------------------------------------------------

    @cached_property
    def fusion_classes(self) -> List[List[int]]:
        """Partition of the S-classes of subgroups into F-classes."""
        cls = self.subgroups
        parent = list(range(cls.n_classes))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for c in range(cls.n_classes):
            for t in self.hom_to_S(cls.rep(c)):
                d = cls.class_index(frozenset(t))
                a, b = find(c), find(d)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: Dict[int, List[int]] = {}
        for c in range(cls.n_classes):
            groups.setdefault(find(c), []).append(c)
        return sorted(groups.values())

    @cached_property
    def fusion_class_of(self) -> List[int]:
        out = [0] * self.subgroups.n_classes
        for i, fc in enumerate(self.fusion_classes):
            for c in fc:
                out[c] = i
        return out

    @property
    def fusion_labels(self) -> List[str]:
        return [self.subgroups.labels[fc[0]] for fc in self.fusion_classes]

    def fusion_rep(self, i: int) -> Subgroup:
        return self.subgroups.rep(self.fusion_classes[i][0])

    @cached_property
    def element_classes(self) -> List[Tuple[int, ...]]:
        n = self.S.order
        parent = list(range(n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for m in self._maps:
            for x, y in enumerate(m):
                if y >= 0:
                    a, b = find(x), find(y)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        groups: Dict[int, List[int]] = {}
        for x in range(n):
            groups.setdefault(find(x), []).append(x)
        return sorted(tuple(v) for v in groups.values())

    @cached_property
    def element_class_of(self) -> List[int]:
        out = [0] * self.S.order
        for i, c in enumerate(self.element_classes):
            for x in c:
                out[x] = i
        return out

    # -- saturation ---------------------------------------------------------

    def _fully(self):
        S = self.S
        norm, cent = {}, {}
        for H in self.subgroups.subgroups:
            norm[H.members] = normalizer(S, H).order
            cent[H.members] = centralizer(S, H).order
        fclass_members: Dict[int, List[frozenset]] = {}
        for i, H in enumerate(self.subgroups.subgroups):
            f = self.fusion_class_of[self.subgroups.class_of[i]]
            fclass_members.setdefault(f, []).append(H.members)
        max_n = {f: max(norm[m] for m in ms) for f, ms in fclass_members.items()}
        max_c = {f: max(cent[m] for m in ms) for f, ms in fclass_members.items()}
        return norm, cent, max_n, max_c

    def is_saturated(self) -> SaturationVerdict:
        S, p = self.S, self.prime
        cls = self.subgroups
        norm, cent, max_n, max_c = self._fully()
        fc_of = lambda m: self.fusion_class_of[cls.class_index(m)]
        for H in cls.subgroups:
            f = fc_of(H.members)
            if norm[H.members] != max_n[f]:
                continue
            label = cls.labels[cls.class_index(H)]
            if cent[H.members] != max_c[f]:
                return SaturationVerdict(False, "sylow", {"subgroup": label, "members": list(H.sorted),
                                                          "reason": "fully normalized but not fully centralized"})
            autF, autS = self.aut(H)
            ppart = 1
            n = autF.order
            while n % p == 0:
                n //= p
                ppart *= p
            if autS.order != ppart:
                return SaturationVerdict(False, "sylow", {
                    "subgroup": label, "members": list(H.sorted), "aut_F_order": autF.order,
                    "aut_S_order": autS.order,
                    "reason": "Aut_S(P) is not a Sylow p-subgroup of Aut_F(P)"})
        for H in cls.subgroups:
            NH = normalizer(S, H)
            for t in self.hom_to_S(H):
                img = frozenset(t)
                if cent[img] != max_c[fc_of(img)]:
                    continue
                phi = dict(zip(H.sorted, t))
                Nimg = normalizer(S, Subgroup(S, img))
                gens = H.generators
                targets = {}
                for y in Nimg.members:
                    key = tuple(S.conj(y, phi[a]) for a in gens)
                    targets.setdefault(key, y)
                N_phi = [x for x in sorted(NH.members)
                         if tuple(phi[S.conj(x, a)] for a in gens) in targets]
                N_phi_sub = S.closure(N_phi)
                if len(N_phi_sub) != len(N_phi):
                    raise StructuralError("N_phi is not a subgroup")
                src = sorted(N_phi_sub)
                ok = any(all(ext[src.index(a)] == phi[a] for a in H.sorted) for ext in self.hom_to_S(N_phi_sub))
                if not ok:
                    return SaturationVerdict(False, "extension", {
                        "subgroup": cls.labels[cls.class_index(H)], "members": list(H.sorted),
                        "morphism": list(t), "N_phi": src,
                        "reason": "phi does not extend to N_phi"})
        return SaturationVerdict(True)

    @cached_property
    def saturated(self) -> bool:
        return self.is_saturated().saturated

    def to_json(self) -> dict:
        cls = self.subgroups
        return {
            "ambient": self.G.name, "ambient_order": self.G.order, "prime": self.prime,
            "S_order": self.S.order, "S_is_sylow": self.is_sylow,
            "subgroup_classes": [{"label": l, "order": cls.class_order(i)} for i, l in enumerate(cls.labels)],
            "fusion_classes": [[cls.labels[c] for c in fc] for fc in self.fusion_classes],
            "element_classes": [list(c) for c in self.element_classes],
        }


def build_fusion_system(G: FiniteGroup, S: Subgroup, p: int, name: Optional[str] = None) -> FusionSystem:
    return FusionSystem(G, S, p, name=name)


def trivial_fusion(S: FiniteGroup, p: Optional[int] = None) -> FusionSystem:
    p = p or default_prime(S)
    if p is None:
        raise StructuralError("trivial fusion needs a p-group")
    return FusionSystem(S, S.whole, p, name=S.name)


def select_subgroup(G: FiniteGroup, selector: str, prime: Optional[int] = None) -> Tuple[Subgroup, int]:
    """Resolve ``auto:p``, ``label:<class label>`` or ``gens:[[...],...]``."""
    if selector.startswith("auto"):
        p = int(selector.split(":")[1]) if ":" in selector else (prime or default_prime(G))
        if p is None:
            raise PreconditionError("auto selector needs a prime for a non p-group")
        return sylow_subgroup(G, p), p
    if selector.startswith("label:"):
        cls = G.subgroups()
        H = cls.rep(cls.label_index(selector[len("label:"):]))
    elif selector.startswith("gens:"):
        gens = json.loads(selector[len("gens:"):])
        H = G.subgroup([G.index[tuple(g)] for g in gens], generators=True)
    else:
        raise PreconditionError(f"unknown subgroup selector {selector!r}")
    pp = prime_power(H.order)
    p = prime or (pp[0] if pp else None)
    if p is None:
        raise StructuralError("selected subgroup is not a p-group")
    return H, p


def fusion_from_spec(spec: str, prime: Optional[int] = None, sylow: Optional[str] = None) -> FusionSystem:
    """``preset:<fusion preset>`` (optionally ``@p``) or a group source plus selector."""
    body = spec[len("preset:"):] if spec.startswith("preset:") else spec
    at = None
    if "@" in body:
        body, at = body.split("@", 1)
        prime = prime or int(at)
    if sylow is None and body in FUSION_PRESETS and (at is None or FUSION_PRESETS.get(f"{body}@{at}")):
        gname, sylow = FUSION_PRESETS[f"{body}@{at}" if at else body]
        G = group_preset(gname)
    else:
        G = load_group(spec.split("@", 1)[0])
    sel = sylow or (f"auto:{prime}" if prime else "auto")
    S, p = select_subgroup(G, sel, prime)
    return FusionSystem(G, S, p, name=body)
