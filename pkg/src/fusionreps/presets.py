"""Named groups and the JSON group format.

JSON group format::

    {"name": "A4", "degree": 4, "generators": [[1, 2, 0, 3], [1, 0, 3, 2]]}

with 0-based image arrays.
"""

from __future__ import annotations

import itertools
import json
import re
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

from .errors import PreconditionError
from .groups import FiniteGroup, Perm, from_cycles, prime_power


def cyclic(n: int) -> List[Perm]:
    return [from_cycles(n, tuple(range(n)))] if n > 1 else [tuple(range(1))]


def affine(p: int, unit: int) -> List[Perm]:
    """x -> x + 1 and x -> unit * x on Z/p."""
    return [tuple((x + 1) % p for x in range(p)), tuple(unit * x % p for x in range(p))]


def quaternion() -> List[Perm]:
    # units ±1, ±i, ±j, ±k encoded as (sign, axis) with axis 0..3 = 1, i, j, k
    table = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    units = [(s, a) for a in range(4) for s in (1, -1)]
    pos = {u: i for i, u in enumerate(units)}

    def left(u):
        out = []
        for v in units:
            s, a = table[(u[1], v[1])]
            out.append(pos[(s * u[0] * v[0], a)])
        return tuple(out)

    return [left((1, 1)), left((1, 2))]


def semidihedral16() -> List[Perm]:
    return [tuple((x + 1) % 8 for x in range(8)), tuple(3 * x % 8 for x in range(8))]


def _matrix_action(q: int, n: int, mats, projective: bool) -> List[Perm]:
    vecs = [v for v in itertools.product(range(q), repeat=n) if any(v)]
    if projective:
        vecs = [v for v in vecs if v[next(i for i, x in enumerate(v) if x)] == 1]
    pos = {v: i for i, v in enumerate(vecs)}

    def norm(v):
        if not projective:
            return v
        lead = v[next(i for i, x in enumerate(v) if x)]
        inv = pow(lead, q - 2, q)
        return tuple(x * inv % q for x in v)

    out = []
    for M in mats:
        out.append(tuple(pos[norm(tuple(sum(M[i][j] * v[j] for j in range(n)) % q for i in range(n)))]
                         for v in vecs))
    return out


def sl2_3() -> List[Perm]:
    return _matrix_action(3, 2, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]], projective=False)


def pgl3_3() -> List[Perm]:
    mats = []
    for i, j in [(0, 1), (1, 0), (1, 2), (2, 1)]:
        M = [[int(r == c) for c in range(3)] for r in range(3)]
        M[i][j] = 1
        mats.append(M)
    return _matrix_action(3, 3, mats, projective=True)


def direct_product(*factors: List[Perm]) -> List[Perm]:
    degs = [len(f[0]) for f in factors]
    total = sum(degs)
    out, shift = [], 0
    for gens, d in zip(factors, degs):
        for g in gens:
            out.append(tuple(list(range(shift)) + [x + shift for x in g] + list(range(shift + d, total))))
        shift += d
    return out


GROUP_PRESETS: Dict[str, Callable[[], List[Perm]]] = {
    "C2xC2": lambda: direct_product(cyclic(2), cyclic(2)),
    "C3xC3": lambda: direct_product(cyclic(3), cyclic(3)),
    "C4xC2": lambda: direct_product(cyclic(4), cyclic(2)),
    "D8": lambda: [from_cycles(4, (0, 1, 2, 3)), from_cycles(4, (0, 2))],
    "Q8": quaternion,
    "SD16": semidihedral16,
    "S3": lambda: [from_cycles(3, (0, 1, 2)), from_cycles(3, (0, 1))],
    "S4": lambda: [from_cycles(4, (0, 1, 2, 3)), from_cycles(4, (0, 1))],
    "A4": lambda: [from_cycles(4, (0, 1, 2)), from_cycles(4, (0, 1), (2, 3))],
    "A6": lambda: [from_cycles(6, (0, 1, 2)), from_cycles(6, (1, 2, 3, 4, 5))],
    "D10": lambda: affine(5, 4),
    "C3-semidirect-C2": lambda: affine(3, 2),
    "C5-semidirect-C4": lambda: affine(5, 2),
    "C7-semidirect-C6": lambda: affine(7, 3),
    "SL2-3": sl2_3,
    "PGL3-3": pgl3_3,
}

ALIASES = {"Sigma3": "S3", "Sigma4": "S4", "SL2(3)": "SL2-3", "PGL3(3)": "PGL3-3", "V4": "C2xC2"}

# fusion preset -> (group preset, subgroup selector)
FUSION_PRESETS: Dict[str, Tuple[str, str]] = {
    "S3": ("S3", "auto:3"),
    "S3@2": ("S3", "auto:2"),
    "A4": ("A4", "auto:2"),
    "S4": ("S4", "auto:2"),
    "SL2-3": ("SL2-3", "auto:2"),
    "PGL3-3": ("PGL3-3", "auto:2"),
    "A6": ("A6", "auto:2"),
    "D10": ("D10", "auto:5"),
    "C3-semidirect-C2": ("C3-semidirect-C2", "auto:3"),
    "C5-semidirect-C4": ("C5-semidirect-C4", "auto:5"),
    "C7-semidirect-C6": ("C7-semidirect-C6", "auto:7"),
    "S4-on-V": ("S4", "gens:[[1,0,3,2],[2,3,0,1]]"),
}


def group_preset(name: str) -> FiniteGroup:
    name = ALIASES.get(name, name)
    m = re.fullmatch(r"C(\d+)", name)
    if m:
        return FiniteGroup(cyclic(int(m.group(1))), name=name, degree=max(int(m.group(1)), 1))
    if name not in GROUP_PRESETS:
        raise PreconditionError(f"unknown group preset {name!r}")
    return FiniteGroup(GROUP_PRESETS[name](), name=name)


def group_from_json(data: dict) -> FiniteGroup:
    unknown = set(data) - {"name", "degree", "generators"}
    if unknown:
        raise PreconditionError(f"unknown fields in group JSON: {sorted(unknown)}")
    if "generators" not in data or not data["generators"]:
        raise PreconditionError("group JSON needs a nonempty 'generators' list")
    return FiniteGroup(data["generators"], name=data.get("name"), degree=data.get("degree"))


def group_to_json(G: FiniteGroup) -> dict:
    return {"name": G.name, "degree": G.degree, "generators": [list(g) for g in G.generators]}


def load_group(source: str) -> FiniteGroup:
    """``preset:<name>``, a bare preset name, or a path to a JSON group file."""
    if source.startswith("preset:"):
        return group_preset(source[len("preset:"):])
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        return group_from_json(json.loads(path.read_text()))
    return group_preset(source)


def default_prime(G: FiniteGroup) -> Optional[int]:
    pp = prime_power(G.order)
    return pp[0] if pp else None
