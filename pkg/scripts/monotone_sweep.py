"""Run the monotone solver on every monotone f in C_b(F) with f(1) <= bound.

Reports how often each scaling factor N is needed, and any falsification flags.
"""

from __future__ import annotations

import argparse
from collections import Counter
from dataclasses import dataclass, field
from typing import List

from fusionreps.errors import FalsificationFlag
from fusionreps.fusion import fusion_from_spec
from fusionreps.realize import monotone_points, solve_monotone
from fusionreps.superclass import condition_lattice


@dataclass
class MonotoneConfig:
    bound: int = 12
    lattice: str = "C_b"
    condition_ii_only: bool = False
    specs: List[str] = field(default_factory=lambda: ["preset:C4", "preset:C9", "preset:D8", "preset:Q8",
                                                       "preset:C3xC3", "A4", "S3", "S4", "SL2-3"])


def run(cfg: MonotoneConfig) -> dict:
    out = {}
    for spec in cfg.specs:
        F = fusion_from_spec(spec)
        Ns: Counter = Counter()
        flags = []
        for f in monotone_points(F, condition_lattice(cfg.lattice, F), cfg.bound):
            try:
                Ns[solve_monotone(f, F, condition_ii_only=cfg.condition_ii_only).N] += 1
            except FalsificationFlag as exc:
                flags.append((f, str(exc)))
        out[spec] = {"points": sum(Ns.values()) + len(flags), "N": dict(sorted(Ns.items())), "flags": flags}
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=12)
    ap.add_argument("--lattice", default="C_b", choices=["C", "C_b", "C_ba"])
    ap.add_argument("--condition-ii-only", action="store_true")
    ap.add_argument("--specs", nargs="*")
    a = ap.parse_args()
    cfg = MonotoneConfig(a.bound, a.lattice, a.condition_ii_only)
    if a.specs:
        cfg.specs = a.specs
    for spec, r in run(cfg).items():
        print(f"{spec:16s} points={r['points']:5d} N={r['N']} flags={len(r['flags'])}")
        for f, msg in r["flags"]:
            print(f"    FLAG {f}: {msg}")


if __name__ == "__main__":
    main()
