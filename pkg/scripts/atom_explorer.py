"""For each saturated fusion system on C3, C5 or D8, test whether every monotone
f in C_ba(F) up to a bound is the dimension function of an actual stable real
representation (N = 1)."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from typing import List

from fusionreps.realize import question_6_2_explorer, saturated_fusion_systems_on


@dataclass
class ExplorerConfig:
    bound: int = 12
    groups: List[str] = field(default_factory=lambda: ["C3", "C5", "D8"])


def main():
    ap = argparse.ArgumentParser(description="monotone C_ba functions versus stable actual representations")
    ap.add_argument("--bound", type=int, default=12)
    ap.add_argument("--groups", nargs="*", default=["C3", "C5", "D8"])
    a = ap.parse_args()
    cfg = ExplorerConfig(a.bound, a.groups)
    for name in cfg.groups:
        for F in saturated_fusion_systems_on(name):
            r = question_6_2_explorer(F, cfg.bound)
            print(f"{name}/{F.name}: {r.realized}/{r.checked} realized, atoms={len(r.atoms)}")
            for f in r.unknown[:10]:
                print(f"    unrealized {f}")


if __name__ == "__main__":
    main()
