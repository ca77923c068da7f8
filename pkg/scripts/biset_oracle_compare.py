"""Compare basis-level biset composition with the brute-force set construction
over all subgroup triples of small groups."""

from __future__ import annotations

import argparse
import itertools
import time
from dataclasses import dataclass, field
from typing import List

from fusionreps.bisets import compose_basis, compose_via_sets, full_basis
from fusionreps.presets import group_preset


@dataclass
class OracleConfig:
    groups: List[str] = field(default_factory=lambda: ["C2xC2", "C4", "D8"])


def compare(name: str):
    S = group_preset(name)
    subs = [H.members for H in S.subgroups().subgroups]
    n = bad = 0
    for U, V, W in itertools.product(subs, repeat=3):
        for x in full_basis(S, U, V):
            for y in full_basis(S, V, W):
                n += 1
                bad += compose_basis(S, U, V, W, x, y) != compose_via_sets(S, U, V, W, x, y)
    return n, bad


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--groups", nargs="*", default=["C2xC2", "C4", "D8"])
    cfg = OracleConfig(ap.parse_args().groups)
    for g in cfg.groups:
        t0 = time.perf_counter()
        n, bad = compare(g)
        print(f"{g}: {n} comparisons, {bad} mismatches ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
