"""Compare Dim(R_K(F)) with C_ba(F) and C_b(F) over a list of fusion systems.

    python scripts/lattice_equality_sweep.py --field R --specs preset:D8 S4 PGL3-3
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from typing import List

from fusionreps.fusion import fusion_from_spec
from fusionreps.rep_rings import dim_image
from fusionreps.superclass import condition_lattice

DEFAULT_SPECS = ["preset:C4", "preset:C9", "preset:D8", "preset:Q8", "preset:C3xC3",
                 "A4", "S3", "S4", "SL2-3", "C5-semidirect-C4", "D10", "A6", "PGL3-3"]


@dataclass
class SweepConfig:
    rep_field: str = "R"
    specs: List[str] = field(default_factory=lambda: list(DEFAULT_SPECS))


def run(cfg: SweepConfig) -> List[dict]:
    rows = []
    for spec in cfg.specs:
        t0 = time.perf_counter()
        F = fusion_from_spec(spec)
        img = dim_image(cfg.rep_field, F)
        cba = condition_lattice("C_ba", F)
        cb = condition_lattice("C_b", F)
        rows.append({"spec": spec, "p": F.prime, "classes": len(F.fusion_labels),
                     "eq_C_ba": img == cba, "index_in_C_b": img.index_in(cb),
                     "seconds": round(time.perf_counter() - t0, 3)})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--field", default="R", choices=["Q", "R", "C"])
    ap.add_argument("--specs", nargs="*", default=DEFAULT_SPECS)
    args = ap.parse_args()
    print("spec\tp\tF-classes\tDim=C_ba\t[C_b:Dim]\tseconds")
    for r in run(SweepConfig(args.field, args.specs)):
        print(f"{r['spec']}\t{r['p']}\t{r['classes']}\t{r['eq_C_ba']}\t{r['index_in_C_b']}\t{r['seconds']}")


if __name__ == "__main__":
    main()
