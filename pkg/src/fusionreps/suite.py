"""Reference scenarios with stored golden outputs."""

from __future__ import annotations

import difflib
import json
from pathlib import Path
from typing import Callable, Dict, List, Tuple

from .bisets import BisetElement, characteristic_idempotent, check_idempotent
from .fusion import fusion_from_spec, trivial_fusion
from .presets import group_preset
from .rational_reps import schur_index_report
from .realize import p_local_surjectivity_check, sigma3_nonrealizability_demo, solve_monotone, theorem_A_check
from .rep_rings import irreducible_basis, stable_sublattice
from .superclass import condition_lattice

GOLDEN_DIR = Path(__file__).parent / "data" / "goldens"

THEOREM_A_INSTANCES = ["preset:C4", "preset:C9", "preset:D8", "preset:Q8", "preset:C3xC3",
                       "A4", "S3", "S4", "SL2-3"]
P_GROUP_PRESETS = ["C2xC2", "C3", "C4", "C5", "C9", "D8", "Q8", "C3xC3"]


def to_jsonable(obj):
    """Recursively convert Fractions, tuples and dataclass reports to plain JSON types."""
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    return str(obj)


def sigma3_demo() -> dict:
    return to_jsonable(sigma3_nonrealizability_demo())


def index_two_gap() -> dict:
    F = fusion_from_spec("C5-semidirect-C4")
    basis = irreducible_basis("R", F.S)
    lat = stable_sublattice("R", F)
    verdict = p_local_surjectivity_check(F)
    labels = list(F.fusion_labels)
    return {
        "stable_real_basis": [{l: c for l, c in zip(basis.labels, row) if c} for row in lat.basis],
        "dim_image": verdict.image.to_json(labels),
        "C_b": verdict.target.to_json(labels),
        "C_ba": condition_lattice("C_ba", F).to_json(labels),
        "index_in_C_b": verdict.index,
        "monotone_2_0": to_jsonable(solve_monotone([2, 0], F)),
    }


def trivial_fusion_omega() -> dict:
    out = {}
    for name in P_GROUP_PRESETS:
        S = group_preset(name)
        F = trivial_fusion(S)
        omega = characteristic_idempotent(F)
        out[name] = {"omega": omega.to_json(F), "is_identity": omega == BisetElement.identity(S, F.prime)}
    return out


def s3_omega() -> dict:
    F = fusion_from_spec("S3")
    omega = characteristic_idempotent(F)
    return {"omega": omega.to_json(F), "checks": check_idempotent(omega, F)}


def q8_schur_index() -> dict:
    return to_jsonable(schur_index_report(group_preset("Q8")))


def theorem_a_instances() -> dict:
    out = {}
    for spec in THEOREM_A_INSTANCES:
        v = theorem_A_check(fusion_from_spec(spec))
        out[spec] = {"equal": v.equal, "hnf": v.image.to_json(v.labels)}
    return out


def saturation_witness() -> dict:
    return to_jsonable(fusion_from_spec("S4-on-V").is_saturated())


SCENARIOS: Dict[str, Callable[[], dict]] = {
    "sigma3_demo": sigma3_demo,
    "index_two_gap": index_two_gap,
    "trivial_fusion_omega": trivial_fusion_omega,
    "s3_omega": s3_omega,
    "q8_schur_index": q8_schur_index,
    "theorem_a_instances": theorem_a_instances,
    "saturation_witness": saturation_witness,
}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def run_suite(update: bool = False, golden_dir: Path = GOLDEN_DIR) -> Tuple[bool, Dict[str, dict], List[str]]:
    """Run every scenario and diff it against its golden file."""
    results, diffs, ok = {}, [], True
    for name, fn in SCENARIOS.items():
        got = dumps(fn())
        path = golden_dir / f"{name}.json"
        if update:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(got)
        want = path.read_text() if path.exists() else ""
        match = got == want
        ok &= match
        results[name] = {"match": match}
        if not match:
            diffs.extend(difflib.unified_diff(want.splitlines(), got.splitlines(),
                                              f"golden/{name}.json", f"computed/{name}.json", lineterm=""))
    return ok, results, diffs
