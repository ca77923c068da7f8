"""Command-line front end.

Every report is canonical JSON (sorted keys) carrying the tool version and a
hash of the inputs; ``--format tsv`` projects tabular results.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import List, Optional, Tuple

from . import __version__
from .errors import FalsificationFlag, FusionRepsError, PreconditionError
from .suite import dumps, run_suite, to_jsonable

CACHE_ENV = "FUSIONREPS_CACHE_DIR"

SUBCOMMANDS = {
    "group": ["info"],
    "fusion": ["build", "saturation"],
    "characters": ["table"],
    "lattice": ["C", "Cb", "Cba", "DP"],
    "omega": [],
    "omega-min": [],
    "transfer": [],
    "realize": ["virtual", "monotone", "actual-search"],
    "verify": ["theorem-a", "p-local", "question-6-2", "paper-suite"],
}


@dataclass
class RunConfig:
    command: str
    action: Optional[str] = None
    group: Optional[str] = None
    fusion: Optional[str] = None
    prime: Optional[int] = None
    sylow: Optional[str] = None
    function: Optional[str] = None
    bound: Optional[int] = None
    field: str = "R"
    condition_ii_only: bool = False
    output: Optional[str] = None
    format: str = "json"
    seed: int = 0
    update_goldens: bool = False

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise PreconditionError(f"unknown config fields: {unknown}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.command not in SUBCOMMANDS:
            raise PreconditionError(f"unknown command {self.command!r}")
        actions = SUBCOMMANDS[self.command]
        if actions and self.action not in actions:
            raise PreconditionError(f"{self.command} needs one of {actions}")
        if self.format not in ("json", "tsv"):
            raise PreconditionError("format must be json or tsv")
        if self.field not in ("Q", "R", "C"):
            raise PreconditionError("field must be Q, R or C")
        if self.bound is not None and self.bound < 0:
            raise PreconditionError("bound must be nonnegative")

    def input_hash(self) -> str:
        # output path, format and seed never change results
        payload = {k: v for k, v in asdict(self).items() if k not in ("output", "format", "seed")}
        h = hashlib.sha256(json.dumps(payload, sort_keys=True).encode())
        if self.function:
            h.update(Path(self.function).read_bytes())
        if self.group and Path(self.group).is_file():
            h.update(Path(self.group).read_bytes())
        return h.hexdigest()


# -- helpers -------------------------------------------------------------------------


def _fusion(cfg: RunConfig):
    from .fusion import fusion_from_spec
    if cfg.fusion:
        F = fusion_from_spec(cfg.fusion, prime=cfg.prime, sylow=cfg.sylow)
    elif cfg.group:
        F = fusion_from_spec(cfg.group, prime=cfg.prime, sylow=cfg.sylow or "auto")
    else:
        raise PreconditionError("this command needs --fusion or --group")
    cfg.__dict__["_fusion_used"] = F
    return F


def _group(cfg: RunConfig):
    from .presets import load_group
    if cfg.group:
        return load_group(cfg.group)
    if cfg.fusion:
        return _fusion(cfg).S
    raise PreconditionError("this command needs --group or --fusion")


def _read_json(path: Optional[str]) -> dict:
    if not path:
        raise PreconditionError("this command needs --function")
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise PreconditionError(f"cannot read {path}: {exc}") from exc


def _load_function(cfg: RunConfig, F):
    from .superclass import SuperClassFunction, domain_labels
    data = _read_json(cfg.function)
    dom, labels = domain_labels(F, data.get("domain", "F"))
    return SuperClassFunction.from_json({**data, "domain": dom}, labels)


Table = Optional[Tuple[List[str], List[list]]]


def _lattice_table(lat, labels) -> Table:
    return list(labels), [list(r) for r in lat.basis]


# -- command handlers --------------------------------------------------------------


def cmd_group(cfg: RunConfig):
    from .characters import class_labels
    from .groups import prime_power
    G = _group(cfg)
    cls = G.subgroups()
    res = {
        "name": G.name, "order": G.order, "degree": G.degree, "exponent": G.exponent,
        "prime_power": list(prime_power(G.order) or []),
        "element_classes": [{"label": l, "size": len(c)} for l, c in zip(class_labels(G), G.element_classes)],
        "subgroup_classes": [{"label": cls.labels[c], "order": cls.class_order(c), "size": len(cls.classes[c]),
                              "cyclic": cls.rep(c).is_cyclic()} for c in range(cls.n_classes)],
    }
    rows = [[s["label"], s["order"], s["size"], s["cyclic"]] for s in res["subgroup_classes"]]
    return res, (["label", "order", "class_size", "cyclic"], rows)


def cmd_fusion(cfg: RunConfig):
    F = _fusion(cfg)
    verdict = F.is_saturated()
    if cfg.action == "saturation":
        return {"fusion": F.name, "prime": F.prime, "verdict": verdict.to_json()}, None
    res = F.to_json()
    res.update({"saturated": verdict.saturated, "n_fusion_classes": len(F.fusion_classes),
                "fusion_labels": F.fusion_labels})
    rows = [[F.fusion_labels[i], ",".join(F.subgroups.labels[c] for c in fc)] for i, fc in enumerate(F.fusion_classes)]
    return res, (["F_class", "S_classes"], rows)


def cmd_characters(cfg: RunConfig):
    from .characters import character_table
    G = _group(cfg)
    table = character_table(G)
    table.verify()
    res = table.to_json()
    rows = [[l] + [repr(v) for v in chi.values] for l, chi in zip(table.labels, table.irreducibles)]
    return res, (["character"] + table.class_labels, rows)


def cmd_lattice(cfg: RunConfig):
    from .superclass import PrimePowerClasses, condition_lattice
    kind = {"C": "C", "Cb": "C_b", "Cba": "C_ba", "DP": "D_P"}[cfg.action]
    if kind == "D_P":
        G = _group(cfg) if cfg.group else _fusion(cfg).G
        lat = condition_lattice("D_P", G)
        labels = PrimePowerClasses.of(G).labels
    else:
        F = _fusion(cfg)
        lat = condition_lattice(kind, F)
        labels = F.fusion_labels
    return {"kind": kind, "lattice": lat.to_json(labels)}, _lattice_table(lat, labels)


def cmd_omega(cfg: RunConfig):
    from .bisets import characteristic_idempotent, check_idempotent
    F = _fusion(cfg)
    omega = characteristic_idempotent(F)
    return {"fusion": F.name, "omega": omega.to_json(F), "checks": check_idempotent(omega, F)}, None


def cmd_omega_min(cfg: RunConfig):
    from .bisets import coefficientwise_leq, group_as_biset, is_characteristic, minimal_characteristic_biset
    F = _fusion(cfg)
    Om = minimal_characteristic_biset(F)
    return {"fusion": F.name, "Omega": Om.to_json(F), "characteristic": is_characteristic(Om, F).to_json(),
            "below_ambient_biset": coefficientwise_leq(Om, group_as_biset(F))}, None


def cmd_transfer(cfg: RunConfig):
    from .bisets import burnside_is_stable, characteristic_idempotent, transfer
    from .characters import is_F_stable
    from .rep_rings import irreducible_basis
    F = _fusion(cfg)
    omega = characteristic_idempotent(F)
    data = _read_json(cfg.function)
    kind = data.get("kind", "superclass")
    if kind == "character":
        basis = irreducible_basis("C", F.S)
        coords = data.get("coordinates", {})
        bad = [k for k in coords if k not in basis.labels]
        if bad:
            raise PreconditionError(f"unknown irreducible labels {bad}")
        chi = basis.combine([coords.get(l, 0) for l in basis.labels])
        out = transfer(omega, chi, "character")
        dec = basis.coordinates(out)
        return {"kind": kind, "coordinates": {l: str(c) for l, c in zip(basis.labels, dec) if c},
                "stable": is_F_stable(out, F)}, None
    vals = data.get("values")
    if not isinstance(vals, list) or len(vals) != F.subgroups.n_classes:
        raise PreconditionError(f"{kind} input needs a list of {F.subgroups.n_classes} values on S-classes")
    out = transfer(omega, vals, kind)
    res = {"kind": kind, "labels": list(F.subgroups.labels), "values": [str(v) for v in out]}
    if kind == "superclass":
        res["stable"] = all(len({out[c] for c in fc}) == 1 for fc in F.fusion_classes)
    else:
        res["stable"] = burnside_is_stable(F, out)
    return res, None


def cmd_realize(cfg: RunConfig):
    from .realize import actual_search, solve_monotone, solve_virtual
    F = _fusion(cfg)
    f = _load_function(cfg, F)
    if cfg.action == "virtual":
        r = solve_virtual(f, F)
    elif cfg.action == "monotone":
        r = solve_monotone(f, F, condition_ii_only=cfg.condition_ii_only)
    else:
        r = actual_search(f, F, cfg.bound)
    res = r.to_json()
    res["labels"] = list(F.fusion_labels)
    return res, None


def cmd_verify(cfg: RunConfig):
    from .realize import p_local_surjectivity_check, question_6_2_explorer, theorem_A_check
    if cfg.action == "paper-suite":
        ok, results, diffs = run_suite(update=cfg.update_goldens)
        res = {"all_match": ok, "scenarios": results, "diff": diffs}
        if not ok:
            sys.stderr.write("\n".join(diffs) + "\n")
        return res, None
    F = _fusion(cfg)
    if cfg.action == "theorem-a":
        v = theorem_A_check(F)
        return {"fusion": F.name, **v.to_json()}, _lattice_table(v.image, v.labels)
    if cfg.action == "p-local":
        v = p_local_surjectivity_check(F)
        return {"fusion": F.name, "prime": F.prime, **v.to_json()}, None
    rep = question_6_2_explorer(F, cfg.bound if cfg.bound is not None else 12)
    return rep.to_json(), None


HANDLERS = {
    "group": cmd_group, "fusion": cmd_fusion, "characters": cmd_characters, "lattice": cmd_lattice,
    "omega": cmd_omega, "omega-min": cmd_omega_min, "transfer": cmd_transfer,
    "realize": cmd_realize, "verify": cmd_verify,
}


# -- orchestration -------------------------------------------------------------------


def _tsv(table: Table) -> str:
    if table is None:
        raise PreconditionError("this command has no tabular projection; use --format json")
    header, rows = table
    lines = ["\t".join(map(str, header))]
    lines += ["\t".join(map(str, r)) for r in rows]
    return "\n".join(lines) + "\n"


def run(cfg: RunConfig) -> Tuple[int, str]:
    """Execute one command; returns (exit status, report text)."""
    cfg.validate()
    ihash = cfg.input_hash()
    header = {"command": " ".join(filter(None, [cfg.command, cfg.action])),
              "tool_version": __version__, "input_hash": ihash}
    cache_dir = os.environ.get(CACHE_ENV)
    cache_path = Path(cache_dir) / f"{ihash}.json" if cache_dir and cfg.command != "verify" else None
    status = 0
    table: Table = None
    try:
        if cache_path is not None and cache_path.exists() and cfg.format == "json":
            result = json.loads(cache_path.read_text())
        else:
            result, table = HANDLERS[cfg.command](cfg)
            result = to_jsonable(result)
            if cache_path is not None:
                cache_path.parent.mkdir(parents=True, exist_ok=True)
                cache_path.write_text(dumps(result))
        F = cfg.__dict__.get("_fusion_used")
        if F is not None and isinstance(result, dict):
            # downstream results are still computed for unsaturated input, but marked
            verdict = F.is_saturated()
            if not verdict.saturated:
                result = {**result, "unsaturated_input": {"axiom": verdict.axiom,
                                                          "subgroup": (verdict.witness or {}).get("subgroup")}}
        if cfg.command == "verify" and cfg.action == "paper-suite" and not result["all_match"]:
            status = 5
    except FalsificationFlag as exc:
        result = {"status": "falsification-flag", "message": str(exc), "inputs": to_jsonable(exc.payload)}
        status = exc.exit_code
    except FusionRepsError as exc:
        result = {"status": "error", "error": type(exc).__name__, "message": str(exc)}
        status = exc.exit_code
    if cfg.format == "tsv" and status == 0:
        try:
            return status, _tsv(table)
        except PreconditionError as exc:
            result = {"status": "error", "error": type(exc).__name__, "message": str(exc)}
            status = exc.exit_code
    return status, dumps({**header, "result": result})


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="preset:<name>, a preset name, or a JSON file of generators")
    common.add_argument("--fusion", help="fusion preset (e.g. preset:A4, S3@2) or group source")
    common.add_argument("--prime", type=int)
    common.add_argument("--sylow", help="subgroup selector: auto:p, label:<label>, gens:[[...]]")
    common.add_argument("--function", help="JSON file holding a super class function or transfer input")
    common.add_argument("--bound", type=int)
    common.add_argument("--field", default="R", choices=["Q", "R", "C"])
    common.add_argument("--condition-ii-only", action="store_true",
                        help="monotone solver: require only the equality conditions")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--format", default="json", choices=["json", "tsv"])
    common.add_argument("--seed", type=int, default=0, help="exploration order only; results never depend on it")
    common.add_argument("--update-goldens", action="store_true", help=argparse.SUPPRESS)
    common.add_argument("--config", help="JSON RunConfig; command-line values override it")

    parser = argparse.ArgumentParser(prog="fusionreps", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, actions in SUBCOMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        if actions:
            p.add_argument("action", choices=actions)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    data = {}
    if args.config:
        data = json.loads(Path(args.config).read_text())
    defaults = build_parser().parse_args([args.command] + ([args.action] if getattr(args, "action", None) else []))
    for f in fields(RunConfig):
        if not hasattr(args, f.name):
            continue
        val = getattr(args, f.name)
        if f.name not in data or val != getattr(defaults, f.name, None):
            data[f.name] = val
    return RunConfig.from_dict(data)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
    except (FusionRepsError, OSError, json.JSONDecodeError, TypeError) as exc:
        sys.stderr.write(f"invalid configuration: {exc}\n")
        return 2
    status, text = run(cfg)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
