from __future__ import annotations

import json

import pytest

from fusionreps import cli
from fusionreps.errors import FalsificationFlag


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def test_fusion_build(capsys):
    code, out = run(["fusion", "build", "--group", "preset:A4", "--sylow", "auto:2"], capsys)
    rep = json.loads(out)
    assert code == 0
    assert rep["result"]["saturated"] and rep["result"]["n_fusion_classes"] == 3
    assert rep["tool_version"] and len(rep["input_hash"]) == 64


def test_lattice_equality_report(capsys):
    code, out = run(["verify", "theorem-a", "--fusion", "preset:C5-semidirect-C4"], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["equal"]
    assert res["image"]["hnf"] == res["target"]["hnf"] == [[1, 1], [0, 4]]


def test_monotone_from_file(tmp_path, capsys):
    f = tmp_path / "f.json"
    f.write_text(json.dumps({"values": {"1.1": 2, "5.1": 0}}))
    code, out = run(["realize", "monotone", "--fusion", "preset:C5-semidirect-C4", "--function", str(f)], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["N"] == 2 and res["witness"]["coordinates"] == {"Q4.1": 1}


def test_precondition_exit_code(tmp_path, capsys):
    f = tmp_path / "f.json"
    f.write_text(json.dumps({"values": [1, 0]}))
    code, out = run(["realize", "virtual", "--fusion", "C5-semidirect-C4", "--function", str(f)], capsys)
    assert code == 2 and "Borel-Smith" in json.loads(out)["result"]["message"]


def test_size_exit_code(tmp_path, capsys):
    g = tmp_path / "big.json"
    g.write_text(json.dumps({"generators": [list(range(1, 80)) + [0]]}))
    code, _ = run(["group", "info", "--group", str(g)], capsys)
    assert code == 3


def test_falsification_exit_code(monkeypatch, tmp_path, capsys):
    def boom(cfg):
        raise FalsificationFlag("forced", {"fusion": "S3"})
    monkeypatch.setitem(cli.HANDLERS, "omega", boom)
    code, out = run(["omega", "--fusion", "S3"], capsys)
    rep = json.loads(out)["result"]
    assert code == 4 and rep["inputs"] == {"fusion": "S3"}


def test_consistency_exit_code_on_golden_mismatch(monkeypatch, capsys):
    monkeypatch.setattr(cli, "run_suite", lambda update=False: (False, {"x": {"match": False}}, ["-a", "+b"]))
    code, _ = run(["verify", "paper-suite"], capsys)
    assert code == 5


def test_reference_suite_matches_goldens(capsys):
    code, out = run(["verify", "paper-suite"], capsys)
    assert code == 0 and json.loads(out)["result"]["all_match"]


def test_determinism(capsys):
    argv = ["omega", "--fusion", "S4"]
    _, a = run(argv, capsys)
    _, b = run(argv, capsys)
    assert a == b


def test_seed_does_not_change_results(capsys):
    _, a = run(["verify", "question-6-2", "--fusion", "S3", "--bound", "6"], capsys)
    _, b = run(["verify", "question-6-2", "--fusion", "S3", "--bound", "6", "--seed", "99"], capsys)
    assert a == b


def test_tsv_projection(capsys):
    code, out = run(["lattice", "Cba", "--fusion", "C5-semidirect-C4", "--format", "tsv"], capsys)
    assert code == 0 and out.splitlines() == ["1.1\t5.1", "1\t1", "0\t4"]
    code, _ = run(["omega", "--fusion", "S3", "--format", "tsv"], capsys)
    assert code == 2


def test_config_file_rejects_unknown_fields(tmp_path, capsys):
    c = tmp_path / "cfg.json"
    c.write_text(json.dumps({"fusion": "S3", "colour": "blue"}))
    assert cli.main(["omega", "--config", str(c)]) == 2


def test_config_file_supplies_fields(tmp_path, capsys):
    c = tmp_path / "cfg.json"
    c.write_text(json.dumps({"fusion": "S3"}))
    code, out = run(["lattice", "Cb", "--config", str(c)], capsys)
    assert code == 0 and json.loads(out)["result"]["lattice"]["hnf"] == [[1, 1], [0, 2]]


def test_cache_dir(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    _, a = run(["characters", "table", "--group", "Q8"], capsys)
    assert len(list(tmp_path.iterdir())) == 1
    _, b = run(["characters", "table", "--group", "Q8"], capsys)
    assert a == b


@pytest.mark.parametrize("argv", [
    ["group", "info", "--group", "S4"],
    ["fusion", "saturation", "--fusion", "S4-on-V"],
    ["lattice", "DP", "--group", "S3"],
    ["omega-min", "--fusion", "A4"],
    ["verify", "p-local", "--fusion", "S3"],
])
def test_other_commands_succeed(argv, capsys):
    code, out = run(argv, capsys)
    assert code == 0 and json.loads(out)["result"]


def test_transfer_command(tmp_path, capsys):
    f = tmp_path / "t.json"
    f.write_text(json.dumps({"kind": "superclass", "values": [3, 1, 1, 1, 0]}))
    code, out = run(["transfer", "--fusion", "A4", "--function", str(f)], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and res["stable"] and res["values"] == ["3", "1", "1", "1", "0"]
    f.write_text(json.dumps({"kind": "character", "coordinates": {"X1.2": 1}}))
    code, out = run(["transfer", "--fusion", "A4", "--function", str(f)], capsys)
    assert code == 0 and json.loads(out)["result"]["stable"]


def test_unsaturated_input_is_tagged(capsys):
    code, out = run(["lattice", "Cb", "--fusion", "S4-on-V"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["unsaturated_input"] == {"axiom": "sylow", "subgroup": "4.1"}
    code, out = run(["lattice", "Cb", "--fusion", "S4"], capsys)
    assert "unsaturated_input" not in json.loads(out)["result"]
