import json

import pytest

from operadic.cli import main, parse_operad


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tables_row_for_arity_four(capsys):
    code, out, _ = run(capsys, "tables", "--max-arity", "5", "--format", "json")
    assert code == 0
    row = json.loads(out)["rows"][3]
    assert (row["Com"], row["Ass"], row["Lie"]) == ({"0": 1}, {"0": 24}, {"0": 6})


def test_square_main_pbw_exits_zero(capsys):
    assert run(capsys, "square", "main-PBW", "--max-arity", "5")[0] == 0


def test_corrupted_cache_exits_one_with_diff(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("OPERADIC_CACHE_DIR", str(tmp_path))
    assert run(capsys, "square", "main-PBW", "--max-arity", "3")[0] == 0
    for entry in tmp_path.glob("*.json"):
        data = json.loads(entry.read_text())
        data["homology"] = {"0": 2}
        entry.write_text(json.dumps(data))
    code, out, _ = run(capsys, "square", "main-PBW", "--max-arity", "3")
    assert code == 1 and "mismatch" in out and "arity 1" in out


def test_determinism(capsys):
    args = ("bar", "1", "Com", "1", "--max-arity", "4", "--format", "json")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


@pytest.mark.parametrize("argv", [
    ("square", "En", "--k", "1", "--m", "0", "--n", "9"),
    ("bar", "1", "Foo", "1"),
    ("tables", "--max-arity", "1"),
    ("tables", "--field", "6"),
    ("bar", "Com", "Lie", "1"),
    ("nonsense",),
    ("envelope", "--k", "3", "--n", "3", "--weight", "2"),
])
def test_usage_errors_exit_two(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_modular_field(capsys):
    code, out, _ = run(capsys, "bar", "1", "Com", "1", "--max-arity", "4", "--field", "7", "--format", "json")
    assert code == 0 and json.loads(out)["rows"][3]["homology"] == {"3": 6}


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"max_arity": 3, "format": "json"}))
    code, out, _ = run(capsys, "koszul", "Lie", "--config", str(cfg))
    assert code == 0 and len(json.loads(out)["results"]) == 3


def test_pbw_file_and_negative_control(capsys, tmp_path):
    good = tmp_path / "h.json"
    good.write_text(json.dumps({"dim": 3, "labels": ["x", "y", "z"], "brackets": [[0, 1, [[2, 1]]]]}))
    assert run(capsys, "pbw", str(good), "--weight", "4")[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 3, "brackets": [[0, 1, [[2, 1]]], [0, 2, [[0, 1]]]]}))
    code, out, _ = run(capsys, "pbw", str(bad), "--weight", "3")
    assert code == 1 and "NO" in out


def test_other_commands(capsys):
    assert run(capsys, "compose", "Com", "Lie", "--max-arity", "4")[0] == 0
    assert run(capsys, "e1page", "--n", "2", "--weight", "3")[0] == 0
    assert run(capsys, "non-pushout", "--max-n", "6")[0] == 0
    assert run(capsys, "envelope", "--k", "1", "--n", "0", "--weight", "3")[0] == 0
    assert run(capsys, "pbw", "builtin:sl2", "--weight", "3")[0] == 0


def test_parse_suspended_operad():
    assert parse_operad("s^1Pois2").dims(2) == {1: 1, 2: 1}
