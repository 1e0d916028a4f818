"""CLI subcommands, exit codes, and ledger output."""

import json

import pytest

from bdspace.cli import main


def write_schedule(tmp_path, m, n, name="sched.json"):
    path = tmp_path / name
    path.write_text(json.dumps({"m": list(m), "n": list(n)}))
    return str(path)


def test_schedule_command(tmp_path, capsys):
    path = write_schedule(tmp_path, (4, 16), (6, 1))
    assert main(["schedule", "--schedule", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["mode"] == "toy" and out["theta"] == "1/4"


def test_schedule_rejects_bad_input(tmp_path, capsys):
    path = write_schedule(tmp_path, (3, 16), (6, 1))
    assert main(["schedule", "--schedule", path]) == 2
    assert "ScheduleViolation" in capsys.readouterr().err


def test_gen_and_export(tmp_path, capsys):
    path = write_schedule(tmp_path, (4, 16), (6, 1))
    out = tmp_path / "table.json"
    assert main(["gen", "--schedule", path, "--stage", "4",
                 "--out", str(out)]) == 0
    rows = json.loads(out.read_text())
    assert len(rows) == 41
    csv_out = tmp_path / "table.csv"
    assert main(["export", "--schedule", path, "--stage", "3",
                 "--format", "csv", "--out", str(csv_out)]) == 0
    assert csv_out.read_text().startswith("age,")


def test_norm_command(tmp_path, capsys):
    sched = write_schedule(tmp_path, (4, 16), (6, 1))
    pt = tmp_path / "pt.json"
    pt.write_text(json.dumps([[1, "1/1"]]))
    assert main(["norm", "--schedule", sched, "--stage", "6", str(pt)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["lower"] == "1/1"


def test_mtnorm_avg_prints_exact_value(tmp_path, capsys):
    n2 = 16 ** 2 * (4 * 128) ** 4
    sched = write_schedule(tmp_path, (4, 16), (128, n2))
    assert main(["mtnorm", "--schedule", sched, "--avg", "j0=1"]) == 0
    assert capsys.readouterr().out.strip() == "1/4"
    assert main(["mtnorm", "--schedule", sched, "--avg", "j0=1",
                 "--excluded", "1"]) == 0
    assert capsys.readouterr().out.strip() == "1/16"


def test_mtnorm_point_with_tree(tmp_path, capsys):
    sched = write_schedule(tmp_path, (4, 16), (6, 1))
    pt = tmp_path / "x.json"
    pt.write_text(json.dumps([[1, "1/1"], [4, "-1/2"]]))
    assert main(["mtnorm", "--schedule", sched, "--point", str(pt),
                 "--tree"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "1/1"
    assert "leaf" in lines[1]


def test_forge_command(tmp_path, capsys):
    sched = write_schedule(tmp_path, (4, 16), (6, 1))
    spec = tmp_path / "forge.json"
    spec.write_text(json.dumps(
        {"even": [{"j": 1, "cuts": [7], "payloads": [[[0, "1/1"]]]}]}))
    assert main(["forge", "--schedule", sched, "--stage", "6",
                 str(spec)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["forged"] == [571]


def test_verify_exit_zero_and_ledger(tmp_path, capsys):
    out = tmp_path / "ledger.jsonl"
    assert main(["verify", "biorthogonality", "--out", str(out)]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["counts"]["violated"] == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert rows and rows[0]["verdict"] == "verified"


def test_verify_seeded_suites_quick(capsys):
    assert main(["verify", "mt-oracle", "--cases", "25"]) == 0
    assert main(["verify", "lowerest", "--cases", "5"]) == 0
    capsys.readouterr()


def test_verify_rerun_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(["verify", "eval-analysis", "--out", str(a)]) == 0
    assert main(["verify", "eval-analysis", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_usage_error():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
