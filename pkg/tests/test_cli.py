import json
import subprocess
import sys

from hopfgal.cli import main
from hopfgal.report import validate

GRADED_ZERO = {
    "field": "Q", "dim": 2,
    "mult": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]],
    "unit": ["1", "0"],
    "hopf": {"builder": "group_algebra", "group": "Z2"},
    "coaction": [[0, 0, 0, "1"], [1, 1, 1, "1"]],
}


def run_cli(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def report(args, capsys):
    code, out, _ = run_cli(args, capsys)
    rep = json.loads(out)
    validate(rep)
    return code, rep


def test_verify_exit_zero(capsys):
    code, rep = report(["verify", "--builder", "circle_hopf"], capsys)
    assert code == 0 and rep["ok"]


def test_negative_certificate_exits_one(tmp_path, capsys):
    path = tmp_path / "graded.json"
    path.write_text(json.dumps(GRADED_ZERO))
    code, rep = report(["can", "--input", str(path)], capsys)
    assert code == 1 and not rep["ok"]
    bad = [c for c in rep["certificates"] if not c["holds"]]
    assert bad and all("witness" in c for c in bad)


def test_usage_errors_exit_two(tmp_path, capsys):
    code, _, err = run_cli(["verify", "--builder", "no_such_builder"], capsys)
    assert code == 2 and "error" in err
    code, _, _ = run_cli(["verify", "--input", str(tmp_path / "missing.json")], capsys)
    assert code == 2
    code, _, _ = run_cli(["verify"], capsys)
    assert code == 2
    code, _, _ = run_cli(["verify", "--builder", "group_algebra", "--group", "Q8"], capsys)
    assert code == 2


def test_output_is_deterministic(capsys):
    args = ["takeuchi", "--builder", "group_algebra", "--group", "S3"]
    _, first, _ = run_cli(args, capsys)
    _, second, _ = run_cli(args, capsys)
    assert first == second


def test_takeuchi_round_trips(capsys):
    code, rep = report(["takeuchi", "--builder", "group_algebra", "--group", "S3"], capsys)
    assert code == 0 and rep["results"]["round_trips"] == 6


def test_lattice_dot_file(tmp_path, capsys):
    dot = tmp_path / "d8.dot"
    out = tmp_path / "d8.json"
    code, _, _ = run_cli(["lattice", "--builder", "group_algebra", "--group", "D8",
                          "--out", str(out), "--dot", str(dot)], capsys)
    assert code == 0
    text = dot.read_text()
    assert text.startswith("digraph") and text.count("->") == 15
    validate(json.loads(out.read_text()))


def test_group_likes_over_gaussian_rationals(capsys):
    _, q = report(["group-likes", "--builder", "circle_hopf", "--field", "Q"], capsys)
    _, qi = report(["group-likes", "--builder", "circle_hopf", "--field", "Qi"], capsys)
    assert q["results"]["count"] == 4 and qi["results"]["count"] == 8


def test_can_on_finite_field(capsys):
    ref = json.dumps({"builder": "finite_field_ext", "p": 2, "poly": [1, 1, 0, 1]})
    for target in ("full", "coring"):
        code, rep = report(["can", "--builder", ref, "--target", target], capsys)
        assert code == 0 and rep["ok"]


def test_schema_command(capsys):
    code, out, _ = run_cli(["schema"], capsys)
    assert code == 0 and json.loads(out)["$schema"].endswith("2020-12/schema")


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hopfgal", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip().startswith("hopfgal")
