import json
import subprocess
import sys


from kmroots.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_classify_affine_file(tmp_path, capsys):
    f = tmp_path / "a1affine.json"
    f.write_text(json.dumps({"matrix": [[2, -2], [-2, 2]]}))
    code, data = run_json(capsys, "classify", "--gcm", str(f))
    assert code == 0
    assert data["blocks"][0]["type"] == "affine"
    assert data["blocks"][0]["witness"] == ["1", "1"]


def test_probe_unique_subtractable_simple(capsys):
    code, data = run_json(capsys, "probes", "--fixture", "remark-3.11")
    assert code == 0
    assert data["outcome"] == "HOLDS"
    assert data["holds"] is True
    assert data["unique_subtractable"] == "α1"
    assert data["class_of_difference"] == "imaginary"


def test_probes_all(capsys):
    code, data = run_json(capsys, "probes", "--fixture", "all")
    assert code == 0
    reports = [r for group in data.values() for r in group]
    assert len(reports) == 10
    assert all(r["holds"] and r["outcome"] == r["expected"] for r in reports)


def test_weights_all_formulas_agree(capsys):
    code, data = run_json(
        capsys, "weights", "--gcm", "A2", "--anchor", "1,-1/2", "--J", "1",
        "--max-depth", "6", "--formula", "all",
    )
    assert code == 0
    assert data["agree"] is True
    assert data["slice"]["members"] == data["minkowski"]["members"] == data["minimal"]["members"]


def test_anchor_file(tmp_path, capsys):
    f = tmp_path / "anchor.json"
    f.write_text(json.dumps({"pairings": {"1": "1", "2": "-1/2"}}))
    code, data = run_json(capsys, "weights", "--gcm", "A2", "--anchor", str(f), "--J", "1", "--max-depth", "3")
    assert code == 0 and data["anchor"] == ["1", "-1/2"]


def test_roots_json_and_tsv(capsys):
    code, data = run_json(capsys, "roots", "--gcm", "A2")
    assert code == 0
    assert data["roots"][0] == {"coords": [1, 0], "class": "real"} or data["roots"][0]["coords"] == [1, 0]
    code, out, _ = run(capsys, "roots", "--gcm", "B2", "--out", "tsv")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4 and all(line.endswith("real") for line in lines)


def test_cones_member_certificate(capsys):
    code, data = run_json(capsys, "cones", "member", "--gcm", "B2", "--target", "1,1", "--generators", "0,1;2,1")
    assert code == 0
    assert data == {"status": "FEASIBLE", "coefficients": ["1/2", "1/2"]}
    code, data = run_json(capsys, "cones", "member", "--gcm", "A3", "--I", "2", "--target", "1,0,0", "--conic")
    assert code == 0 and data["status"] == "INFEASIBLE"


def test_domain_error_exit_one(capsys):
    code, data = run_json(capsys, "saturate", "--gcm", "A1(1)", "--seeds", "1,1")
    assert code == 1 and data["error"] == "NotFiniteType"


def test_unknown_node_is_domain_error(capsys):
    code, data = run_json(capsys, "psp", "--gcm", "A2", "--I", "7", "--beta", "1,1")
    assert code == 1 and "error" in data


def test_usage_errors_exit_two(capsys):
    assert run(capsys, "roots", "--gcm", "nope")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "psp", "--gcm", "A2")[0] == 2


def test_output_is_deterministic(capsys):
    argv = ["extremal-rays", "--gcm", "A2", "--anchor", "1,1", "--J", "1"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "kmroots.cli", "finiteness", "--gcm", "A1(1)", "--alpha", "1,0", "--J", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["finite"] is True
