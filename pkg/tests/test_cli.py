"""The ballq command line: subcommands, exit codes, JSON determinism."""

import json

import pytest

from ballq import cli
from ballq.surface import dataset


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lefschetz(capsys):
    code, out, _ = run(capsys, "lefschetz", "--json")
    assert code == 0 and json.loads(out)["dimensions"] == [14, 14, -7]
    code, out, _ = run(capsys, "lefschetz", "--twist", "1", "--N", "210", "--json")
    assert json.loads(out)["dimensions"][1] == 77


def test_recognize(capsys):
    code, out, _ = run(capsys, "recognize", "0.5", "0.2857142857142857142857142857142857142857,"
                       "0.4285714285714285714285714285714285714286", "--radius", "1e-35")
    assert code == 0
    assert "-> 1/2" in out and "-> (2+3i)/7" in out


def test_recognize_wide_ball_exit_code(capsys):
    code, _, err = run(capsys, "recognize", "0.25", "--radius", "1e-3", "--height", "1e6")
    assert code == 1 and "InsufficientPrecision" in err


def test_bad_config_exit_code(capsys):
    code, _, err = run(capsys, "verify-all", "--only", "c01", "--bits", "10")
    assert code == 2 and "precision" in err
    code, _, _ = run(capsys, "verify-all", "--only", "c01", "--with-z", "/nonexistent/z.txt")
    assert code == 2


def test_corrupted_dataset_stops_before_checks(capsys, monkeypatch):
    bad = dict(dataset.MANIFEST)
    bad["h_form.json"] = "f" * 64
    monkeypatch.setattr(dataset, "MANIFEST", bad)
    code, out, err = run(capsys, "verify-all", "--only", "c01")
    assert code == 2 and "SHA-256" in err
    assert "c01" not in out


def test_verify_json_is_deterministic(capsys):
    args = ("verify-all", "--only", "c01", "c03", "c10", "--json")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["schema"] == "ballq.report/1"
    assert {r["status"] for r in doc["reports"]} == {"pass"}
    assert all("wall_time" not in r for r in doc["reports"])


def test_verify_summary_and_out(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "chars")
    assert code == 0 and "PASS" in out and "summary: pass" in out
    code, out, _ = run(capsys, "verify-all", "--only", "c10", "--out", str(path), "--timings")
    assert code == 0 and "wall_time" in json.loads(path.read_text())["reports"][0]


def test_expect_file_mismatch_fails(capsys, tmp_path):
    exp = tmp_path / "expect.json"
    exp.write_text(json.dumps({"c10.lefschetz": {"structure_sheaf": [1, 2, 3], "2K_w": 77}}))
    code, out, _ = run(capsys, "verify-all", "--only", "c10", "--expect", str(exp))
    assert code == 1 and "FAIL" not in out  # status is replaced after the run
    code, out, _ = run(capsys, "verify-all", "--only", "c10", "--expect", str(exp), "--json")
    assert json.loads(out)["reports"][0]["status"] == "fail"


def test_skipped_checks_without_z_file(capsys):
    code, out, _ = run(capsys, "verify-all", "--only", "c13", "--json")
    doc = json.loads(out)
    assert code == 0
    assert {r["status"] for r in doc["reports"]} == {"skipped"}


def test_hilbert_with_expect(capsys, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"1": 13, "2": 56}))
    code, out, _ = run(capsys, "hilbert", "--ideal", "z3", "--degrees", "1..2", "--expect", str(good))
    assert code == 0 and "h(2) = 56" in out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"2": 57}))
    code, _, _ = run(capsys, "hilbert", "--ideal", "z3", "--degrees", "1..2", "--expect", str(bad))
    assert code == 1


def test_hilbert_budget_exit_code(capsys):
    code, _, err = run(capsys, "hilbert", "--ideal", "z3", "--degrees", "1..3", "--budget", "1e-9")
    assert code == 3 and "resource limit" in err


def test_hilbert_z_file_needs_path(capsys):
    code, _, _ = run(capsys, "hilbert", "--ideal", "z-file")
    assert code == 2


def test_group_closure(capsys):
    code, out, _ = run(capsys, "group", "--rep", "g21", "--json")
    assert code == 0 and json.loads(out)["order"] == 21


def test_surface_invariants_on_text_file(capsys, tmp_path, data):
    path = tmp_path / "z.txt"
    eqs = [str(f).replace("^", "**") for f in data.c_equations if f != data.c_frame.var(0)]
    path.write_text("vars: " + " ".join(data.c_frame.names) + "\n" + "\n".join(eqs) + "\n")
    code, out, _ = run(capsys, "surface-invariants", str(path), "--degrees", "1..5", "--json")
    assert code == 0
    assert json.loads(out)["hilbert"]["1"] == 10


def test_sample_then_guess(capsys, tmp_path):
    pts = tmp_path / "pts.json"
    code, out, _ = run(capsys, "sample", "--starts", "16", "--out", str(pts))
    assert code == 0 and pts.exists()
    code, out, _ = run(capsys, "guess", "--points", str(pts), "--degree", "1", "--json")
    assert code == 0 and json.loads(out)["kernel_dim"] == 0


def test_guess_needs_points(capsys):
    code, _, _ = run(capsys, "guess")
    assert code == 2


def test_parser_rejects_unknown_command():
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args(["nope"])
