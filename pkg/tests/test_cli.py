"""End-to-end checks of the command-line interface."""

import json

import pytest

from pottszero.cli import main
from pottszero.graphs import parse_graph_text


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_parse_round_trip(tmp_path, capsys):
    path = tmp_path / "k3.txt"
    code, _, _ = run(capsys, "gen", "--kind", "clique", "--n", "3", "--q", "6", "--output", str(path))
    assert code == 0
    g = parse_graph_text(path.read_text())
    assert g.n == 3 and g.q == 6 and len(g.edges) == 3


def test_exact_k3(tmp_path, capsys):
    path = tmp_path / "k3.txt"
    run(capsys, "gen", "--kind", "clique", "--n", "3", "--q", "6", "--output", str(path))
    out_path = tmp_path / "out.json"
    code, _, _ = run(
        capsys, "exact", "--input", str(path), "--w", "0,1/2,1", "--output", str(out_path)
    )
    assert code == 0
    payload = json.loads(out_path.read_text())
    assert payload["coefficients"] == ["120", "90", "0", "6"]
    assert payload["evaluations"]["0"] == "120"
    assert payload["evaluations"]["1/2"] == "663/4"
    assert payload["evaluations"]["1"] == "216"
    assert payload["version"]


def test_exact_malformed_file(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text("this is not a graph\n")
    code, _, err = run(capsys, "exact", "--input", str(path))
    assert code == 2
    assert "error" in err


def test_exact_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "exact", "--input", str(tmp_path / "nope.txt"))
    assert code == 2


def test_verify_unknown_bound(capsys):
    code, _, err = run(capsys, "verify", "--bound", "bogus", "--nmax", "3")
    assert code == 2
    assert "unknown bound" in err


def test_verify_small_family(tmp_path, capsys):
    out_path = tmp_path / "rep.json"
    code, _, _ = run(
        capsys,
        "verify",
        "--bound", "prob_basic",
        "--nmax", "4",
        "--q", "6",
        "--w", "0,1/2,1",
        "--output", str(out_path),
    )
    assert code == 0
    payload = json.loads(out_path.read_text())
    (report,) = payload["reports"]
    assert report["violations"] == 0
    assert report["instances_checked"] > 0


def test_verify_csv_format(tmp_path, capsys):
    out_path = tmp_path / "rep.csv"
    code, _, _ = run(
        capsys,
        "verify",
        "--bound", "prob_basic",
        "--nmax", "4",
        "--q", "6",
        "--w", "1/2",
        "--format", "csv",
        "--output", str(out_path),
    )
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0].startswith("bound_id,")
    assert lines[1].startswith("prob_basic,")


def test_scan_prints_margin(capsys):
    code, out, _ = run(capsys, "scan", "--nmax", "4", "--q", "6")
    assert code == 0
    assert "family min distance" in out


def test_scan_strict_out_of_regime(capsys):
    code, _, _ = run(capsys, "scan", "--nmax", "4", "--q", "4", "--strict")
    assert code == 4


def test_interpolate_check(tmp_path, capsys):
    path = tmp_path / "c4.txt"
    run(capsys, "gen", "--kind", "cycle", "--n", "4", "--q", "3", "--output", str(path))
    code, out, _ = run(capsys, "interpolate", "--input", str(path), "--eps", "0.01", "--check")
    assert code == 0
    payload = json.loads(out)
    est = payload["estimate"]
    assert est["exact_value"] == 18
    assert float(est["eps_achieved"]) <= 0.01


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert out.strip()
