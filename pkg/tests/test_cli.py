import json
import subprocess
import sys

import pytest

from gbgw.cli import main


def run_cli(args, tmp_path, name):
    out = tmp_path / name
    rc = main(args + ["--out", str(out)])
    return rc, out.read_text() if out.exists() else None


def test_correlators_json_golden(tmp_path):
    rc, text = run_cli(["correlators", "--genus-max", "2", "--weight-max", "1", "--arity-max", "1"],
                       tmp_path, "c.json")
    assert rc == 0
    doc = json.loads(text)
    by_g = {r["g"]: r["value"] for r in doc["records"] if r["mu"] == [1]}
    assert by_g[0] == [[1, "-1/2"]]
    assert by_g[1] == [[0, "1/8"]]
    assert by_g[2] == []


def test_correlators_csv(tmp_path):
    rc, text = run_cli(["correlators", "--genus-max", "1", "--weight-max", "4", "--arity-max", "2",
                        "--format", "csv"], tmp_path, "c.csv")
    assert rc == 0
    lines = text.strip().split("\n")
    assert lines[0] == "g,mu,s_exponent,value"
    assert "0,1;1,1,-1/2" in lines


def test_byte_determinism(tmp_path):
    args = ["verify", "--suite", "eo", "--genus-max", "1", "--arity-max", "2", "--weight-max", "5"]
    rc1, t1 = run_cli(args, tmp_path, "a.json")
    rc2, t2 = run_cli(args, tmp_path, "b.json")
    assert rc1 == rc2 == 0
    assert t1 == t2


def test_json_roundtrip(tmp_path):
    rc, text = run_cli(["npoint", "--pipeline", "virasoro", "--genus-max", "0",
                        "--arity-max", "2", "--weight-max", "6"], tmp_path, "n.json")
    assert rc == 0
    doc = json.loads(text)
    assert json.loads(json.dumps(doc, sort_keys=True)) == doc
    got = {tuple(e["mu"]): e["value"] for e in doc["entries"]}
    assert got[(1, 1)] == [[1, "-1/2"]]
    assert got[(3, 1)] == [[2, "3/8"]]


def test_npoint_pipelines_consistent(tmp_path):
    rc, t_eo = run_cli(["npoint", "--pipeline", "eo", "--genus-max", "1",
                        "--arity-max", "2", "--weight-max", "6"], tmp_path, "eo.json")
    assert rc == 0
    rc, t_vir = run_cli(["npoint", "--pipeline", "virasoro", "--genus-max", "1",
                         "--arity-max", "2", "--weight-max", "6"], tmp_path, "vir.json")
    assert rc == 0
    eo_entries = {tuple(e["mu"]): e["value"] for e in json.loads(t_eo)["entries"]}
    vir_entries = {tuple(e["mu"]): e["value"] for e in json.loads(t_vir)["entries"]}
    for mu, val in vir_entries.items():
        if val and sum(mu) <= 6:
            key = tuple(sorted(mu, reverse=True))
            assert eo_entries.get(key) == val or eo_entries.get(mu) == val, mu


def test_npoint_affine_pipeline(tmp_path):
    rc, text = run_cli(["npoint", "--pipeline", "affine", "--arity-max", "1",
                        "--weight-max", "5"], tmp_path, "aff.json")
    assert rc == 0
    doc = json.loads(text)
    got = {tuple(e["mu"]): e["value"] for e in doc["entries"]}
    # h(1-4u)/16 serialized over (h_exp, u_exp)
    assert got[(1,)] == [[1, 0, "1/16"], [1, 1, "-1/4"]]


def test_affine_csv_rejected(tmp_path):
    rc = main(["npoint", "--pipeline", "affine", "--arity-max", "1", "--weight-max", "3",
               "--format", "csv", "--out", str(tmp_path / "x.csv")])
    assert rc == 2


def test_verify_failure_exit_code(monkeypatch, tmp_path):
    # force a failure by breaking one golden value
    import gbgw.cli as cli
    import gbgw.eo

    real = gbgw.eo.omega

    def broken(g, n, kind="standard"):
        t = real(g, n, kind)
        if (g, n) == (1, 1):
            from gbgw.series import SparseTensor
            from fractions import Fraction

            return SparseTensor(1, {(0,): __import__("gbgw.poly", fromlist=["ParamPoly"]).ParamPoly.const(Fraction(1, 3))})
        return t

    monkeypatch.setattr(cli.eo, "omega", broken)
    rc = main(["verify", "--suite", "eo", "--genus-max", "1", "--arity-max", "1",
               "--weight-max", "3", "--out", str(tmp_path / "f.json")])
    assert rc == 1


def test_each_suite_passes_small(tmp_path):
    for suite in ("schurq", "virasoro", "qsc"):
        rc, text = run_cli(["verify", "--suite", suite, "--genus-max", "1", "--arity-max", "2",
                            "--weight-max", "5", "--window", "10"], tmp_path, f"{suite}.json")
        assert rc == 0, suite
        doc = json.loads(text)
        assert doc["all_passed"] is True


def test_affine_suite_with_quarter_u(tmp_path):
    rc, text = run_cli(["verify", "--suite", "affine", "--weight-max", "5", "--window", "10",
                        "--u", "1/4"], tmp_path, "aq.json")
    assert rc == 0
    doc = json.loads(text)
    names = [c["identity"] for c in doc["checks"]]
    assert any("trivialization" in n for n in names)


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "nonsense"])
    assert exc.value.code == 2


def test_bad_rational_u():
    for bad in ("abc", "1/0"):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "schurq", "--u", bad])
        assert exc.value.code == 2


def test_console_script_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "gbgw.cli", "correlators", "--weight-max", "1",
         "--arity-max", "1", "--genus-max", "0"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert '"-1/2"' in proc.stdout
