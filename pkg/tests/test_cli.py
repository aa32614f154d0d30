"""End-to-end CLI coverage through dispatch(), no subprocesses.

Data contract: machine output (set files, JSON, counts) on stdout, logs
on stderr, exit 0 / 1 (exact check failed) / 2 (usage or data errors).
"""

import json

import pytest

from fpsp.cli import dispatch, parse_set_spec, read_rows_file
from fpsp.errors import ParseError
from fpsp.field import make_field

F101 = make_field(101)


def run(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- set specs ------------------------------------------------------------


def test_parse_set_spec_forms(tmp_path):
    assert parse_set_spec(F101, "full").size == 101
    assert parse_set_spec(F101, "star").size == 100
    assert parse_set_spec(F101, "interval:5:4").elements().tolist() == \
        [5, 6, 7, 8]
    assert parse_set_spec(F101, "subgroup:10").size == 10
    assert parse_set_spec(F101, "explicit:3,1,2").elements().tolist() == \
        [1, 2, 3]
    # random defaults its seed; both spellings agree
    assert parse_set_spec(F101, "random:6") == \
        parse_set_spec(F101, "random:6:0")
    path = tmp_path / "a.set"
    path.write_text("p=101\n4\n9\n")
    assert parse_set_spec(F101, str(path)).size == 2
    assert parse_set_spec(F101, "file:%s" % path).size == 2
    with pytest.raises(ParseError):
        parse_set_spec(F101, "interval:1")  # wrong arity
    with pytest.raises(ParseError):
        parse_set_spec(F101, "explicit:1,x")


# -- gen / setop / image / energy / mu -------------------------------------


def test_gen_writes_spec_example(tmp_path, capsys):
    out = tmp_path / "B.set"
    code, _, err = run(capsys, "gen", "--p", "7", "--family", "interval",
                       "--start", "1", "--len", "3", "--out", str(out))
    assert code == 0 and "wrote" in err
    assert out.read_text() == "p=7\n1\n2\n3\n"


def test_gen_stdout_and_errors(capsys):
    code, out, _ = run(capsys, "gen", "--p", "11", "--family", "explicit",
                       "--elements", "5,2")
    assert code == 0 and out == "p=11\n2\n5\n"
    # missing --len for a sized family is a usage error
    code, _, err = run(capsys, "gen", "--p", "11", "--family", "random")
    assert code == 2 and "error:" in err
    # p must be prime
    code, _, err = run(capsys, "gen", "--p", "9", "--family", "interval",
                       "--start", "1", "--len", "2")
    assert code == 2


def test_setop_and_affine(capsys):
    code, out, _ = run(capsys, "setop", "--p", "7", "--A", "explicit:1,2",
                       "--B", "explicit:3,5", "--op", "sum")
    assert code == 0
    assert out == "p=7\n0\n4\n5\n6\n"
    code, out, _ = run(capsys, "setop", "--p", "7", "--A", "explicit:1,2,3",
                       "--affine", "2,0")
    assert code == 0 and out == "p=7\n2\n4\n6\n"
    code, _, err = run(capsys, "setop", "--p", "7", "--A", "explicit:1")
    assert code == 2  # neither --op/--B nor --affine


def test_image_worked_example(capsys):
    code, out, _ = run(capsys, "image", "--p", "7", "--A", "explicit:1",
                       "--B", "explicit:1,2,3", "--g", "const:1",
                       "--h", "const:1")
    assert code == 0 and out == "p=7\n2\n3\n4\n"


def test_energy_prints_moment(tmp_path, capsys):
    out = tmp_path / "B.set"
    run(capsys, "gen", "--p", "7", "--family", "interval", "--start", "1",
        "--len", "3", "--out", str(out))
    code, text, _ = run(capsys, "energy", "--p", "7", "--A", str(out),
                        "--B", str(out), "--op", "diff", "--n", "4")
    assert code == 0 and text.strip() == "115"
    code, text, _ = run(capsys, "energy", "--p", "7", "--A", str(out),
                        "--B", str(out), "--op", "diff", "--n", "4/3")
    assert code == 0 and float(text) > 0
    code, _, _ = run(capsys, "energy", "--p", "7", "--A", str(out),
                     "--B", str(out), "--op", "diff", "--n", "x")
    assert code == 2


def test_mu_values(capsys):
    code, out, _ = run(capsys, "mu", "--p", "7", "--g", "power:2")
    assert code == 0 and out.strip() == "2"
    code, out, _ = run(capsys, "mu", "--p", "7", "--g", "const:3")
    assert out.strip() == "6"
    code, out, _ = run(capsys, "mu", "--p", "7", "--g", "id",
                       "--A", "explicit:1,2")
    assert out.strip() == "1"


# -- incidence -------------------------------------------------------------


def test_incidence_file_mode(tmp_path, capsys):
    pts = tmp_path / "R.pts"
    pls = tmp_path / "S.pls"
    p = 5
    pts.write_text("p=5\n" + "\n".join(
        "%d %d %d" % (t, t, t) for t in range(p)) + "\n")
    pls.write_text("p=5\n1 4 0 0\n")  # X - Y = 0 contains the diagonal
    code, out, _ = run(capsys, "incidence", "count", "--p", "5",
                       "--points", str(pts), "--planes", str(pls))
    assert code == 0 and out.strip() == "5"
    code, out, _ = run(capsys, "incidence", "max-collinear", "--p", "5",
                       "--points", str(pts))
    assert code == 0 and out.strip() == "5"
    code, out, _ = run(capsys, "incidence", "rudnev-ratio", "--p", "5",
                       "--points", str(pts), "--planes", str(pls))
    assert code == 0
    blob = json.loads(out)
    assert blob["incidences"] == 5 and blob["n_points"] == 5


def test_incidence_variant_and_build_roundtrip(tmp_path, capsys):
    args = ("--p", "101", "--variant", "sum_E1", "--A", "subgroup:10",
            "--X", "interval:1:6", "--third", "interval:2:5",
            "--g", "id", "--h", "const:1")
    code, out, _ = run(capsys, "incidence", "count", *args)
    assert code == 0
    kernel_count = int(out)
    op, os_ = tmp_path / "R.pts", tmp_path / "S.pls"
    code, _, err = run(capsys, "incidence", "build", *args,
                       "--out-points", str(op), "--out-planes", str(os_))
    assert code == 0 and "wrote" in err
    code, out, _ = run(capsys, "incidence", "count", "--p", "101",
                       "--points", str(op), "--planes", str(os_))
    assert code == 0 and int(out) == kernel_count
    # the written files parse back with the documented shapes
    _, pts = read_rows_file(str(op), 3, F101)
    _, pls = read_rows_file(str(os_), 4, F101)
    assert pts.shape[1] == 3 and pls.shape[1] == 4


def test_incidence_usage_errors(tmp_path, capsys):
    code, _, _ = run(capsys, "incidence", "count", "--p", "101")
    assert code == 2  # neither files nor variant
    code, _, _ = run(capsys, "incidence", "count", "--p", "101",
                     "--variant", "sum_E1", "--A", "subgroup:10")
    assert code == 2  # missing --X/--third
    bad = tmp_path / "bad.pts"
    bad.write_text("p=101\n1 2\n")
    code, _, err = run(capsys, "incidence", "count", "--p", "101",
                       "--points", str(bad))
    assert code == 2 and "expected 3 integers" in err


# -- verify ----------------------------------------------------------------


def test_verify_lemma_chain_json(capsys):
    code, out, err = run(capsys, "verify", "lemma-chain", "--p", "101",
                         "--A", "interval:1:4", "--B", "interval:1:8")
    assert code == 0 and "ok" in err
    rep = json.loads(out)
    assert rep["ok"] is True
    assert {c["name"] for c in rep["checks"]} >= {"M_lower",
                                                  "E4_level_recon"}


def test_verify_nchain_modes(capsys):
    code, out, _ = run(capsys, "verify", "n-chain", "--p", "7",
                       "--B", "explicit:1,2,3")
    assert code == 0
    rep = json.loads(out)
    assert rep["instance"]["default_P"] is True
    assert rep["instance"]["N"] == 81
    code, out, _ = run(capsys, "verify", "n-chain", "--p", "7",
                       "--B", "explicit:1,2,3", "--P", "explicit:0,1")
    assert code == 0
    rep = json.loads(out)
    assert rep["instance"]["default_P"] is False and len(rep["rows"]) == 2
    # P outside B - C is a data error
    code, _, _ = run(capsys, "verify", "n-chain", "--p", "7",
                     "--B", "explicit:1,2", "--P", "explicit:3")
    assert code == 2


def test_verify_composite_eplus_phi(capsys):
    code, out, _ = run(capsys, "verify", "composite", "--p", "101",
                       "--B", "interval:1:10", "--C", "interval:5:10")
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = run(capsys, "verify", "eplus", "--p", "101",
                       "--A", "interval:1:4", "--B", "interval:1:8")
    assert code == 0 and json.loads(out)["ok"] is True
    code, out, _ = run(capsys, "verify", "phi", "--p", "101",
                       "--B", "interval:1:10", "--eps", "1/5")
    assert code == 0 and json.loads(out)["ok"] is True
    code, _, _ = run(capsys, "verify", "phi", "--p", "101",
                     "--B", "interval:1:10", "--eps", "7/2")
    assert code == 2  # eps outside (0, 1)


def test_verify_theorem_vinh_spec_example(capsys):
    code, out, _ = run(capsys, "verify", "theorem", "--id", "Vinh_1_2",
                       "--p", "101", "--A", "full")
    assert code == 0
    row = json.loads(out)
    assert row["exact_pass"] is True and row["relation"] == "upper"


def test_verify_theorem_strict_and_missing(capsys):
    code, out, _ = run(capsys, "verify", "theorem", "--id", "Cor_1_7",
                       "--p", "101", "--A", "interval:1:17",
                       "--g", "id", "--h", "const:1")
    assert code == 0 and json.loads(out)["hyp_ok"] is False
    code, _, err = run(capsys, "verify", "theorem", "--id", "Cor_1_7",
                       "--p", "101", "--A", "interval:1:17",
                       "--g", "id", "--h", "const:1", "--strict")
    assert code == 2 and "hypotheses" in err
    code, _, err = run(capsys, "verify", "theorem", "--id", "HH_1_1",
                       "--p", "101", "--A", "subgroup:10")
    assert code == 2 and "needs g" in err
    # unknown id is rejected at the argparse layer
    code, _, _ = run(capsys, "verify", "theorem", "--id", "T_0_0",
                     "--p", "101", "--A", "full")
    assert code == 2


# -- sweep -----------------------------------------------------------------


def _sweep_cfg(tmp_path):
    cfg = {"primes": [101], "families": ["interval"], "sizes": [[4, 8, 8]],
           "seeds": [0, 1], "theorems": ["Vinh_1_2"]}
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    return path


def test_sweep_stdout_and_files(tmp_path, capsys):
    cfg = _sweep_cfg(tmp_path)
    code, out, err = run(capsys, "sweep", "--config", str(cfg))
    assert code == 0 and "failures" in err
    blob = json.loads(out)
    assert blob["report"]["n_failures"] == 0
    rep_path = tmp_path / "report.json"
    csv_path = tmp_path / "rows.csv"
    code, out, _ = run(capsys, "sweep", "--config", str(cfg),
                       "--out", str(rep_path), "--csv", str(csv_path))
    assert code == 0 and out == ""
    lines = csv_path.read_text().strip().split("\n")
    assert lines[0].startswith("theorem,p,") and len(lines) == 3


def test_sweep_worker_reports_match(tmp_path, capsys):
    cfg = _sweep_cfg(tmp_path)
    p1, p2 = tmp_path / "w1.json", tmp_path / "w2.json"
    run(capsys, "sweep", "--config", str(cfg), "--out", str(p1))
    run(capsys, "sweep", "--config", str(cfg), "--workers", "2",
        "--out", str(p2))
    r1 = json.loads(p1.read_text())["report"]
    r2 = json.loads(p2.read_text())["report"]
    assert r1 == r2


def test_sweep_bad_config(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{\"primes\": [101]}")
    code, _, err = run(capsys, "sweep", "--config", str(path))
    assert code == 2 and "missing required key" in err
    code, _, _ = run(capsys, "sweep", "--config",
                     str(tmp_path / "absent.json"))
    assert code == 2


# -- dispatch plumbing -------------------------------------------------------


def test_help_and_usage_exits(capsys):
    assert dispatch(["--help"]) == 0
    capsys.readouterr()
    assert dispatch(["no-such-command"]) == 2
    capsys.readouterr()
    assert dispatch(["gen"]) == 2  # missing required flags
    capsys.readouterr()


def test_set_file_modulus_mismatch(tmp_path, capsys):
    path = tmp_path / "a.set"
    path.write_text("p=7\n1\n2\n")
    code, _, err = run(capsys, "energy", "--p", "11", "--A", str(path),
                       "--B", str(path), "--op", "diff", "--n", "2")
    assert code == 2 and "error:" in err
