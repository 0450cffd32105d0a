"""Command line interface: argument handling, outputs, manifests."""

import json
import os

import numpy as np
import pytest

from hrtlab.cli import run


def go(capsys, argv, cwd=None):
    if cwd is not None:
        os.chdir(cwd)
    rc = run(argv)
    return rc, capsys.readouterr().out


def test_version(capsys):
    # argparse exits for --version; run() folds that into a return code
    rc = run(["--version"])
    assert rc == 0
    assert "hrtlab" in capsys.readouterr().out


def test_unknown_subcommand_is_usage_error(capsys):
    rc = run(["frobnicate"])
    assert rc == 2


def test_missing_required_argument(tmp_path, capsys):
    rc, _ = go(capsys, ["classify", "--out", str(tmp_path / "x")])
    assert rc == 2
    err = capsys.readouterr().err if hasattr(capsys, "readouterr") else ""


def test_classify_example_wording(tmp_path, capsys):
    rc, out = go(capsys, [
        "classify",
        "--points", "[[0,0],[0,1],[1,0],[1.41421356,0.47140452]]",
        "--out", str(tmp_path / "c"),
    ])
    assert rc == 0
    assert out == "OneZ2 off=3\n"
    data = json.loads((tmp_path / "c.json").read_text())
    assert data["label"] == "OneZ2"
    assert data["off_index"] == 3


def test_zak_check_lines_and_exact_zeros(tmp_path, capsys):
    rc, out = go(capsys, [
        "zak-check", "--window", "box", "--K", "2",
        "--out", str(tmp_path / "z"),
    ])
    assert rc == 0
    lines = out.splitlines()
    assert len(lines) == 5
    names = [ln.split()[0] for ln in lines]
    assert names == ["translation", "modulation", "modtrans",
                     "quasiperiod_t", "period_omega"]
    errs = {ln.split()[0]: float(ln.split()[1]) for ln in lines}
    assert errs["quasiperiod_t"] == 0.0
    assert errs["period_omega"] == 0.0
    assert all(e <= 1e-8 for e in errs.values())


def test_zak_check_dump_emits_csv_and_pgm(tmp_path, capsys):
    rc, _ = go(capsys, [
        "zak-check", "--window", "box", "--K", "2", "--dump",
        "--out", str(tmp_path / "zd"),
    ])
    assert rc == 0
    csv = (tmp_path / "zd.csv").read_text()
    assert csv.splitlines()[0] == "i,l,re,im"
    pgm = (tmp_path / "zd.pgm").read_text()
    assert pgm.splitlines()[0] == "P2"


def test_orbit_outputs(tmp_path, capsys):
    rc, out = go(capsys, [
        "orbit", "--gamma", "0.41421356,0.73205081", "--n", "500",
        "--out", str(tmp_path / "o"),
    ])
    assert rc == 0
    assert out.startswith("discrepancy ")
    d = float(out.split()[1])
    assert 0 < d < 0.2
    lines = (tmp_path / "o.csv").read_text().splitlines()
    assert lines[0] == "n,t,omega"
    assert len(lines) == 501
    n0 = lines[1].split(",")
    assert n0[0] == "0" and float(n0[1]) == 0.0 and float(n0[2]) == 0.0


def test_product_torus_mode(tmp_path, capsys):
    rc, out = go(capsys, [
        "product", "--poly", "[[1,0,0],[0.5,1,0]]", "--gamma", "0.3,0.4",
        "--n", "50", "--out", str(tmp_path / "p"),
    ])
    assert rc == 0
    assert out.startswith("s_final ")
    lines = (tmp_path / "p.csv").read_text().splitlines()
    assert lines[0] == "n,s_n,zero_hit_flag"
    assert len(lines) == 52  # n = 0..50
    # printed value matches the last ledger row at full precision
    assert out.split()[1] == lines[-1].split(",")[1]


def test_product_flow_mode(tmp_path, capsys):
    rc, out = go(capsys, [
        "product", "--xs", "[0]", "--cs", "[2]", "--xi", "0.3",
        "--n", "50", "--out", str(tmp_path / "pf"),
    ])
    assert rc == 0
    assert out == "classification diverges-to-infinity\n"
    lines = (tmp_path / "pf.csv").read_text().splitlines()
    assert lines[0] == "n,s_plus,s_minus,zero_flag"


def test_product_needs_exactly_one_mode(tmp_path, capsys):
    rc, _ = go(capsys, [
        "product", "--poly", "[[1,0,0]]", "--gamma", "0.1,0.2",
        "--xs", "[0]", "--cs", "[1]",
        "--out", str(tmp_path / "px"),
    ])
    assert rc == 2
    rc2, _ = go(capsys, ["product", "--out", str(tmp_path / "py")])
    assert rc2 == 2


def test_line_closed_report(tmp_path, capsys):
    rc, out = go(capsys, [
        "line", "--gamma", "[-1.41421356, 0.47140452]",
        "--out", str(tmp_path / "l"),
    ])
    assert rc == 0
    assert out == "closed winding=(-3,1) segments=3\n"
    lines = (tmp_path / "l.csv").read_text().splitlines()
    assert lines[0] == "segment_index,t0,omega0,t1,omega1"
    assert len(lines) == 4


def test_line_constancy_report(tmp_path, capsys):
    rc, out = go(capsys, [
        "line", "--gamma", "0,1", "--anchor", "0.3,0",
        "--poly", "[[1,1,0]]",
        "--out", str(tmp_path / "lc"),
    ])
    assert rc == 0
    assert "p_variation 0" in out


def test_line_zero_direction_is_domain_error(tmp_path, capsys):
    rc, _ = go(capsys, ["line", "--gamma", "0,0",
                        "--out", str(tmp_path / "lz")])
    assert rc == 3


def test_relations_json(tmp_path, capsys):
    rc, out = go(capsys, [
        "relations", "--values", '["sqrt(2)", "1+2*sqrt(2)", "1/3"]',
        "--out", str(tmp_path / "r"),
    ])
    assert rc == 0
    printed = json.loads(out)
    assert printed["basis"] == [0]
    assert printed["L"] == 3
    stored = json.loads((tmp_path / "r.json").read_text())
    assert stored["relations"][0] == {"j": 1, "u": "1", "d": ["2"]}


def test_relations_independence_flag(tmp_path, capsys):
    rc, out = go(capsys, [
        "relations", "--values", '["1", "sqrt(2)", "1+sqrt(2)"]',
        "--independent", "--out", str(tmp_path / "ri"),
    ])
    assert rc == 0
    data = json.loads(out)
    assert data["independent"] is False
    assert data["relation"] in ([1, 1, -1], [-1, -1, 1])


def test_flow_outputs_summability(tmp_path, capsys):
    rc, out = go(capsys, [
        "flow", "--xs", "[0, 1.41421356237]", "--cs", "[0.5, 0.5]",
        "--xi", "0.3", "--n", "200", "--out", str(tmp_path / "f"),
    ])
    assert rc == 0
    assert out == "classification diverges-to-zero\n"
    data = json.loads((tmp_path / "f.json").read_text())
    assert data["classification"] == "diverges-to-zero"
    assert "summability" in data
    lines = (tmp_path / "f.csv").read_text().splitlines()
    assert lines[0] == "n,s_plus,s_minus,zero_flag"
    assert len(lines) == 202


def test_fraction_and_scientific_number_forms(tmp_path, capsys):
    # 1/4 and 0.25 and 2.5e-1 land on the same grid value
    rc1, out1 = go(capsys, [
        "zak-check", "--window", "box", "--K", "2", "--alpha", "1/4",
        "--out", str(tmp_path / "a")])
    rc2, out2 = go(capsys, [
        "zak-check", "--window", "box", "--K", "2", "--alpha", "0.25",
        "--out", str(tmp_path / "b")])
    assert rc1 == rc2 == 0
    assert out1 == out2


def test_manifest_contents(tmp_path, capsys):
    rc, _ = go(capsys, [
        "orbit", "--gamma", "0.1,0.2", "--n", "10",
        "--out", str(tmp_path / "m")])
    assert rc == 0
    man = json.loads((tmp_path / "m.manifest.json").read_text())
    assert man["command"] == "orbit"
    assert man["parameters"]["gamma"] == "0.1,0.2"
    assert man["parameters"]["n"] == "10"
    assert sorted(os.path.basename(p) for p in man["outputs"]) == [
        "m.csv", "m.json"]
    assert "timestamp" in man and "version" in man


def test_config_file_merging(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"gamma": "0.1,0.2", "n": 25}))
    rc, _ = go(capsys, [
        "orbit", "--config", str(cfg), "--n", "40",
        "--out", str(tmp_path / "mc")])
    assert rc == 0
    lines = (tmp_path / "mc.csv").read_text().splitlines()
    # explicit flag wins over the config value
    assert len(lines) == 41
    man = json.loads((tmp_path / "mc.manifest.json").read_text())
    assert man["parameters"]["n"] == "40"
    assert man["parameters"]["gamma"] == "0.1,0.2"
    assert any(k.endswith("cfg.json") for k in man["inputs"])
    digest = next(iter(man["inputs"].values()))
    assert digest.startswith("sha256:")


def test_unknown_config_key_rejected(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"gamma": "0.1,0.2", "bogus": 1}))
    rc, _ = go(capsys, [
        "orbit", "--config", str(cfg), "--out", str(tmp_path / "mk")])
    assert rc == 2


def test_rerun_from_manifest_is_byte_identical(tmp_path, capsys):
    first = tmp_path / "run1"
    second = tmp_path / "run2"
    first.mkdir()
    second.mkdir()
    rc, _ = go(capsys, [
        "orbit", "--gamma", "0.41421356,0.73205081", "--n", "300",
        "--out", str(first / "r")])
    assert rc == 0
    man = first / "r.manifest.json"
    rc2, _ = go(capsys, [
        "orbit", "--config", str(man), "--out", str(second / "r")])
    assert rc2 == 0
    assert (first / "r.csv").read_bytes() == (second / "r.csv").read_bytes()
    assert (first / "r.json").read_bytes() == (second / "r.json").read_bytes()


def test_sweep_parallel_determinism(tmp_path, capsys, monkeypatch):
    # small grid, serial vs four threads: identical bytes in CSV and PGM
    args = ["independence", "--q", "16", "--K", "4",
            "--alpha", "0:1:0.5", "--beta", "0:1:0.5"]
    monkeypatch.setenv("HRTLAB_THREADS", "1")
    rc, out1 = go(capsys, args + ["--out", str(tmp_path / "s1")])
    assert rc == 0
    monkeypatch.setenv("HRTLAB_THREADS", "4")
    rc2, out2 = go(capsys, args + ["--out", str(tmp_path / "s2")])
    assert rc2 == 0
    assert out1 == out2
    assert (tmp_path / "s1.csv").read_bytes() == (
        tmp_path / "s2.csv").read_bytes()
    assert (tmp_path / "s1.pgm").read_bytes() == (
        tmp_path / "s2.pgm").read_bytes()
    lines = (tmp_path / "s1.csv").read_text().splitlines()
    assert lines[0] == "alpha,beta,min_singular,condition_number,leakage"
    assert len(lines) == 1 + 9  # 3 x 3 grid


def test_sweep_range_grammar(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HRTLAB_THREADS", "1")
    rc, _ = go(capsys, [
        "independence", "--q", "16", "--K", "4",
        "--alpha", "[0, 0.5]", "--beta", "1",
        "--out", str(tmp_path / "sr")])
    assert rc == 0
    lines = (tmp_path / "sr.csv").read_text().splitlines()
    assert len(lines) == 1 + 2
    alphas = [row.split(",")[0] for row in lines[1:]]
    assert alphas == ["0", "0.5"]
    betas = {row.split(",")[1] for row in lines[1:]}
    assert betas == {"1"}


def test_bad_thread_count_is_usage_error(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("HRTLAB_THREADS", "lots")
    rc, _ = go(capsys, [
        "independence", "--q", "16", "--K", "4",
        "--alpha", "0", "--beta", "0",
        "--out", str(tmp_path / "sb")])
    assert rc == 2


def test_floats_round_trip_at_17_digits(tmp_path, capsys):
    rc, _ = go(capsys, [
        "orbit", "--gamma", "0.41421356,0.73205081", "--n", "3",
        "--out", str(tmp_path / "fr")])
    assert rc == 0
    rows = (tmp_path / "fr.csv").read_text().splitlines()[1:]
    t1 = float(rows[1].split(",")[1])
    assert t1 == 0.41421356  # exact round trip through the text form
