import json

import numpy as np
import pytest

from augtest import load_dist, tv_distance, uniform
from augtest.cli import main


def run(argv):
    return main([str(a) for a in argv])


def test_gen_hard_closeness_and_hint(tmp_path):
    p_path, q_path = tmp_path / "p.dist", tmp_path / "q.dist"
    assert (
        run(["gen", "hard-closeness", "--n", 1000, "--out-p", p_path, "--out-q", q_path]) == 0
    )
    p, q = load_dist(p_path), load_dist(q_path)
    assert abs(tv_distance(p, q) - 0.5) <= 2e-3
    meta = json.loads((tmp_path / "p.meta.json").read_text())
    assert meta["m"] == 100.0

    hint_path = tmp_path / "h.dist"
    assert run(["gen", "hint", "--p", p_path, "--beta", 1.0, "--out", hint_path]) == 0
    assert load_dist(hint_path) == uniform(1000)


def test_gen_lower_bounds(tmp_path):
    prefix = tmp_path / "ulb"
    assert (
        run(
            ["gen", "uniformity-lb", "--n", 100, "--eps", 0.1, "--d", 0.2,
             "--alpha", 0.1, "--seed", 3, "--out-prefix", prefix]
        )
        == 0
    )
    meta = json.loads((tmp_path / "ulb.meta.json").read_text())
    assert meta["tv_phat_uniform"] == pytest.approx(0.2, abs=1e-9)
    load_dist(f"{prefix}.phat.dist")
    load_dist(f"{prefix}.bullet.dist")
    load_dist(f"{prefix}.diamond.dist")

    prefix = tmp_path / "clb"
    assert (
        run(
            ["gen", "closeness-lb", "--n", 10000, "--eps", 0.15, "--alpha", 0.1,
             "--seed", 3, "--out-prefix", prefix]
        )
        == 0
    )
    meta = json.loads((tmp_path / "clb.meta.json").read_text())
    assert meta["tv_plus_uniform"] == pytest.approx(0.1, abs=1e-9)


def test_gen_rejects_bad_parameters(tmp_path):
    code = run(
        ["gen", "uniformity-lb", "--n", 100, "--eps", 0.6, "--d", 0.2, "--alpha", 0.1,
         "--seed", 1, "--out-prefix", tmp_path / "x"]
    )
    assert code == 3


def test_test_closeness_outputs_report(tmp_path, capsys):
    p_path, q_path = tmp_path / "p.dist", tmp_path / "q.dist"
    run(["gen", "hard-closeness", "--n", 1000, "--out-p", p_path, "--out-q", q_path])
    code = run(
        ["test", "closeness", "--p", p_path, "--q", p_path, "--hint", p_path,
         "--alpha", 0.01, "--eps", 0.25, "--seed", 11]
    )
    assert code == 0
    report = json.loads(capsys.readouterr().out.strip())
    assert set(report) == {"verdict", "statistic", "samples_used", "branch"}
    assert report["verdict"] == "accept"


def test_test_identity_outputs_report(tmp_path, capsys):
    from augtest import save_dist

    save_dist(uniform(400), tmp_path / "u.dist")
    code = run(
        ["test", "identity", "--q", tmp_path / "u.dist", "--p", tmp_path / "u.dist",
         "--hint", tmp_path / "u.dist", "--alpha", 0.1, "--eps", 0.5, "--seed", 5]
    )
    assert code == 0
    report = json.loads(capsys.readouterr().out.strip())
    assert report["verdict"] in ("accept", "reject")


def test_search_closeness(tmp_path, capsys):
    from augtest import save_dist

    save_dist(uniform(200), tmp_path / "u.dist")
    code = run(
        ["search", "closeness", "--p", tmp_path / "u.dist", "--q", tmp_path / "u.dist",
         "--hint", tmp_path / "u.dist", "--eps", 0.4, "--delta", 0.2, "--seed", 2]
    )
    assert code == 0
    report = json.loads(capsys.readouterr().out.strip())
    assert report["verdict"] in ("accept", "reject")
    assert report["rounds"] >= 1


def test_sweep_cli_writes_csvs(tmp_path):
    cfg = {
        "instance": {"name": "hard-closeness", "n": 1000},
        "budgets": [50, 100],
        "eps": 0.25,
        "alpha": 0.01,
        "seed": 3,
        "trials": 4,
        "algorithms": ["augmented", "standard"],
        "kind": "budget",
    }
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    trials, summary = tmp_path / "t.csv", tmp_path / "s.csv"
    assert run(["sweep", "--config", cfg_path, "--out-trials", trials, "--out-summary", summary]) == 0
    lines = trials.read_text().splitlines()
    assert lines[0] == "budget,trial,case,algorithm,statistic,verdict,prep_samples"
    assert len(lines) == 1 + 2 * 2 * 2 * 4
    assert summary.read_text().splitlines()[0] == "budget,algorithm,threshold,error,inaccurate_rate"


def test_sweep_cli_config_error(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text('{"budgets": []}')
    code = run(
        ["sweep", "--config", cfg_path, "--out-trials", tmp_path / "t.csv",
         "--out-summary", tmp_path / "s.csv"]
    )
    assert code == 2


def test_ingest_cli(tmp_path):
    chunks = tmp_path / "chunks"
    chunks.mkdir()
    (chunks / "00.tsv").write_text("10.0.0.1\t5\n10.0.0.2\t5\n")
    (chunks / "01.tsv").write_text("10.0.0.2\t1\n10.0.0.3\t3\n")
    out0, out1 = tmp_path / "c0.dist", tmp_path / "c1.dist"
    keymap = tmp_path / "keys.tsv"
    assert run(["ingest", "--input", chunks, "--chunk-index", 0, "--out", out0, "--keymap", keymap]) == 0
    assert run(["ingest", "--input", chunks, "--chunk-index", 1, "--out", out1, "--keymap", keymap]) == 0
    d0, d1 = load_dist(out0), load_dist(out1)
    assert d0.n == d1.n == 3  # shared domain across chunks
    assert np.allclose(d0.probs, [0.5, 0.5, 0.0])
    assert np.allclose(d1.probs, [0.0, 0.25, 0.75])
    assert keymap.read_text() == "10.0.0.1\t1\n10.0.0.2\t2\n10.0.0.3\t3\n"


def test_ingest_cli_bad_chunk_index(tmp_path):
    chunks = tmp_path / "chunks"
    chunks.mkdir()
    (chunks / "00.tsv").write_text("a\t1\n")
    code = run(
        ["ingest", "--input", chunks, "--chunk-index", 5, "--out", tmp_path / "o.dist",
         "--keymap", tmp_path / "k.tsv"]
    )
    assert code == 2
