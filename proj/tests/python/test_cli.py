"""Exercises the senticl command line binary through subprocess calls."""

import json
import os
import pathlib
import subprocess

import pytest

CLI = os.environ["SENTICL_CLI"]
FIXTURES = pathlib.Path(os.environ["SENTICL_FIXTURES"])


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


@pytest.fixture
def config_path(tmp_path):
    config = {
        "swn_path": str(FIXTURES / "swn_fixture.txt"),
        "sst_dir": str(FIXTURES / "sst_fixture"),
        "embeddings_path": str(FIXTURES / "glove_fixture.txt"),
        "model": "mlp_mean_embedding",
        "strategy": "sentence_length",
        "bs": 8,
        "epochs_per_phase": 1,
        "final_epochs": 1,
        "sgd_batch": 8,
        "repeats": 1,
        "base_seed": 7,
        "aux_epochs": 2,
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    return str(path)


def test_help_exits_zero():
    proc = run("--help")
    assert proc.returncode == 0
    assert "Subcommands" in proc.stdout


def test_missing_subcommand_is_usage_error():
    proc = run()
    assert proc.returncode == 1


def test_unknown_option_is_usage_error():
    proc = run("rank", "--no-such-flag")
    assert proc.returncode == 1


def test_lexicon_stats():
    proc = run("lexicon", "stats", "--swn", str(FIXTURES / "swn_fixture.txt"),
               "--word", "good")
    assert proc.returncode == 0
    stats = json.loads(proc.stdout)
    assert stats["records"] == 36
    assert stats["lemmas"] == 52
    assert stats["words"][0]["pos"] == pytest.approx(0.5)


def test_missing_lexicon_is_data_error():
    missing = str(FIXTURES / "no_such_lexicon.txt")
    proc = run("lexicon", "stats", "--swn", missing)
    assert proc.returncode == 2
    assert missing in proc.stderr


def test_rank_emits_a_permutation(config_path, tmp_path):
    out = tmp_path / "order.csv"
    proc = run("rank", "--config", config_path, "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "rank,id"
    rows = [line.split(",") for line in lines[1:]]
    assert [int(r[0]) for r in rows] == list(range(30))
    assert sorted(int(r[1]) for r in rows) == list(range(30))


def test_features_export_normalized(config_path):
    proc = run("features", "export", "--config", config_path, "--normalized")
    assert proc.returncode == 0, proc.stderr
    lines = proc.stdout.strip().splitlines()
    assert lines[0] == "id,l,P,N,O,AD,P_l,N_l,O_l,AD_l"
    assert len(lines) == 31
    values = [float(v) for v in lines[1].split(",")[1:]]
    assert all(abs(v) <= 1 + 1e-9 for v in values)


def test_train_reports_result_json(config_path):
    proc = run("train", "--config", config_path, "--seed", "3")
    assert proc.returncode == 0, proc.stderr
    result = json.loads(proc.stdout)
    assert result["seed"] == 3
    assert 0.0 <= result["test_acc"] <= 1.0
    rerun = json.loads(run("train", "--config", config_path, "--seed", "3").stdout)
    result.pop("wall_time_sec")
    rerun.pop("wall_time_sec")
    assert rerun == result


def test_train_without_dataset_is_data_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"embeddings_path": "x.txt"}))
    proc = run("train", "--config", str(path))
    assert proc.returncode == 2
    assert "no dataset" in proc.stderr


def test_gradcheck_passes():
    proc = run("gradcheck")
    assert proc.returncode == 0
    report = json.loads(proc.stdout)
    assert report["ok"] is True
    assert report["aux_max_rel_error"] < 1e-4
    assert report["cnn_max_rel_error"] < 1e-4
