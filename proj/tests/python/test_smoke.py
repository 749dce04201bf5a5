"""End-to-end checks of the senticl extension module on the bundled fixtures."""

import os
import pathlib

import pytest

import senticl

FIXTURES = pathlib.Path(os.environ["SENTICL_FIXTURES"])


def fixture_config(**overrides):
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
        "repeats": 2,
        "base_seed": 7,
        "aux_epochs": 3,
    }
    config.update(overrides)
    return config


def test_lexicon_lookup():
    lex = senticl.load_lexicon(str(FIXTURES / "swn_fixture.txt"))
    assert len(lex) == 52
    assert lex.record_count == 36
    good = lex.lookup("good")
    assert good.positivity == pytest.approx(0.5)
    assert good.negativity == pytest.approx(0.125)
    assert good.objectivity == pytest.approx(0.375)
    assert lex.lookup("GOOD").positivity == good.positivity
    assert lex.lookup("not-a-word") is None


def test_lexicon_missing_file_raises_value_error():
    with pytest.raises(senticl.DataError):
        senticl.load_lexicon(str(FIXTURES / "no_such_lexicon.txt"))
    assert issubclass(senticl.DataError, ValueError)


def test_dataset_shapes_and_parse():
    ds = senticl.load_sst_dir(str(FIXTURES / "sst_fixture"))
    assert (len(ds.train), len(ds.dev), len(ds.test)) == (30, 8, 8)
    assert all(0 <= e.label <= 4 for e in ds.train)
    example = senticl.parse_tree("(3 (2 good) (2 movie))")
    assert example.tokens == ["good", "movie"]
    assert example.label == 3


def test_feature_matrix_identities():
    lex = senticl.load_lexicon(str(FIXTURES / "swn_fixture.txt"))
    ds = senticl.load_sst_dir(str(FIXTURES / "sst_fixture"))
    m = senticl.feature_matrix(lex, ds.train)
    assert m.shape == (30, 9)
    # O + P + N == token count, AD == |P - N|
    for row in m:
        l, p, n, o, ad = row[0], row[1], row[2], row[3], row[4]
        assert o + p + n == pytest.approx(l, abs=1e-9)
        assert ad == pytest.approx(abs(p - n), abs=1e-9)
    normalized = senticl.normalized_feature_matrix(lex, ds.train, ds.train)
    assert abs(normalized.mean(axis=0)).max() < 1e-9
    assert abs(normalized).max() <= 1 + 1e-9


def test_rank_and_schedule():
    assert senticl.rank_by_score([0.3, 0.1, 0.2]) == [1, 2, 0]
    assert sorted(senticl.rank_shuffled(10, seed=3)) == list(range(10))
    assert senticl.rank_shuffled(10, seed=3) == senticl.rank_shuffled(10, seed=3)

    schedule = senticl.make_schedule([3, 1, 0, 2], bs=3, mode="baby_steps")
    assert schedule["phases"] == [[3, 1, 0], [2]]
    assert schedule["bs"] == 3
    with pytest.raises(ValueError):
        senticl.make_schedule([0, 1], bs=2, mode="not_a_mode")


def test_run_single_is_deterministic():
    config = fixture_config()
    first = senticl.run_single(config, seed=7)
    second = senticl.run_single(config, seed=7)
    first.pop("wall_time_sec")
    second.pop("wall_time_sec")
    assert first == second
    assert 0.0 <= first["test_acc"] <= 1.0
    assert 0.0 <= first["dev_acc"] <= 1.0
    assert first["seed"] == 7


def test_run_single_sentiwordnet_reports_aux():
    result = senticl.run_single(fixture_config(strategy="sentiwordnet"), seed=1)
    assert 0.0 <= result["aux"]["test_acc"] <= 1.0
    assert result["phase_count"] == 4  # ceil(30 / 8)


def test_run_comparison_pairs_seeds():
    config = fixture_config(strategies=["sentence_length", "none"])
    reports = senticl.run_comparison(config)
    assert [r["strategy"] for r in reports] == ["sentence_length", "none"]
    for report in reports:
        assert [run["seed"] for run in report["runs"]] == [7, 8]
        mean = sum(run["test_acc"] for run in report["runs"]) / 2
        assert report["mean_test_acc"] == pytest.approx(mean, abs=0)


def test_bad_config_key_raises():
    with pytest.raises(ValueError, match="not_a_key"):
        senticl.run_single(fixture_config(not_a_key=1), seed=1)


def test_gradients_match_finite_differences():
    assert senticl.gradcheck_aux(seed=5) < 1e-4
    assert senticl.gradcheck_cnn(seed=5) < 1e-4
