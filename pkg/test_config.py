from __future__ import annotations

import pytest

from magnus.config import DEFAULT_N, DEFAULT_TRIALS, RunConfig, load_config
from magnus.errors import MagnusError


def test_defaults(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    cfg = load_config()
    assert cfg.N == DEFAULT_N and cfg.trials == DEFAULT_TRIALS and cfg.seed == 0


def test_environment_then_flags(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("MAGNUS_N", "4")
    monkeypatch.setenv("MAGNUS_SEED", "9")
    cfg = load_config(seed=3, trials=None)
    assert cfg.N == 4
    assert cfg.seed == 3
    assert cfg.trials == DEFAULT_TRIALS


def test_dotenv_file_is_read(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    (tmp_path / ".env").write_text("MAGNUS_TRIALS=7\n", encoding="utf-8")
    assert load_config().trials == 7


def test_invalid_values_are_magnus_errors(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    with pytest.raises(MagnusError):
        load_config(N=1)
    with pytest.raises(MagnusError):
        load_config(rank=1)
    with pytest.raises(MagnusError):
        load_config(colour="blue")


def test_results_config_leaves_out_run_plumbing():
    d = RunConfig(workers=4, output="out.json").for_results()
    assert "workers" not in d and "output" not in d
    assert d["N"] == DEFAULT_N
