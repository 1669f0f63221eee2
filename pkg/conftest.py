# conftest.py
from __future__ import annotations

import random

import pytest

from magnus.expansion import standard_expansion


@pytest.fixture(autouse=True)
def _quiet(monkeypatch):
    monkeypatch.setenv("MAGNUS_QUIET", "1")
    for var in ("MAGNUS_N", "MAGNUS_SEED", "MAGNUS_TRIALS", "MAGNUS_WORKERS"):
        monkeypatch.delenv(var, raising=False)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def std3():
    return standard_expansion(3, 4)


@pytest.fixture
def std2():
    return standard_expansion(2, 4)
