# magnus/config.py
from __future__ import annotations

import os
from typing import Any, Optional

from dotenv import find_dotenv, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from magnus.errors import MagnusError

DEFAULT_N = 5
DEFAULT_TRIALS = 200
DEFAULT_SEED = 0
DEFAULT_MAX_WORD_LENGTH = 6

_ENV = {
    "N": "MAGNUS_N",
    "seed": "MAGNUS_SEED",
    "trials": "MAGNUS_TRIALS",
    "workers": "MAGNUS_WORKERS",
    "quiet": "MAGNUS_QUIET",
}


class RunConfig(BaseModel):
    """Everything that determines a run's output bytes."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    rank: int = Field(3, ge=2)
    genus: int = Field(1, ge=1)
    N: int = Field(DEFAULT_N, ge=2)
    trials: int = Field(DEFAULT_TRIALS, ge=1)
    seed: int = DEFAULT_SEED
    max_word_length: int = Field(DEFAULT_MAX_WORD_LENGTH, ge=1)
    workers: int = Field(1, ge=1)
    quiet: bool = False
    suite: Optional[str] = None
    identity: Optional[str] = None
    input: Optional[str] = None
    output: Optional[str] = None

    def for_results(self) -> dict[str, Any]:
        """The part of the config written into result files; workers and paths never change results."""
        return self.model_dump(exclude={"workers", "quiet", "input", "output"})


def env_defaults() -> dict[str, Any]:
    """MAGNUS_* variables, after loading a .env file if one is present."""
    load_dotenv(find_dotenv(usecwd=True))
    out: dict[str, Any] = {}
    for field, var in _ENV.items():
        raw = os.getenv(var)
        if raw is None or not raw.strip():
            continue
        out[field] = raw.strip()
    return out


def load_config(**overrides: Any) -> RunConfig:
    """Environment defaults, then non-None overrides (command-line flags win)."""
    values = env_defaults()
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return RunConfig.model_validate(values)
    except ValidationError as e:
        raise MagnusError(f"invalid configuration: {e}") from None
