# magnus/util.py
from __future__ import annotations

import os
import re
import sys
from typing import Iterable, TypeVar

from tqdm import tqdm

T = TypeVar("T")


def slugify(s: str) -> str:
    s = s.lower().strip()
    s = re.sub(r"[^a-z0-9]+", "-", s)
    return s.strip("-")


def quiet() -> bool:
    return os.environ.get("MAGNUS_QUIET", "").strip().lower() in ("1", "true", "yes", "on")


def log(msg: str) -> None:
    # stdout is reserved for results
    if quiet():
        return
    print(msg, file=sys.stderr, flush=True)


def progress(items: Iterable[T], total: int | None = None, desc: str = "") -> Iterable[T]:
    return tqdm(
        items,
        total=total,
        desc=desc,
        file=sys.stderr,
        disable=quiet(),
        leave=False,
        dynamic_ncols=True,
    )


def catalan(p: int) -> int:
    c = 1
    for k in range(p):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c
