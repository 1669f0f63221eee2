# magnus/check.py
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    """Outcome of one pointwise identity check; falsy when the two sides differ."""

    identity: str
    ok: bool
    lhs: Any = None
    rhs: Any = None
    inputs: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def compare(identity: str, lhs: Any, rhs: Any, **inputs: Any) -> Check:
    return Check(identity=identity, ok=lhs == rhs, lhs=lhs, rhs=rhs, inputs=inputs)


def all_of(identity: str, checks: list[Check], **inputs: Any) -> Check:
    """Combine sub-checks; the first failing one supplies lhs/rhs."""
    for c in checks:
        if not c.ok:
            merged = dict(inputs)
            merged.update(c.inputs)
            merged["failed"] = c.identity
            return Check(identity=identity, ok=False, lhs=c.lhs, rhs=c.rhs, inputs=merged)
    return Check(identity=identity, ok=True, inputs=dict(inputs))
