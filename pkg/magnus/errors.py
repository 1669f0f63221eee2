# magnus/errors.py
from __future__ import annotations


class MagnusError(ValueError):
    """Base class for every domain error raised by the package."""


class ShapeMismatch(MagnusError):
    """Operands disagree on rank, degree or truncation."""


class NotInvertible(MagnusError):
    """Zero constant term, singular linear part, or non-unimodular |phi|."""


class GeneratorIndexError(MagnusError):
    pass


class PreconditionError(MagnusError):
    pass


class NotLieElement(MagnusError):
    pass


class WordSyntaxError(MagnusError):
    def __init__(self, msg: str, text: str = "", position: int = 0):
        super().__init__(f"{msg} (at position {position}: {text!r})")
        self.text = text
        self.position = position


def check_same_shape(what: str, *pairs: tuple[object, object]) -> None:
    for a, b in pairs:
        if a != b:
            raise ShapeMismatch(f"{what}: {a} != {b}")
