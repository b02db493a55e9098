"""Exception types raised by confmat.

Every error derives from :class:`ConfmatError` so callers (the CLI in
particular) can separate construction failures from programming errors.
"""

from __future__ import annotations


class ConfmatError(Exception):
    """Base class for all library errors."""


class ParseError(ConfmatError, ValueError):
    """Malformed scalar expression; ``offset`` is the byte offset of the fault."""

    def __init__(self, message: str, text: str, offset: int) -> None:
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at byte offset {offset} in {text!r}")


class MissingParameter(ConfmatError, KeyError):
    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"no value assigned to parameter {name!r}")

    def __str__(self) -> str:
        return self.args[0]


class NonUnimodularValue(ConfmatError, ValueError):
    pass


class NotPrime(ConfmatError, ValueError):
    pass


class TooLarge(ConfmatError, ValueError):
    pass


class BadOrder(ConfmatError, ValueError):
    pass


class NotConference(ConfmatError, ValueError):
    pass


class NotSkewConference(ConfmatError, ValueError):
    pass


class NotHadamard(ConfmatError, ValueError):
    pass


class NotHermitian(ConfmatError, ValueError):
    pass


class NotSeidel(ConfmatError, ValueError):
    pass


class ZeroEntryInFirstRow(ConfmatError, ValueError):
    pass


class OrderMismatch(ConfmatError, ValueError):
    pass


class RankMismatch(ConfmatError, ValueError):
    pass


class ClassificationFailed(ConfmatError, ValueError):
    def __init__(self, message: str, histogram: dict[str, int]) -> None:
        self.histogram = histogram
        super().__init__(f"{message}; entry histogram {histogram}")
