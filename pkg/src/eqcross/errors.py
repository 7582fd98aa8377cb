"""Exception types and the validity report shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional


class EqCrossError(Exception):
    """Base class for all library errors."""


class StructuralError(EqCrossError, ValueError):
    """Malformed input: wrong table dimensions, mismatched groups, non-composable data."""


class PreconditionError(EqCrossError, ValueError):
    """A documented precondition does not hold; carries a witness when one exists."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message if witness is None else f"{message} (witness {witness!r})")
        self.witness = witness


class InvariantViolation(EqCrossError):
    """An object that should be valid by construction failed an internal consistency check."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message if witness is None else f"{message} (witness {witness!r})")
        self.witness = witness


class SearchLimitError(EqCrossError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: search space {size} exceeds limit {limit}")
        self.size = size
        self.limit = limit


@dataclass(frozen=True)
class Report:
    """Outcome of a law check. Truthy iff every law held.

    ``law`` names the first violated law and ``witness`` is the argument tuple
    at which it fails.
    """

    ok: bool
    law: Optional[str] = None
    witness: Optional[tuple] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls) -> "Report":
        return cls(True)

    @classmethod
    def failed(cls, law: str, witness: tuple, detail: str = "") -> "Report":
        return cls(False, law, tuple(witness), detail)

    def __str__(self) -> str:
        if self.ok:
            return "VALID"
        s = f"INVALID: {self.law} fails at {self.witness}"
        return f"{s} ({self.detail})" if self.detail else s
