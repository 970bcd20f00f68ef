"""Identity checks produced by the verification suites.

Purpose: Pair the two sides of an algebraic identity with the indices that
name it, so reports can decide pass/fail exactly and re-evaluate both sides
at a numeric θ.
Related tests: tests/core/test_identity.py
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto
from typing import Any


class CheckStatus(Enum):
    """Outcome of one identity check."""

    PASS = auto()
    FAIL = auto()
    INFO = auto()


@dataclass
class IdentityCheck:
    """``lhs == rhs`` for one instance of a named identity.

    Informational checks (negative controls) are reported but never fail a
    suite.
    """

    identity: str
    lhs: Any
    rhs: Any
    witness: Any = None
    informational: bool = False

    def __post_init__(self) -> None:
        if not self.identity:
            raise ValueError("identity cannot be empty")

    @property
    def holds(self) -> bool:
        return bool(self.lhs == self.rhs)

    @property
    def status(self) -> CheckStatus:
        if self.informational:
            return CheckStatus.INFO
        return CheckStatus.PASS if self.holds else CheckStatus.FAIL

    @property
    def passed(self) -> bool:
        return self.status is not CheckStatus.FAIL

    def label(self) -> str:
        if self.witness is None:
            return self.identity
        return f"{self.identity}{self.witness}"
