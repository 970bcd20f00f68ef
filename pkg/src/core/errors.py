"""Error types shared by the qtoric library.

Purpose: Carry a message plus an optional witness (the offending indices,
cone pair or lattice point) so the CLI can report why an input or identity
was rejected.
Related tests: tests/core/test_errors.py
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any


@dataclass
class QToricError(Exception):
    """Base class for library errors."""

    message: str
    witness: Any = None
    source: Path | None = None

    def __str__(self) -> str:
        parts = [self.message]
        if self.witness is not None:
            parts.append(f"Witness: {self.witness}")
        if self.source:
            parts.append(f"File: {self.source}")
        return " - ".join(parts)


class ScalarError(QToricError):
    """Raised for out-of-range phase indices or non-invertible scalars."""


class LatticeError(QToricError):
    """Raised when a cone or lattice computation receives unusable input."""


class FanError(QToricError):
    """Raised when a cone collection violates the fan axioms."""


class AlgebraError(QToricError):
    """Raised for mismatched ranks, sizes or multi-index lengths."""


class VerificationError(QToricError):
    """Raised when an identity required by a construction does not hold."""


class InputError(QToricError):
    """Raised when a user supplied file or argument cannot be used."""
