"""Shared result models."""

from .identity import CheckStatus, IdentityCheck
from .presentation import (
    AlgebraPresentation,
    BinomialRelation,
    CommutationRelation,
    PolynomialRelation,
)

__all__ = [
    "AlgebraPresentation",
    "BinomialRelation",
    "CheckStatus",
    "CommutationRelation",
    "IdentityCheck",
    "PolynomialRelation",
]
