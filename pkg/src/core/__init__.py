"""Core scalars, errors and result models for qtoric."""

from .errors import QToricError
from .models import AlgebraPresentation, IdentityCheck
from .scalars import PhaseScalar, ThetaSpec

__all__ = ["AlgebraPresentation", "IdentityCheck", "PhaseScalar", "QToricError", "ThetaSpec"]
