"""Presentations of algebras by generators and relations.

Purpose: The shared output model for chart, projective, grassmannian, flag and
coinvariant algebras, with deterministic JSON rendering for golden files.
Related tests: tests/core/test_presentation.py
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Sequence

from ..scalars import PhaseScalar


@dataclass(frozen=True)
class CommutationRelation:
    """left * right = phase * right * left."""

    left: str
    right: str
    phase: PhaseScalar

    def to_list(self) -> list[str]:
        return [self.left, self.right, self.phase.canonical()]

    def text(self) -> str:
        phase = self.phase.canonical()
        factor = "" if phase == "1" else f"{phase}*"
        return f"{self.left}*{self.right} = {factor}{self.right}*{self.left}"


def _word(powers: Sequence[tuple[str, int]]) -> str:
    parts = [name if power == 1 else f"{name}^{power}" for name, power in powers]
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class BinomialRelation:
    """lhs - coefficient * rhs = 0 between normal-ordered monomials."""

    lhs: tuple[tuple[str, int], ...]
    rhs: tuple[tuple[str, int], ...]
    coefficient: PhaseScalar

    def text(self) -> str:
        coeff = self.coefficient.canonical()
        rhs = _word(self.rhs)
        if coeff == "1":
            return f"{_word(self.lhs)} - {rhs} = 0"
        if coeff.startswith("-") and " " not in coeff:
            return f"{_word(self.lhs)} + {coeff[1:]}*{rhs} = 0"
        return f"{_word(self.lhs)} - {coeff}*{rhs} = 0"

    def to_dict(self) -> dict[str, Any]:
        return {
            "lhs": dict(self.lhs),
            "rhs": dict(self.rhs),
            "coefficient": self.coefficient.canonical(),
            "text": self.text(),
        }


@dataclass(frozen=True)
class PolynomialRelation:
    """A general relation, already rendered in canonical text."""

    label: str
    text: str

    def to_dict(self) -> dict[str, str]:
        return {"label": self.label, "text": self.text}


@dataclass(frozen=True)
class AlgebraPresentation:
    """Generators plus commutation, binomial and general relations."""

    name: str
    generators: tuple[str, ...]
    commutation: tuple[CommutationRelation, ...]
    binomials: tuple[BinomialRelation, ...] = ()
    relations: tuple[PolynomialRelation, ...] = ()
    nilpotent: bool = False
    metadata: dict[str, Any] = field(default_factory=dict, compare=False)

    def phase(self, left: str, right: str) -> PhaseScalar:
        for relation in self.commutation:
            if (relation.left, relation.right) == (left, right):
                return relation.phase
            if (relation.left, relation.right) == (right, left):
                return relation.phase.inverse()
        if left == right:
            return PhaseScalar.one()
        raise KeyError((left, right))

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "name": self.name,
            "generators": list(self.generators),
            "commutation": [relation.to_list() for relation in self.commutation],
            "binomials": [relation.to_dict() for relation in self.binomials],
        }
        if self.relations:
            data["relations"] = [relation.to_dict() for relation in self.relations]
        if self.nilpotent:
            data["nilpotent"] = True
        if self.metadata:
            data["metadata"] = self.metadata
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def text_lines(self) -> list[str]:
        lines = [f"{self.name}: generators {', '.join(self.generators)}"]
        lines.extend(f"  {relation.text()}" for relation in self.commutation)
        lines.extend(f"  {relation.text()}" for relation in self.binomials)
        lines.extend(f"  [{rel.label}] {rel.text} = 0" for rel in self.relations)
        return lines
