"""Injective partially defined functions between finite sets.

The combinatorial layer: composition with the canonical maximal domain and
the exact 0/1 partial isometry a partial function gives rise to.  Labels
are strings ordered by insertion; the basis index of a label is its
position, so the induced matrices are exact integer matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IllFormedMap, TargetSourceMismatch
from .operators import OperatorClass

__all__ = ["FiniteSet", "PartialFn", "compose_pdf", "to_partial_isometry", "classify_pdf"]


@dataclass(frozen=True)
class FiniteSet:
    """An ordered finite set of distinct string labels."""

    labels: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be pairwise distinct")
        if not all(isinstance(x, str) for x in labels):
            raise ValueError("labels must be strings")
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label) -> bool:
        return label in self.labels

    def index(self, label: str) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class PartialFn:
    """An injective function defined on a subset of ``source``.

    Non-injective mappings are rejected at construction: they would not
    induce a partial isometry (nor even a contraction).
    """

    source: FiniteSet
    target: FiniteSet
    mapping: dict = field(default_factory=dict)

    def __post_init__(self):
        mapping = dict(self.mapping)
        for key, value in mapping.items():
            if key not in self.source:
                raise IllFormedMap(f"domain label {key!r} not in source")
            if value not in self.target:
                raise IllFormedMap(f"value {value!r} not in target")
        values = list(mapping.values())
        if len(set(values)) != len(values):
            raise IllFormedMap("mapping must be injective")
        # Normalize key order to source order for stable serialization.
        ordered = {b: mapping[b] for b in self.source.labels if b in mapping}
        object.__setattr__(self, "mapping", ordered)

    @classmethod
    def identity(cls, s: FiniteSet) -> "PartialFn":
        return cls(s, s, {b: b for b in s.labels})

    @property
    def domain(self) -> tuple:
        return tuple(self.mapping)

    def __call__(self, label: str) -> str:
        return self.mapping[label]

    def is_total(self) -> bool:
        return len(self.mapping) == len(self.source)

    def is_surjective(self) -> bool:
        return set(self.mapping.values()) == set(self.target.labels)


def compose_pdf(f: PartialFn, g: PartialFn) -> PartialFn:
    """Composition on the canonical maximal domain {c in D_g : g(c) in D_f}."""
    if g.target != f.source:
        raise TargetSourceMismatch("target of g must equal source of f")
    mapping = {c: f(b) for c, b in g.mapping.items() if b in f.mapping}
    return PartialFn(g.source, f.target, mapping)


def to_partial_isometry(f: PartialFn) -> np.ndarray:
    """The 0/1 matrix sending e_b to e_{f(b)} on the domain and to 0 elsewhere."""
    matrix = np.zeros((len(f.target), len(f.source)), dtype=complex)
    for b, a in f.mapping.items():
        matrix[f.target.index(a), f.source.index(b)] = 1.0
    return matrix


def classify_pdf(f: PartialFn) -> OperatorClass:
    """Operator class of the induced partial isometry, read off combinatorially."""
    is_isometry = f.is_total()
    is_coisometry = f.is_surjective()
    is_projection = f.source.labels == f.target.labels and all(
        f(b) == b for b in f.domain
    )
    return OperatorClass(
        is_contraction=True,
        is_projection=is_projection,
        is_isometry=is_isometry,
        is_coisometry=is_coisometry,
        is_partial_isometry=True,
        is_unitary=is_isometry and is_coisometry,
    )
