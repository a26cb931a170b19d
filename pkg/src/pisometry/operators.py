"""Partial isometries between finite-dimensional Hilbert spaces.

Classification of operators, the four-way product criterion, the maximal
isometric subspace of a contraction, the partial isometry contained in a
contraction, and the dot composition ``v . w = v w p_{v,w}`` that is always
a partial isometry and is associative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotContraction, NotPartialIsometry, ShapeMismatch
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    Tolerance,
    adjoint,
    as_matrix,
    eigenspace_at_one,
    frobenius,
    orthogonal_projection,
    spectral_norm,
)

__all__ = [
    "OperatorClass",
    "ProductCriterion",
    "ContainedPI",
    "classify",
    "product_criterion",
    "isometric_subspace",
    "contained_partial_isometry",
    "dot_compose",
]


@dataclass(frozen=True)
class OperatorClass:
    is_contraction: bool
    is_projection: bool
    is_isometry: bool
    is_coisometry: bool
    is_partial_isometry: bool
    is_unitary: bool

    def describe(self) -> str:
        if self.is_unitary:
            return "unitary"
        names = []
        if self.is_projection:
            names.append("projection")
        if self.is_isometry:
            names.append("isometry")
        if self.is_coisometry:
            names.append("coisometry")
        if self.is_partial_isometry:
            names.append("partial isometry")
        elif self.is_contraction:
            names.append("contraction; not a partial isometry")
        if not self.is_contraction:
            names.append("not a contraction")
        return "; ".join(names) if names else "general operator"


@dataclass(frozen=True)
class ProductCriterion:
    """The four equivalent conditions on a product of partial isometries.

    All four booleans are provably equal; they are computed and stored
    independently so the test suite can detect a violation.
    """

    product_is_pi: bool
    idempotent: bool
    projection: bool
    projections_commute: bool

    def agree(self) -> bool:
        return (
            self.product_is_pi == self.idempotent == self.projection == self.projections_commute
        )


@dataclass(frozen=True, eq=False)
class ContainedPI:
    """Maximal isometric data of a contraction c.

    ``p_c`` projects onto the maximal subspace where c preserves norms,
    ``v = c p_c`` is the partial isometry contained in c.
    """

    p_c: np.ndarray
    v: np.ndarray
    subspace: Subspace


def classify(a, tol: Tolerance = DEFAULT_TOL) -> OperatorClass:
    """Classify an operator by direct evaluation of the defining identities."""
    a = as_matrix(a)
    rows, cols = a.shape
    ah = adjoint(a)
    # Degenerate shapes need no special casing: maps to or from the zero
    # space are partial isometries, but 0 x n is an isometry only for n = 0.
    is_contraction = spectral_norm(a, tol) <= 1.0 + tol.eq
    is_projection = rows == cols and frobenius(ah @ a - a) <= tol.eq
    is_partial_isometry = frobenius(a @ ah @ a - a) <= tol.eq
    is_isometry = frobenius(ah @ a - np.eye(cols)) <= tol.eq
    is_coisometry = frobenius(a @ ah - np.eye(rows)) <= tol.eq
    return OperatorClass(
        is_contraction=is_contraction,
        is_projection=is_projection,
        is_isometry=is_isometry,
        is_coisometry=is_coisometry,
        is_partial_isometry=is_partial_isometry,
        is_unitary=is_isometry and is_coisometry,
    )


def _require_partial_isometry(a: np.ndarray, tol: Tolerance, name: str) -> None:
    if not classify(a, tol).is_partial_isometry:
        raise NotPartialIsometry(f"{name} is not a partial isometry within tolerance")


def product_criterion(v, w, tol: Tolerance = DEFAULT_TOL) -> ProductCriterion:
    """Evaluate the four equivalent conditions for vw being a partial isometry.

    (1) vw satisfies the partial isometry identity,
    (2) e := v*v ww* is an idempotent,
    (3) e is additionally self-adjoint (a projection),
    (4) the projections v*v and ww* commute.
    """
    v = as_matrix(v)
    w = as_matrix(w)
    if v.shape[1] != w.shape[0]:
        raise ShapeMismatch(f"cannot compose {v.shape} with {w.shape}")
    _require_partial_isometry(v, tol, "v")
    _require_partial_isometry(w, tol, "w")

    vw = v @ w
    p = adjoint(v) @ v
    q = w @ adjoint(w)
    e = p @ q

    product_is_pi = frobenius(vw @ adjoint(vw) @ vw - vw) <= tol.eq
    idempotent = frobenius(e @ e - e) <= tol.eq
    projection = idempotent and frobenius(e - adjoint(e)) <= tol.eq
    projections_commute = frobenius(p @ q - q @ p) <= tol.eq
    return ProductCriterion(product_is_pi, idempotent, projection, projections_commute)


def isometric_subspace(c, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Maximal subspace on which the contraction c preserves norms.

    The eigenspace of c*c at eigenvalue 1 (within the tol.eig1 window).
    """
    c = as_matrix(c)
    if spectral_norm(c, tol) > 1.0 + tol.eq:
        raise NotContraction("operator norm exceeds 1")
    gram = adjoint(c) @ c
    gram = (gram + adjoint(gram)) / 2.0
    return eigenspace_at_one(gram, tol)


def contained_partial_isometry(c, tol: Tolerance = DEFAULT_TOL) -> ContainedPI:
    """The partial isometry contained in a contraction: c restricted to where it is isometric."""
    c = as_matrix(c)
    subspace = isometric_subspace(c, tol)
    p_c = orthogonal_projection(subspace)
    return ContainedPI(p_c=p_c, v=c @ p_c, subspace=subspace)


def dot_compose(v, w, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Dot composition of partial isometries: the partial isometry contained in vw."""
    v = as_matrix(v)
    w = as_matrix(w)
    if v.shape[1] != w.shape[0]:
        raise ShapeMismatch(f"cannot compose {v.shape} with {w.shape}")
    _require_partial_isometry(v, tol, "v")
    _require_partial_isometry(w, tol, "w")
    return contained_partial_isometry(v @ w, tol).v
