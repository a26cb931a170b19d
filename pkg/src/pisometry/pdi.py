"""Partially defined isometries between Hilbert modules.

A partially defined isometry is a pair (map, domain) where the domain is a
closed submodule of the map's source on which the map preserves inner
products.  Composition uses the canonical maximal domain, exactly as for
partially defined functions; unlike the partial isometry contained in a
contraction, the partially defined isometry contained in a contraction
always exists.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPartialIsometry, TargetSourceMismatch
from .linalg import DEFAULT_TOL, Tolerance, adjoint, frobenius
from .modules import (
    ModuleMap,
    Submodule,
    _null_space,
    is_partial_isometry_mod,
    isometric_submodule,
)

__all__ = [
    "PartiallyDefinedIsometry",
    "compose_pdi",
    "contained_pdi",
    "contained_composition_agrees",
    "initial_submodule",
]


@dataclass(frozen=True, eq=False)
class PartiallyDefinedIsometry:
    map: ModuleMap
    domain: Submodule

    def __post_init__(self):
        if self.domain.parent is not self.map.source and not self.domain.parent.same_module(
            self.map.source
        ):
            raise TargetSourceMismatch("domain must be a submodule of the map's source")
        self._check_isometric(DEFAULT_TOL)

    def _check_isometric(self, tol: Tolerance) -> None:
        lifted = self.map.lift()
        for x in self.domain.basis_matrices:
            for y in self.domain.basis_matrices:
                gap = adjoint(lifted @ x) @ (lifted @ y) - adjoint(x) @ y
                if frobenius(gap) > 10 * tol.eq:
                    raise NotPartialIsometry("map is not isometric on the stated domain")

    @classmethod
    def identity(cls, module) -> "PartiallyDefinedIsometry":
        return cls(ModuleMap.identity(module), Submodule.full(module))


def compose_pdi(
    v: PartiallyDefinedIsometry, w: PartiallyDefinedIsometry, tol: Tolerance = DEFAULT_TOL
) -> PartiallyDefinedIsometry:
    """Composition on the canonical maximal domain D_w  intersect  w^{-1}(D_v)."""
    if not w.map.target.same_module(v.map.source):
        raise TargetSourceMismatch("target of w must equal source of v")
    w_lift = w.map.lift()
    q = v.domain._vec_ortho
    # Kernel of (projection onto the lifted complement of D_v) o w on D_w.
    columns = []
    for x in w.domain.basis_matrices:
        image = (w_lift @ x).reshape(-1)
        residual = image - q @ (adjoint(q) @ image.reshape(-1, 1)).reshape(-1)
        columns.append(residual)
    constraints = (
        np.stack(columns, axis=1)
        if columns
        else np.zeros((0, 0), dtype=complex)
    )
    kernel = _null_space(constraints, rcond=1e-9)
    coeff_rows = kernel.T @ w.domain.coeffs
    domain = Submodule.from_coeff_span(w.map.source, coeff_rows)
    return PartiallyDefinedIsometry(v.map.compose(w.map), domain)


def contained_pdi(c: ModuleMap, tol: Tolerance = DEFAULT_TOL) -> PartiallyDefinedIsometry:
    """The partially defined isometry contained in a contraction: (c, P_c)."""
    return PartiallyDefinedIsometry(c, isometric_submodule(c, tol))


def initial_submodule(v: ModuleMap, tol: Tolerance = DEFAULT_TOL) -> Submodule:
    """Range of the initial projection of a partial isometry, as a submodule."""
    ok, pi = is_partial_isometry_mod(v, tol)
    if not ok:
        raise NotPartialIsometry("map is not a partial isometry")
    pi_lift = pi.lift()
    return Submodule.from_matrices(
        v.source, [pi_lift @ g for g in v.source.generators], tol
    )


def contained_composition_agrees(v: ModuleMap, w: ModuleMap, tol: Tolerance = DEFAULT_TOL) -> bool:
    """(vw, P_vw) versus (v, pi_v E) composed with (w, pi_w D).

    True iff the two partially defined isometries have equal domains and
    their maps agree on the common domain.
    """
    if not w.target.same_module(v.source):
        raise TargetSourceMismatch("maps are not composable")
    lhs = contained_pdi(v.compose(w), tol)
    rhs = compose_pdi(
        PartiallyDefinedIsometry(v, initial_submodule(v, tol)),
        PartiallyDefinedIsometry(w, initial_submodule(w, tol)),
        tol,
    )
    if not lhs.domain.equals(rhs.domain, tol):
        return False
    lhs_lift = lhs.map.lift()
    rhs_lift = rhs.map.lift()
    for x in lhs.domain.basis_matrices:
        if frobenius((lhs_lift - rhs_lift) @ x) > 10 * tol.eq:
            return False
    return True
