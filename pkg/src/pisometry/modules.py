"""Hilbert modules over finite-dimensional C*-algebras, in lifted coordinates.

The coefficient algebra is a finite direct sum of full matrix blocks acting
on G = C^n.  A module element x is stored directly as its lifted operator
L_x : C^n -> C^m with B-valued inner product <x,y> = L_x* L_y; a bounded
right-linear map c lifts to the unique scalar operator C with C L_x = L_{cx}
and ||C|| = ||c||.  All module-level statements thereby reduce to
Hilbert-space statements about the lifts.

Modules are normalized so that the columns of their generators span C^m
("minimal lift"); every constructor below maintains this.  At finite
dimension every closed submodule is complemented, so ``NotComplemented``
is unreachable in practice; it is kept for interface fidelity.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    IllFormedMap,
    NotComplemented,
    NotContraction,
    NotInAlgebra,
    NotPartialIsometry,
    ShapeMismatch,
    TargetSourceMismatch,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    adjoint,
    as_matrix,
    eigenspace_at_one,
    frobenius,
    orthogonal_projection,
    spectral_norm,
)

__all__ = [
    "CStarAlgebra",
    "HilbertModule",
    "ModuleElement",
    "ModuleMap",
    "Submodule",
    "lift",
    "module_inner",
    "isometric_submodule",
    "is_partial_isometry_mod",
    "product_invariance_criterion",
    "complement",
    "contained_partial_isometry_mod",
    "close_under_algebra",
]


def _null_space(m: np.ndarray, rcond: float = 1e-10) -> np.ndarray:
    """Orthonormal basis of the kernel of m, as columns."""
    m = np.asarray(m, dtype=complex)
    cols = m.shape[1]
    if m.shape[0] == 0 or cols == 0:
        return np.eye(cols, dtype=complex)
    _, s, vh = np.linalg.svd(m)
    cutoff = rcond * max(1.0, float(s[0]) if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj().T


def _column_space(m: np.ndarray, rcond: float = 1e-10) -> np.ndarray:
    """Orthonormal basis of the column space of m, as columns."""
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    cutoff = rcond * max(1.0, float(s[0]))
    rank = int(np.sum(s > cutoff))
    return u[:, :rank]


@dataclass(frozen=True)
class CStarAlgebra:
    """Finite direct sum of full matrix blocks, represented on G = C^n."""

    block_sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.block_sizes)
        if not sizes or any(s < 1 for s in sizes):
            raise ValueError("block sizes must be positive integers")
        object.__setattr__(self, "block_sizes", sizes)

    @property
    def dim(self) -> int:
        return sum(self.block_sizes)

    @cached_property
    def block_slices(self) -> tuple:
        slices, offset = [], 0
        for size in self.block_sizes:
            slices.append(slice(offset, offset + size))
            offset += size
        return tuple(slices)

    @cached_property
    def basis(self) -> tuple:
        """Matrix units of every block, embedded into n x n."""
        n = self.dim
        out = []
        for sl in self.block_slices:
            for r in range(sl.start, sl.stop):
                for s in range(sl.start, sl.stop):
                    unit = np.zeros((n, n), dtype=complex)
                    unit[r, s] = 1.0
                    out.append(unit)
        return tuple(out)

    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    def block_mask(self) -> np.ndarray:
        mask = np.zeros((self.dim, self.dim), dtype=bool)
        for sl in self.block_slices:
            mask[sl, sl] = True
        return mask

    def off_block_norm(self, mat: np.ndarray) -> float:
        return frobenius(np.where(self.block_mask(), 0.0, mat))

    def require_member(self, mat, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
        mat = as_matrix(mat)
        if mat.shape != (self.dim, self.dim):
            raise ShapeMismatch(f"expected {self.dim}x{self.dim}, got {mat.shape}")
        if self.off_block_norm(mat) > tol.eq * max(1.0, frobenius(mat)):
            raise NotInAlgebra("matrix has mass outside the block structure")
        return mat


@dataclass(frozen=True, eq=False)
class HilbertModule:
    """Scalar-linear span of lifted elements L_x, closed under the algebra.

    ``generators`` is a linearly independent tuple of m x n matrices whose
    span is invariant under right multiplication by algebra elements and
    whose pairwise products L_x* L_y lie in the algebra.
    """

    algebra: CStarAlgebra
    generators: tuple

    def __post_init__(self):
        gens = tuple(as_matrix(g) for g in self.generators)
        n = self.algebra.dim
        if gens:
            m = gens[0].shape[0]
            if any(g.shape != (m, n) for g in gens):
                raise ShapeMismatch("all generators must share the shape m x n")
        object.__setattr__(self, "generators", gens)
        self._validate()

    def _validate(self, tol: Tolerance = DEFAULT_TOL) -> None:
        k = len(self.generators)
        if k == 0:
            return
        if np.linalg.matrix_rank(self.vec_basis, tol=1e-10) != k:
            raise ValueError("generators are linearly dependent")
        if _column_space(np.hstack(self.generators)).shape[1] != self.lift_dim:
            raise ValueError("generator columns do not span the lift space")
        for g in self.generators:
            for b in self.algebra.basis:
                if not self.contains_matrix(g @ b, tol):
                    raise ValueError("span is not closed under the algebra action")
        for x in self.generators:
            for y in self.generators:
                self.algebra.require_member(adjoint(x) @ y, tol)

    @property
    def dim(self) -> int:
        """Scalar dimension of the span."""
        return len(self.generators)

    @property
    def lift_dim(self) -> int:
        return self.generators[0].shape[0] if self.generators else 0

    @cached_property
    def vec_basis(self) -> np.ndarray:
        """Columns vec(L_j), shape (m*n, k)."""
        k = len(self.generators)
        n = self.algebra.dim
        return np.stack([g.reshape(-1) for g in self.generators], axis=1) if k else np.zeros(
            (self.lift_dim * n, 0), dtype=complex
        )

    @cached_property
    def _vec_pinv(self) -> np.ndarray:
        return np.linalg.pinv(self.vec_basis, rcond=1e-12)

    def element(self, coords) -> "ModuleElement":
        coords = np.asarray(coords, dtype=complex).reshape(-1)
        if coords.shape[0] != self.dim:
            raise ShapeMismatch(f"expected {self.dim} coordinates, got {coords.shape[0]}")
        return ModuleElement(self, coords)

    def matrix_of(self, coords) -> np.ndarray:
        coords = np.asarray(coords, dtype=complex).reshape(-1)
        return np.tensordot(coords, np.stack(self.generators), axes=1) if self.dim else np.zeros(
            (self.lift_dim, self.algebra.dim), dtype=complex
        )

    def coords_of(self, matrix, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
        """Coordinates of a lifted matrix in the generator basis.

        Raises IllFormedMap when the matrix is not in the span.
        """
        matrix = as_matrix(matrix)
        vec = matrix.reshape(-1)
        coords = self._vec_pinv @ vec
        residual = frobenius(self.vec_basis @ coords - vec)
        if residual > tol.eq * max(1.0, frobenius(vec)):
            raise IllFormedMap("matrix does not lie in the module span")
        return coords

    def contains_matrix(self, matrix, tol: Tolerance = DEFAULT_TOL) -> bool:
        try:
            self.coords_of(matrix, tol)
        except IllFormedMap:
            return False
        return True

    def same_module(self, other: "HilbertModule") -> bool:
        return (
            self is other
            or (
                self.algebra.block_sizes == other.algebra.block_sizes
                and self.lift_dim == other.lift_dim
                and self.dim == other.dim
                and all(
                    np.allclose(a, b, atol=1e-12) for a, b in zip(self.generators, other.generators)
                )
            )
        )

    @classmethod
    def full(cls, algebra: CStarAlgebra, multiplicities) -> "HilbertModule":
        """The module (+)_i M_{k_i x n_i} with matrix-unit generators."""
        mults = tuple(int(k) for k in multiplicities)
        if len(mults) != len(algebra.block_sizes) or any(k < 0 for k in mults):
            raise ValueError("need one nonnegative multiplicity per block")
        m = sum(mults)
        n = algebra.dim
        gens = []
        row_offset = 0
        for mult, sl in zip(mults, algebra.block_slices):
            for r in range(mult):
                for s in range(sl.start, sl.stop):
                    g = np.zeros((m, n), dtype=complex)
                    g[row_offset + r, s] = 1.0
                    gens.append(g)
            row_offset += mult
        return cls(algebra, tuple(gens))

    @classmethod
    def from_spanning(cls, algebra: CStarAlgebra, matrices, tol: Tolerance = DEFAULT_TOL):
        """Module from a spanning set: close under the algebra, compress the lift."""
        closed = close_under_algebra(algebra, matrices)
        compressed = _compress_lift(algebra, closed, tol)
        return cls(algebra, tuple(compressed))


def close_under_algebra(algebra: CStarAlgebra, matrices) -> list:
    """Smallest scalar span containing the matrices and closed under right
    multiplication by the algebra; returned as an orthonormalized basis."""
    mats = [as_matrix(m) for m in matrices]
    if not mats:
        return []
    shape = mats[0].shape
    vecs = np.stack([m.reshape(-1) for m in mats], axis=1)
    basis = _column_space(vecs)
    while True:
        candidates = [basis]
        for j in range(basis.shape[1]):
            mat = basis[:, j].reshape(shape)
            for b in algebra.basis:
                candidates.append((mat @ b).reshape(-1, 1))
        enlarged = _column_space(np.hstack(candidates))
        if enlarged.shape[1] == basis.shape[1]:
            return [basis[:, j].reshape(shape) for j in range(basis.shape[1])]
        basis = enlarged


def _compress_lift(algebra: CStarAlgebra, matrices, tol: Tolerance) -> list:
    """Restrict the lift space to the columns actually hit by the span.

    Column spaces belonging to different algebra blocks must be mutually
    orthogonal (otherwise the inner products would leave the algebra).
    """
    if not matrices:
        return []
    m = matrices[0].shape[0]
    block_bases = []
    for sl in algebra.block_slices:
        cols = np.hstack([mat[:, sl] for mat in matrices]) if matrices else np.zeros((m, 0))
        block_bases.append(_column_space(cols))
    for i, qi in enumerate(block_bases):
        for qj in block_bases[i + 1 :]:
            if qi.size and qj.size and frobenius(adjoint(qi) @ qj) > tol.eq:
                raise NotInAlgebra("column spaces of different blocks overlap")
    q = np.hstack(block_bases) if block_bases else np.zeros((m, 0), dtype=complex)
    return [adjoint(q) @ mat for mat in matrices]


@dataclass(frozen=True, eq=False)
class ModuleElement:
    """A module element, identified with its lifted operator L_x."""

    module: HilbertModule
    coords: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return self.module.matrix_of(self.coords)


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """A scalar-linear (hence right-linear, if liftable) map between modules.

    ``action`` expresses the images of the source generators in target
    coordinates: c(x_j) = sum_i action[i, j] y_i.
    """

    source: HilbertModule
    target: HilbertModule
    action: np.ndarray

    def __post_init__(self):
        action = np.asarray(self.action, dtype=complex)
        if action.shape != (self.target.dim, self.source.dim):
            raise ShapeMismatch(
                f"action shape {action.shape} does not match "
                f"({self.target.dim}, {self.source.dim})"
            )
        if self.source.algebra.block_sizes != self.target.algebra.block_sizes:
            raise TargetSourceMismatch("source and target must share the algebra")
        object.__setattr__(self, "action", action)

    @cached_property
    def _lift(self) -> np.ndarray:
        gens = self.source.generators
        if not gens:
            return np.zeros((self.target.lift_dim, self.source.lift_dim), dtype=complex)
        a = np.hstack(gens)
        b = np.hstack([self.target.matrix_of(self.action[:, j]) for j in range(len(gens))])
        c = b @ np.linalg.pinv(a, rcond=1e-12)
        if frobenius(c @ a - b) > DEFAULT_TOL.eq * max(1.0, frobenius(b)):
            raise IllFormedMap("no well-defined lifted operator exists")
        return c

    def lift(self) -> np.ndarray:
        """The operator C on the lift spaces with C L_x = L_{cx}."""
        return self._lift

    @classmethod
    def from_lift(
        cls, source: HilbertModule, target: HilbertModule, c, tol: Tolerance = DEFAULT_TOL
    ) -> "ModuleMap":
        """Module map induced by a lift C; requires C L_x in the target span."""
        c = as_matrix(c)
        if c.shape != (target.lift_dim, source.lift_dim):
            raise ShapeMismatch(f"lift shape {c.shape} incompatible with the modules")
        cols = [target.coords_of(c @ g, tol) for g in source.generators]
        action = (
            np.stack(cols, axis=1)
            if cols
            else np.zeros((target.dim, 0), dtype=complex)
        )
        return cls(source, target, action)

    @classmethod
    def identity(cls, module: HilbertModule) -> "ModuleMap":
        return cls(module, module, np.eye(module.dim, dtype=complex))

    @classmethod
    def zero(cls, source: HilbertModule, target: HilbertModule) -> "ModuleMap":
        return cls(source, target, np.zeros((target.dim, source.dim), dtype=complex))

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        if not self.source.same_module(other.target):
            raise TargetSourceMismatch("target of the inner map must equal source of the outer")
        return ModuleMap(other.source, self.target, self.action @ other.action)

    def apply(self, x: ModuleElement) -> ModuleElement:
        if not x.module.same_module(self.source):
            raise TargetSourceMismatch("element does not live in the source module")
        return ModuleElement(self.target, self.action @ x.coords)

    def norm(self, tol: Tolerance = DEFAULT_TOL) -> float:
        return spectral_norm(self.lift(), tol)

    def is_contraction(self, tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.norm(tol) <= 1.0 + tol.eq


@dataclass(frozen=True, eq=False)
class Submodule:
    """A closed submodule, carried by a scalar basis inside the parent span.

    ``coeffs`` has one row per basis element, holding its coordinates in the
    parent's generator basis; rows are orthonormalized.
    """

    parent: HilbertModule
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.ndim != 2 or coeffs.shape[1] != self.parent.dim:
            raise ShapeMismatch(
                f"coefficient rows must have length {self.parent.dim}, got {coeffs.shape}"
            )
        object.__setattr__(self, "coeffs", coeffs)
        if coeffs.shape[0]:
            gram = coeffs @ coeffs.conj().T
            if frobenius(gram - np.eye(coeffs.shape[0])) > 1e-8:
                raise ValueError("submodule coefficient basis is not orthonormal")
        for mat in self.basis_matrices:
            for b in self.parent.algebra.basis:
                if not self.contains_matrix(mat @ b):
                    raise ValueError("submodule is not closed under the algebra action")

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    @cached_property
    def basis_matrices(self) -> tuple:
        return tuple(self.parent.matrix_of(self.coeffs[i]) for i in range(self.dim))

    @cached_property
    def _vec_ortho(self) -> np.ndarray:
        shape = (self.parent.lift_dim * self.parent.algebra.dim, self.dim)
        if self.dim == 0:
            return np.zeros(shape, dtype=complex)
        return _column_space(
            np.stack([m.reshape(-1) for m in self.basis_matrices], axis=1)
        )

    @cached_property
    def lifted_space(self) -> np.ndarray:
        """Orthonormal basis of span{L_x g : x in submodule, g in G} in C^m."""
        if self.dim == 0:
            return np.zeros((self.parent.lift_dim, 0), dtype=complex)
        return _column_space(np.hstack(self.basis_matrices))

    def contains_matrix(self, matrix, tol: Tolerance = DEFAULT_TOL) -> bool:
        vec = as_matrix(matrix).reshape(-1)
        q = self._vec_ortho
        residual = frobenius(vec - q @ (adjoint(q) @ vec.reshape(-1, 1)).reshape(-1))
        return residual <= max(tol.eq, 10 * tol.ortho) * max(1.0, frobenius(vec))

    def includes(self, other: "Submodule", tol: Tolerance = DEFAULT_TOL) -> bool:
        return all(self.contains_matrix(m, tol) for m in other.basis_matrices)

    def equals(self, other: "Submodule", tol: Tolerance = DEFAULT_TOL) -> bool:
        return self.includes(other, tol) and other.includes(self, tol)

    @classmethod
    def zero(cls, parent: HilbertModule) -> "Submodule":
        return cls(parent, np.zeros((0, parent.dim), dtype=complex))

    @classmethod
    def full(cls, parent: HilbertModule) -> "Submodule":
        return cls(parent, np.eye(parent.dim, dtype=complex))

    @classmethod
    def from_coeff_span(cls, parent: HilbertModule, rows) -> "Submodule":
        rows = np.asarray(rows, dtype=complex).reshape(-1, parent.dim)
        basis = _column_space(rows.T)
        return cls(parent, basis.T)

    @classmethod
    def from_matrices(cls, parent: HilbertModule, matrices, tol: Tolerance = DEFAULT_TOL):
        rows = [parent.coords_of(m, tol) for m in matrices]
        if not rows:
            return cls.zero(parent)
        return cls.from_coeff_span(parent, np.stack(rows))


def lift(c: ModuleMap) -> np.ndarray:
    """The Hilbert-space operator realizing a module map on the lift spaces."""
    return c.lift()


def module_inner(x: ModuleElement, y: ModuleElement, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Algebra-valued inner product <x, y> = L_x* L_y."""
    if not x.module.same_module(y.module):
        raise TargetSourceMismatch("inner product requires elements of the same module")
    product = adjoint(x.matrix) @ y.matrix
    return x.module.algebra.require_member(product, tol)


def _require_contraction(c: ModuleMap, tol: Tolerance) -> None:
    if not c.is_contraction(tol):
        raise NotContraction("module map has norm > 1")


def isometric_submodule(c: ModuleMap, tol: Tolerance = DEFAULT_TOL) -> Submodule:
    """Maximal closed submodule on which the contraction acts isometrically.

    Computed on the lift: x belongs iff every column of L_x lies in the
    eigenspace of C*C at eigenvalue 1.
    """
    _require_contraction(c, tol)
    lifted = c.lift()
    gram = adjoint(lifted) @ lifted
    gram = (gram + adjoint(gram)) / 2.0
    s = eigenspace_at_one(gram, tol)
    residual_proj = np.eye(c.source.lift_dim, dtype=complex) - orthogonal_projection(s)
    columns = [
        (residual_proj @ g).reshape(-1) for g in c.source.generators
    ]
    constraints = np.stack(columns, axis=1) if columns else np.zeros((0, 0), dtype=complex)
    kernel = _null_space(constraints)
    return Submodule(c.source, kernel.T)


def is_partial_isometry_mod(v: ModuleMap, tol: Tolerance = DEFAULT_TOL):
    """Whether a contraction is a partial isometry between modules.

    Checks the partial isometry identity on the lift plus the
    adjointability witness (the lifted adjoint must map target generators
    back into the source span).  On success also returns the initial
    projection pi_v as a module map with lift V*V.
    """
    _require_contraction(v, tol)
    lifted = v.lift()
    if frobenius(lifted @ adjoint(lifted) @ lifted - lifted) > tol.eq:
        return False, None
    for y in v.target.generators:
        if not v.source.contains_matrix(adjoint(lifted) @ y, tol):
            return False, None
    try:
        initial = ModuleMap.from_lift(v.source, v.source, adjoint(lifted) @ lifted, tol)
    except IllFormedMap:
        return False, None
    return True, initial


def product_invariance_criterion(v: ModuleMap, w: ModuleMap, tol: Tolerance = DEFAULT_TOL):
    """Product-is-a-partial-isometry versus invariance of wD under pi_v.

    The two booleans are provably equal; they are computed independently.
    """
    if not w.target.same_module(v.source):
        raise TargetSourceMismatch("maps are not composable")
    v_ok, pi_v = is_partial_isometry_mod(v, tol)
    w_ok, _ = is_partial_isometry_mod(w, tol)
    if not (v_ok and w_ok):
        raise NotPartialIsometry("both factors must be partial isometries")

    product_is_pi, _ = is_partial_isometry_mod(v.compose(w), tol)

    w_lift = w.lift()
    image = Submodule.from_matrices(v.source, [w_lift @ g for g in w.source.generators], tol)
    pi_lift = pi_v.lift()
    range_invariant = all(
        image.contains_matrix(pi_lift @ m, tol) for m in image.basis_matrices
    )
    return product_is_pi, range_invariant


def complement(s: Submodule, tol: Tolerance = DEFAULT_TOL):
    """Orthogonal complement data of a submodule.

    Returns ``(complemented, projection)``; the projection (a module map)
    exists iff parent = s (+) s-perp, which always holds here.
    """
    parent = s.parent
    proj = s.lifted_space @ adjoint(s.lifted_space)
    perp_constraints = (
        np.stack([(proj @ g).reshape(-1) for g in parent.generators], axis=1)
        if parent.generators
        else np.zeros((0, 0), dtype=complex)
    )
    perp_dim = _null_space(perp_constraints).shape[1]
    if s.dim + perp_dim != parent.dim:
        return False, None
    try:
        projection = ModuleMap.from_lift(parent, parent, proj, tol)
    except IllFormedMap:
        return False, None
    return True, projection


def contained_partial_isometry_mod(c: ModuleMap, tol: Tolerance = DEFAULT_TOL) -> ModuleMap:
    """The partial isometry contained in a module contraction: c p_c.

    Raises NotComplemented if the isometric submodule has no projection
    onto it (never at finite dimension; kept for interface fidelity).
    """
    sub = isometric_submodule(c, tol)
    complemented, projection = complement(sub, tol)
    if not complemented:
        raise NotComplemented("isometric submodule is not complemented")
    return c.compose(projection)
