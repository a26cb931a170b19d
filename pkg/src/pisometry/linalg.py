"""Dense complex matrix arithmetic, Hermitian eigensystems, subspaces.

All operators in the library are plain ``numpy.ndarray`` values of dtype
complex.  This module supplies the adjoint, norms, a cyclic Jacobi
eigensolver for Hermitian matrices, eigenspace extraction at eigenvalue 1,
orthogonal projections, the PSD order, and the global tolerance policy.

Equality of matrices is always measured in the Frobenius norm, which
dominates the operator norm and therefore errs on the strict side.
Contractivity is measured in the genuine operator (spectral) norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConvergenceError,
    NotContractivePositive,
    NotHermitian,
    ShapeMismatch,
)

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "Subspace",
    "as_matrix",
    "adjoint",
    "frobenius",
    "spectral_norm",
    "hermitian_eigensystem",
    "eigenspace_at_one",
    "orthogonal_projection",
    "psd_order_leq",
]


@dataclass(frozen=True)
class Tolerance:
    """Global tolerance policy used by every predicate in the library.

    ``eq``    slack for entrywise / Frobenius-norm equality tests,
    ``eig1``  half-width of the eigenvalue-1 window.  A contraction with a
              singular value in ``(1 - eig1, 1)`` is classified as isometric
              in that direction by design; callers generating test data
              should avoid singular values that close to 1,
    ``ortho`` slack for orthonormality of subspace bases.
    """

    eq: float = 1e-9
    eig1: float = 1e-9
    ortho: float = 1e-10

    def __post_init__(self):
        for name in ("eq", "eig1", "ortho"):
            value = getattr(self, name)
            if not (0.0 <= value <= 1e-3):
                raise ValueError(f"Tolerance.{name} must lie in [0, 1e-3], got {value}")


DEFAULT_TOL = Tolerance()


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting NaN/Inf entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ShapeMismatch(f"expected a 2-d array, got ndim={m.ndim}")
    if m.size and not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise ValueError("matrix entries must be finite")
    return m


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def frobenius(a) -> float:
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a))


def spectral_norm(a, tol: Tolerance = DEFAULT_TOL) -> float:
    """Operator norm, i.e. the largest singular value."""
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    gram = adjoint(a) @ a
    gram = (gram + adjoint(gram)) / 2.0
    eigenvalues, _ = hermitian_eigensystem(gram, tol)
    return math.sqrt(max(float(eigenvalues[0]), 0.0))


def _offdiag_norm(h: np.ndarray) -> float:
    off = h - np.diag(np.diag(h))
    return frobenius(off)


def hermitian_eigensystem(a, tol: Tolerance = DEFAULT_TOL):
    """Full eigensystem of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues real and sorted
    descending and eigenvectors as orthonormal columns.  Raises
    ``NotHermitian`` if the input is not square or not Hermitian within
    ``tol.eq`` (relative to its norm).
    """
    a = as_matrix(a)
    n, m = a.shape
    if n != m:
        raise NotHermitian(f"matrix is {n}x{m}, not square")
    scale = max(1.0, frobenius(a))
    if frobenius(a - adjoint(a)) > tol.eq * scale:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    if n == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=complex)

    h = (a + adjoint(a)) / 2.0
    v = np.eye(n, dtype=complex)
    for _ in range(100):
        if _offdiag_norm(h) <= 1e-13 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = h[p, q]
                if abs(g) <= 1e-300:
                    continue
                alpha = h[p, p].real
                beta = h[q, q].real
                # Phase-align the pivot, then rotate the real 2x2 block.
                phase = g.conjugate() / abs(g)
                phi = 0.5 * math.atan2(2.0 * abs(g), alpha - beta)
                c, s = math.cos(phi), math.sin(phi)
                u2 = np.array([[c, -s], [s * phase, c * phase]], dtype=complex)
                h[:, [p, q]] = h[:, [p, q]] @ u2
                h[[p, q], :] = u2.conj().T @ h[[p, q], :]
                h[p, q] = 0.0
                h[q, p] = 0.0
                h[p, p] = h[p, p].real
                h[q, q] = h[q, q].real
                v[:, [p, q]] = v[:, [p, q]] @ u2
    else:
        raise ConvergenceError("Jacobi sweep limit exceeded")

    eigenvalues = np.diag(h).real.copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of C^n carried by an orthonormal basis of columns."""

    ambient_dim: int
    basis: np.ndarray = field(default=None)  # shape (ambient_dim, dim)

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=complex)
        if basis.ndim != 2 or basis.shape[0] != self.ambient_dim:
            raise ShapeMismatch(
                f"basis shape {basis.shape} incompatible with ambient dim {self.ambient_dim}"
            )
        if not 0 <= basis.shape[1] <= self.ambient_dim:
            raise ShapeMismatch("subspace dimension exceeds ambient dimension")
        gram = basis.conj().T @ basis
        if frobenius(gram - np.eye(basis.shape[1])) > DEFAULT_TOL.ortho * max(1, basis.shape[1]):
            raise ValueError("subspace basis is not orthonormal")
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.eye(ambient_dim, dtype=complex))

    @classmethod
    def from_span(cls, vectors, ambient_dim: int | None = None) -> "Subspace":
        """Orthonormalize a (possibly dependent) spanning set of columns."""
        vectors = np.asarray(vectors, dtype=complex)
        if vectors.ndim != 2:
            raise ShapeMismatch("spanning set must be a 2-d array of columns")
        n = vectors.shape[0] if ambient_dim is None else ambient_dim
        if vectors.size == 0:
            return cls.zero(n)
        u, s, _ = np.linalg.svd(vectors, full_matrices=False)
        rank = int(np.sum(s > 1e-12 * max(1.0, float(s[0]))))
        return cls(n, u[:, :rank])

    def contains(self, vector, tol: Tolerance = DEFAULT_TOL) -> bool:
        vector = np.asarray(vector, dtype=complex).reshape(-1)
        residual = vector - self.basis @ (self.basis.conj().T @ vector)
        return float(np.linalg.norm(residual)) <= tol.eq * max(1.0, float(np.linalg.norm(vector)))


def eigenspace_at_one(a, tol: Tolerance = DEFAULT_TOL) -> Subspace:
    """Span of eigenvectors of a PSD contraction with eigenvalue >= 1 - tol.eig1."""
    a = as_matrix(a)
    eigenvalues, eigenvectors = hermitian_eigensystem(a, tol)
    n = a.shape[0]
    if n == 0:
        return Subspace.zero(0)
    if eigenvalues[-1] < -tol.eq or eigenvalues[0] > 1.0 + tol.eq:
        raise NotContractivePositive(
            f"spectrum [{eigenvalues[-1]:.3e}, {eigenvalues[0]:.3e}] outside [0, 1]"
        )
    keep = eigenvalues >= 1.0 - tol.eig1
    return Subspace(n, eigenvectors[:, keep])


def orthogonal_projection(s: Subspace) -> np.ndarray:
    """Orthogonal projection matrix onto the subspace."""
    return s.basis @ s.basis.conj().T


def psd_order_leq(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff b - a is positive semidefinite within tol.eq."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ShapeMismatch(f"shapes {a.shape} and {b.shape} differ")
    if a.shape[0] != a.shape[1]:
        raise NotHermitian("psd_order_leq requires square operands")
    for m in (a, b):
        if frobenius(m - adjoint(m)) > tol.eq * max(1.0, frobenius(m)):
            raise NotHermitian("psd_order_leq requires Hermitian operands")
    if a.shape[0] == 0:
        return True
    eigenvalues, _ = hermitian_eigensystem(b - a, tol)
    return bool(eigenvalues[-1] >= -tol.eq)
