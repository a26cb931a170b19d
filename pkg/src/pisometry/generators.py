"""Seeded, deterministic random generation of test objects.

All generators take an explicit ``numpy.random.Generator``; ``rng_from``
derives independent streams from a master seed and a stream key, so trials
can be re-run (or sharded) individually without changing results.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .linalg import DEFAULT_TOL, Tolerance, adjoint
from .modules import (
    CStarAlgebra,
    HilbertModule,
    ModuleMap,
    Submodule,
    close_under_algebra,
    contained_partial_isometry_mod,
)

__all__ = [
    "rng_from",
    "random_unitary",
    "near_identity_unitary",
    "random_partial_isometry",
    "random_pi_pair",
    "random_contraction",
    "random_contractive_idempotent",
    "random_partial_function",
    "random_algebra",
    "ModuleSample",
    "random_module_sample",
    "blockwise_lift",
    "right_linear_lift_basis",
    "random_right_linear_map",
    "random_module_contraction",
    "random_module_pi",
    "random_submodule_of",
]

# Singular values inside (1 - 1e-6, 1 - 1e-12) would sit too close to the
# eigenvalue-1 window; generated spectra stay out of that band.
_SAFE_GAP = 1e-6


def rng_from(seed: int, *stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=stream))


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-ish unitary: QR of a Ginibre matrix with phase fixing."""
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    q, r = np.linalg.qr(_ginibre(rng, n, n))
    phases = np.diag(r).copy()
    phases = phases / np.abs(phases)
    return q * phases


def near_identity_unitary(rng: np.random.Generator, n: int, eps: float = 0.05) -> np.ndarray:
    q, r = np.linalg.qr(np.eye(n) + eps * _ginibre(rng, n, n))
    phases = np.diag(r).copy()
    phases = phases / np.abs(phases)
    return q * phases


def random_partial_isometry(
    rng: np.random.Generator, rows: int, cols: int, rank: int | None = None
) -> np.ndarray:
    """Exact partial isometry: SVD frame with the top ``rank`` singular values set to 1."""
    if rank is None:
        rank = int(rng.integers(0, min(rows, cols) + 1))
    u, _, vh = np.linalg.svd(_ginibre(rng, rows, cols))
    sigma = np.zeros((rows, cols))
    for i in range(rank):
        sigma[i, i] = 1.0
    return u @ sigma @ vh


def random_pi_pair(
    rng: np.random.Generator, max_dim: int, commuting_prob: float = 0.3
) -> tuple:
    """A composable pair (v, w) of partial isometries.

    With the stated probability the pair is built from 0/1 diagonals
    conjugated by one shared unitary, so that v*v and w w* commute.
    """
    if rng.random() < commuting_prob:
        d = int(rng.integers(2, max_dim + 1))
        u = random_unitary(rng, d)
        bits_v = rng.integers(0, 2, size=d).astype(float)
        bits_w = rng.integers(0, 2, size=d).astype(float)
        v = u @ np.diag(bits_v).astype(complex) @ adjoint(u)
        w = u @ np.diag(bits_w).astype(complex) @ adjoint(u)
        return v, w
    a, b, c = (int(rng.integers(2, max_dim + 1)) for _ in range(3))
    return random_partial_isometry(rng, a, b), random_partial_isometry(rng, b, c)


def random_contraction(
    rng: np.random.Generator,
    rows: int,
    cols: int,
    isometric_directions: int | None = None,
    max_other: float = 1.0 - _SAFE_GAP,
) -> np.ndarray:
    """Contraction with a prescribed number of exactly-unit singular values.

    The remaining singular values are kept below ``max_other``, outside the
    eigenvalue-1 window.
    """
    k = min(rows, cols)
    if isometric_directions is None:
        isometric_directions = int(rng.integers(0, k + 1))
    u, _, vh = np.linalg.svd(_ginibre(rng, rows, cols))
    values = np.concatenate(
        [
            np.ones(isometric_directions),
            rng.uniform(0.0, max_other, size=k - isometric_directions),
        ]
    )
    sigma = np.zeros((rows, cols))
    sigma[:k, :k] = np.diag(values)
    return u @ sigma @ vh


def random_contractive_idempotent(rng: np.random.Generator, n: int) -> np.ndarray:
    """Projection conjugated by a unitary close to the identity.

    Unitary conjugation keeps the operator an exact contractive idempotent;
    candidates with norm above 1 (none arise) would be filtered out.
    """
    bits = rng.integers(0, 2, size=n).astype(float)
    u = near_identity_unitary(rng, n)
    return u @ np.diag(bits).astype(complex) @ adjoint(u)


def random_partial_function(rng: np.random.Generator, max_size: int):
    """Random injective partially defined function between fresh label sets."""
    from .partial_functions import FiniteSet, PartialFn

    n_source = int(rng.integers(0, max_size + 1))
    n_target = int(rng.integers(0, max_size + 1))
    source = FiniteSet(tuple(f"b{i}" for i in range(n_source)))
    target = FiniteSet(tuple(f"a{i}" for i in range(n_target)))
    max_dom = min(n_source, n_target)
    d = int(rng.integers(0, max_dom + 1)) if max_dom else 0
    keys = rng.permutation(n_source)[:d]
    values = rng.permutation(n_target)[:d]
    mapping = {f"b{k}": f"a{v}" for k, v in zip(keys, values)}
    return PartialFn(source, target, mapping)


def random_algebra(
    rng: np.random.Generator, max_blocks: int = 3, max_block: int = 3
) -> CStarAlgebra:
    n_blocks = int(rng.integers(1, max_blocks + 1))
    return CStarAlgebra(tuple(int(rng.integers(1, max_block + 1)) for _ in range(n_blocks)))


class ModuleSample(NamedTuple):
    """A random module plus the data needed to build structured maps on it."""

    module: HilbertModule
    multiplicities: tuple
    unitary: np.ndarray  # maps canonical lift coordinates to the module's


def random_module_sample(
    rng: np.random.Generator,
    algebra: CStarAlgebra,
    max_lift: int = 8,
    scramble: bool = True,
) -> ModuleSample:
    """Random module: per-block multiplicities, lift dim bounded by max_lift.

    Built as a random scalar subspace closed under the algebra action (which
    at full closure is determined by the block multiplicities), then carried
    to generic coordinates by a random unitary on the lift space.
    """
    n_blocks = len(algebra.block_sizes)
    while True:
        mults = tuple(int(rng.integers(0, 3)) for _ in range(n_blocks))
        if 1 <= sum(mults) <= max_lift:
            break
    canonical = HilbertModule.full(algebra, mults)
    u = random_unitary(rng, canonical.lift_dim) if scramble else np.eye(
        canonical.lift_dim, dtype=complex
    )
    gens = close_under_algebra(algebra, [u @ g for g in canonical.generators])
    return ModuleSample(HilbertModule(algebra, tuple(gens)), mults, u)


def blockwise_lift(source: ModuleSample, target: ModuleSample, blocks) -> np.ndarray:
    """Lift of the right-linear map acting as ``blocks[i]`` on block i rows."""
    m_src = source.module.lift_dim
    m_tgt = target.module.lift_dim
    c = np.zeros((m_tgt, m_src), dtype=complex)
    row_s = row_t = 0
    for k, l, a in zip(source.multiplicities, target.multiplicities, blocks):
        a = np.asarray(a, dtype=complex)
        if a.shape != (l, k):
            raise ValueError(f"block of shape {a.shape} expected {(l, k)}")
        c[row_t : row_t + l, row_s : row_s + k] = a
        row_s += k
        row_t += l
    return target.unitary @ c @ adjoint(source.unitary)


def right_linear_lift_basis(source: HilbertModule, target: HilbertModule) -> list:
    """Basis of the space of lifts of right-linear maps source -> target."""
    m_s, m_t = source.lift_dim, target.lift_dim
    n = source.algebra.dim
    q = target.vec_basis
    if q.shape[1]:
        q_ortho, _, _ = np.linalg.svd(q, full_matrices=False)
    else:
        q_ortho = np.zeros((m_t * n, 0), dtype=complex)
    proj_out = np.eye(m_t * n, dtype=complex) - q_ortho @ adjoint(q_ortho)
    # vec(C @ g) = (I_{m_t} (x) g^T) vec(C) in row-major convention.
    rows = [proj_out @ np.kron(np.eye(m_t), g.T) for g in source.generators]
    stacked = (
        np.vstack(rows) if rows else np.zeros((0, m_t * m_s), dtype=complex)
    )
    _, s, vh = np.linalg.svd(stacked) if stacked.size else (None, np.zeros(0), np.eye(m_t * m_s))
    cutoff = 1e-10 * max(1.0, float(s[0]) if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    kernel = vh[rank:].conj().T
    return [kernel[:, j].reshape(m_t, m_s) for j in range(kernel.shape[1])]


def random_right_linear_map(
    rng: np.random.Generator, source: HilbertModule, target: HilbertModule
) -> ModuleMap:
    basis = right_linear_lift_basis(source, target)
    if not basis:
        return ModuleMap.zero(source, target)
    weights = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
    c = sum(w * b for w, b in zip(weights, basis))
    return ModuleMap.from_lift(source, target, c)


def random_module_contraction(
    rng: np.random.Generator,
    source: HilbertModule,
    target: HilbertModule,
    unit_norm_prob: float = 0.7,
    tol: Tolerance = DEFAULT_TOL,
) -> ModuleMap:
    """Random right-linear contraction; with the stated probability its top
    singular value is exactly 1, so the isometric submodule can be nontrivial."""
    c = random_right_linear_map(rng, source, target)
    norm = c.norm(tol)
    if norm <= 1e-12:
        return c
    scale = 1.0 / norm
    if rng.random() >= unit_norm_prob:
        scale /= 1.0 + rng.uniform(0.1, 1.0)
    return ModuleMap(source, target, scale * c.action)


def random_module_pi(
    rng: np.random.Generator,
    source: HilbertModule,
    target: HilbertModule,
    tol: Tolerance = DEFAULT_TOL,
) -> ModuleMap:
    """Random module partial isometry: the one contained in a random contraction."""
    c = random_module_contraction(rng, source, target, tol=tol)
    return contained_partial_isometry_mod(c, tol)


def random_submodule_of(
    rng: np.random.Generator, sub: Submodule, tol: Tolerance = DEFAULT_TOL
) -> Submodule:
    """Random closed submodule of a given submodule."""
    if sub.dim == 0:
        return sub
    count = int(rng.integers(0, sub.dim + 1))
    if count == 0:
        return Submodule.zero(sub.parent)
    weights = rng.standard_normal((count, sub.dim)) + 1j * rng.standard_normal((count, sub.dim))
    seeds = [sub.parent.matrix_of(w @ sub.coeffs) for w in weights]
    closed = close_under_algebra(sub.parent.algebra, seeds)
    return Submodule.from_matrices(sub.parent, closed, tol)
