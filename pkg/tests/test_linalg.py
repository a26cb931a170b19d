import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pisometry.errors import NotContractivePositive, NotHermitian
from pisometry.generators import rng_from
from pisometry.linalg import (
    DEFAULT_TOL,
    Subspace,
    Tolerance,
    adjoint,
    as_matrix,
    eigenspace_at_one,
    frobenius,
    hermitian_eigensystem,
    orthogonal_projection,
    psd_order_leq,
    spectral_norm,
)


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + adjoint(g)) / 2


class TestEigensystem:
    # np.linalg.eigh serves as the independent oracle for the Jacobi solver.

    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 12])
    def test_matches_numpy_eigenvalues(self, n):
        rng = rng_from(101, n)
        for trial in range(10):
            h = random_hermitian(rng, n)
            values, vectors = hermitian_eigensystem(h)
            oracle = np.sort(np.linalg.eigvalsh(h))[::-1]
            assert np.allclose(values, oracle, atol=1e-10)
            assert frobenius(h @ vectors - vectors @ np.diag(values)) < 1e-10
            assert frobenius(adjoint(vectors) @ vectors - np.eye(n)) < 1e-11

    def test_degenerate_spectrum(self):
        rng = rng_from(102)
        q = np.linalg.qr(rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6)))[0]
        h = q @ np.diag([2.0, 2.0, 2.0, -1.0, -1.0, 0.0]) @ adjoint(q)
        h = (h + adjoint(h)) / 2
        values, vectors = hermitian_eigensystem(h)
        assert np.allclose(values, [2, 2, 2, 0, -1, -1], atol=1e-10)
        assert frobenius(h @ vectors - vectors @ np.diag(values)) < 1e-10

    def test_descending_order(self):
        rng = rng_from(103)
        h = random_hermitian(rng, 7)
        values, _ = hermitian_eigensystem(h)
        assert all(values[i] >= values[i + 1] for i in range(len(values) - 1))

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eigensystem(np.array([[0.0, 1.0], [0.0, 0.0]]))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 8))
    def test_reconstructs_input(self, seed, n):
        h = random_hermitian(rng_from(104, seed), n)
        values, vectors = hermitian_eigensystem(h)
        assert frobenius(vectors @ np.diag(values) @ adjoint(vectors) - h) < 1e-10


class TestSpectralNorm:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 6))
    def test_matches_numpy(self, seed, rows, cols):
        rng = rng_from(105, seed)
        a = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
        assert spectral_norm(a) == pytest.approx(np.linalg.norm(a, 2), abs=1e-10)

    def test_empty(self):
        assert spectral_norm(np.zeros((0, 3))) == 0.0


class TestSubspace:
    def test_from_span_orthonormalizes(self):
        vectors = np.array([[1.0, 1.0], [0.0, 1e-3], [0.0, 0.0]])
        s = Subspace.from_span(vectors)
        assert s.dim == 2
        assert frobenius(adjoint(s.basis) @ s.basis - np.eye(2)) < 1e-12

    def test_contains(self):
        s = Subspace.from_span(np.array([[1.0], [0.0]]))
        assert s.contains(np.array([2.0, 0.0]))
        assert not s.contains(np.array([0.0, 1.0]))

    def test_zero_and_full(self):
        assert Subspace.zero(3).dim == 0
        assert Subspace.full(3).dim == 3

    def test_projection_recovery(self):
        rng = rng_from(106)
        basis = np.linalg.qr(rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2)))[0]
        p = basis @ adjoint(basis)
        s = Subspace.from_span(basis)
        assert frobenius(orthogonal_projection(s) - p) < 1e-12


class TestEigenspaceAtOne:
    def test_window(self):
        # 1 - 1e-12 sits inside the eigenvalue-1 window, 1 - 1e-6 outside.
        h = np.diag([1.0, 1.0 - 1e-12, 1.0 - 1e-6, 0.3]).astype(complex)
        assert eigenspace_at_one(h).dim == 2

    def test_rejects_spectrum_above_one(self):
        with pytest.raises(NotContractivePositive):
            eigenspace_at_one(np.diag([1.5, 0.0]).astype(complex))

    def test_rejects_negative_spectrum(self):
        with pytest.raises(NotContractivePositive):
            eigenspace_at_one(np.diag([-0.5, 0.0]).astype(complex))

    def test_empty_eigenspace(self):
        assert eigenspace_at_one(np.diag([0.5, 0.25]).astype(complex)).dim == 0


class TestPsdOrder:
    def test_reflexive(self):
        rng = rng_from(107)
        h = random_hermitian(rng, 4)
        p = h @ adjoint(h)
        assert psd_order_leq(p, p)

    def test_strict(self):
        assert psd_order_leq(np.diag([0.5, 0.0]), np.diag([1.0, 0.1]))
        assert not psd_order_leq(np.diag([1.0, 0.1]), np.diag([0.5, 0.0]))

    def test_transitive(self):
        a, b, c = np.diag([0.1, 0.2]), np.diag([0.3, 0.2]), np.diag([0.3, 0.5])
        assert psd_order_leq(a, b) and psd_order_leq(b, c) and psd_order_leq(a, c)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            psd_order_leq(np.array([[0.0, 1.0], [0.0, 0.0]]), np.eye(2))


class TestTolerance:
    def test_defaults(self):
        assert DEFAULT_TOL.eq == 1e-9
        assert DEFAULT_TOL.eig1 == 1e-9
        assert DEFAULT_TOL.ortho == 1e-10

    def test_validation(self):
        with pytest.raises(ValueError):
            Tolerance(eq=-1.0)
        with pytest.raises(ValueError):
            Tolerance(eig1=1.0)


class TestAsMatrix:
    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            as_matrix(np.array([[np.inf, 0.0], [0.0, 0.0]]))

    def test_rejects_wrong_rank(self):
        from pisometry.errors import ShapeMismatch

        with pytest.raises(ShapeMismatch):
            as_matrix(np.zeros(3))

    def test_accepts_non_contiguous(self):
        a = (np.arange(16, dtype=complex).reshape(4, 4) + 1j)[::2, ::2]
        assert as_matrix(a).shape == (2, 2)
