import numpy as np
import pytest

from pisometry.errors import NotContraction, NotPartialIsometry, ShapeMismatch
from pisometry.generators import (
    random_contraction,
    random_partial_isometry,
    random_pi_pair,
    rng_from,
)
from pisometry.linalg import adjoint, frobenius
from pisometry.operators import (
    classify,
    contained_partial_isometry,
    dot_compose,
    isometric_subspace,
    product_criterion,
)


class TestClassify:
    def test_unitary(self):
        assert classify(np.eye(3)).describe() == "unitary"

    def test_projection(self):
        c = classify(np.diag([1.0, 0.0]).astype(complex))
        assert c.is_projection and c.is_partial_isometry and not c.is_unitary

    def test_isometry(self):
        v = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]], dtype=complex)
        c = classify(v)
        assert c.is_isometry and c.is_partial_isometry and not c.is_coisometry
        assert classify(adjoint(v)).is_coisometry

    def test_contraction_only(self):
        c = classify(np.diag([1.0, 0.5]).astype(complex))
        assert c.is_contraction and not c.is_partial_isometry

    def test_not_contraction(self):
        assert not classify(2.0 * np.eye(2)).is_contraction

    def test_degenerate_shapes(self):
        c = classify(np.zeros((0, 0), dtype=complex))
        assert c.is_unitary and c.is_partial_isometry and c.is_contraction
        c = classify(np.zeros((0, 3), dtype=complex))
        assert c.is_partial_isometry and c.is_coisometry and not c.is_isometry
        c = classify(np.zeros((3, 0), dtype=complex))
        assert c.is_partial_isometry and c.is_isometry and not c.is_coisometry


class TestProductCriterion:
    def test_all_four_false_on_orthogonal_ranges(self):
        v = np.diag([1.0, 0.0]).astype(complex)
        w = np.full((2, 2), 0.5, dtype=complex)
        crit = product_criterion(v, w)
        assert crit.agree()
        assert not crit.product_is_pi

    def test_isometry_times_pi_is_always_pi(self):
        # v*v = 1 commutes with everything, so the product never degrades.
        rng = rng_from(201)
        for trial in range(20):
            v = random_partial_isometry(rng, 5, 3, rank=3)
            w = random_partial_isometry(rng, 3, 4)
            crit = product_criterion(v, w)
            assert crit.agree() and crit.product_is_pi

    def test_commuting_projections_give_pi(self):
        rng = rng_from(202)
        for trial in range(20):
            v, w = random_pi_pair(rng, 5, commuting_prob=1.0)
            crit = product_criterion(v, w)
            assert crit.agree() and crit.product_is_pi
            vw = v @ w
            assert frobenius(vw @ adjoint(vw) @ vw - vw) < 1e-9

    def test_agreement_over_random_pairs(self):
        rng = rng_from(203)
        for trial in range(100):
            v, w = random_pi_pair(rng, 5)
            assert product_criterion(v, w).agree()

    def test_rejects_non_pi(self):
        with pytest.raises(NotPartialIsometry):
            product_criterion(np.diag([1.0, 0.5]), np.eye(2))

    def test_rejects_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            product_criterion(np.eye(2), np.eye(3))


class TestContainedPartialIsometry:
    def test_diagonal_fixture(self):
        c = np.diag([1.0, 0.5]).astype(complex)
        data = contained_partial_isometry(c)
        assert frobenius(data.p_c - np.diag([1.0, 0.0])) < 1e-12
        assert frobenius(data.v - np.diag([1.0, 0.0])) < 1e-12
        assert data.subspace.dim == 1

    def test_partial_isometry_is_its_own_contained_pi(self):
        rng = rng_from(204)
        v = random_partial_isometry(rng, 4, 4, rank=2)
        data = contained_partial_isometry(v)
        assert frobenius(data.v - v) < 1e-8
        assert frobenius(data.p_c - adjoint(v) @ v) < 1e-8

    def test_result_is_partial_isometry(self):
        rng = rng_from(205)
        for trial in range(50):
            c = random_contraction(rng, 4, 5)
            v = contained_partial_isometry(c).v
            assert classify(v).is_partial_isometry

    def test_maximality_inside(self):
        # Any subprojection of p_c keeps the isometry property.
        rng = rng_from(206)
        c = random_contraction(rng, 5, 5, isometric_directions=3)
        data = contained_partial_isometry(c)
        q = np.outer(data.subspace.basis[:, 0], data.subspace.basis[:, 0].conj())
        assert frobenius(adjoint(c @ q) @ (c @ q) - q) < 1e-9

    def test_maximality_outside(self):
        # A projection using a strictly-contractive direction fails.
        c = np.diag([1.0, 0.5]).astype(complex)
        x = np.array([1.0, 1.0]) / np.sqrt(2)
        q = np.outer(x, x.conj())
        assert frobenius(adjoint(c @ q) @ (c @ q) - q) > 1e-2

    def test_rejects_expansion(self):
        with pytest.raises(NotContraction):
            isometric_subspace(2.0 * np.eye(2))


class TestDotCompose:
    def test_orthogonal_ranges_compose_to_zero(self):
        v = np.diag([1.0, 0.0]).astype(complex)
        w = np.full((2, 2), 0.5, dtype=complex)
        assert frobenius(dot_compose(v, w)) < 1e-12

    def test_reduces_to_product_when_product_is_pi(self):
        rng = rng_from(207)
        for trial in range(20):
            v, w = random_pi_pair(rng, 5, commuting_prob=1.0)
            assert frobenius(dot_compose(v, w) - v @ w) < 1e-8

    def test_always_partial_isometry(self):
        rng = rng_from(208)
        for trial in range(50):
            v, w = random_pi_pair(rng, 6)
            assert classify(dot_compose(v, w)).is_partial_isometry

    def test_associative(self):
        rng = rng_from(209)
        for trial in range(20):
            u = random_partial_isometry(rng, 4, 3)
            v = random_partial_isometry(rng, 3, 5)
            w = random_partial_isometry(rng, 5, 4)
            lhs = dot_compose(dot_compose(u, v), w)
            rhs = dot_compose(u, dot_compose(v, w))
            assert frobenius(lhs - rhs) < 1e-7

    def test_identity_is_neutral(self):
        rng = rng_from(210)
        v = random_partial_isometry(rng, 4, 4)
        assert frobenius(dot_compose(np.eye(4), v) - v) < 1e-8
        assert frobenius(dot_compose(v, np.eye(4)) - v) < 1e-8
