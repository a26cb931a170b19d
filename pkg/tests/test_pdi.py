import numpy as np
import pytest

from pisometry.errors import TargetSourceMismatch
from pisometry.generators import (
    random_algebra,
    random_module_contraction,
    random_module_pi,
    random_module_sample,
    rng_from,
)
from pisometry.linalg import frobenius
from pisometry.modules import (
    CStarAlgebra,
    HilbertModule,
    ModuleMap,
    Submodule,
    contained_partial_isometry_mod,
)
from pisometry.operators import contained_partial_isometry, dot_compose
from pisometry.pdi import (
    PartiallyDefinedIsometry,
    compose_pdi,
    contained_pdi,
    contained_composition_agrees,
    initial_submodule,
)


def random_mod(rng, alg):
    return random_module_sample(rng, alg).module


class TestConstruction:
    def test_rejects_foreign_domain(self):
        alg = CStarAlgebra((1,))
        e = HilbertModule.full(alg, (2,))
        f = HilbertModule.full(alg, (1,))
        c = ModuleMap.zero(e, f)
        with pytest.raises(TargetSourceMismatch):
            PartiallyDefinedIsometry(c, Submodule.full(f))

    def test_rejects_non_isometric_domain(self):
        alg = CStarAlgebra((1,))
        e = HilbertModule.full(alg, (2,))
        c = ModuleMap.from_lift(e, e, np.diag([1.0, 0.5]).astype(complex))
        with pytest.raises(Exception):
            PartiallyDefinedIsometry(c, Submodule.full(e))

    def test_contained_pdi(self):
        alg = CStarAlgebra((2,))
        e = HilbertModule.full(alg, (2,))
        c = ModuleMap.from_lift(e, e, np.diag([1.0, 0.5]).astype(complex))
        pdi = contained_pdi(c)
        assert pdi.domain.dim == 2
        for mat in pdi.domain.basis_matrices:
            assert frobenius(mat[1, :]) < 1e-9


class TestComposition:
    def test_identity_is_neutral(self):
        rng = rng_from(501)
        alg = random_algebra(rng)
        e, f = random_mod(rng, alg), random_mod(rng, alg)
        v = random_module_pi(rng, e, f)
        pdi = contained_pdi(v)
        ident = PartiallyDefinedIsometry(ModuleMap.identity(e), Submodule.full(e))
        composed = compose_pdi(pdi, ident)
        assert composed.domain.equals(pdi.domain)
        assert frobenius(composed.map.action - pdi.map.action) < 1e-8

    def test_domain_shrinks_to_preimage(self):
        # v defined only where row 1 lives; w maps everything onto row 2.
        alg = CStarAlgebra((2,))
        e = HilbertModule.full(alg, (2,))
        v_map = ModuleMap.from_lift(e, e, np.diag([1.0, 0.0]).astype(complex))
        swap = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
        w_map = ModuleMap.from_lift(e, e, swap)
        v = contained_pdi(v_map)
        w = PartiallyDefinedIsometry(w_map, Submodule.full(e))
        composed = compose_pdi(v, w)
        # Only elements supported on row 2 map into the domain of v.
        assert composed.domain.dim == 2
        for mat in composed.domain.basis_matrices:
            assert frobenius(mat[0, :]) < 1e-9

    def test_rejects_mismatched_modules(self):
        alg = CStarAlgebra((1,))
        e = HilbertModule.full(alg, (2,))
        f = HilbertModule.full(alg, (1,))
        v = contained_pdi(ModuleMap.zero(e, f))
        with pytest.raises(TargetSourceMismatch):
            compose_pdi(v, v)

    def test_associative(self):
        rng = rng_from(503)
        for trial in range(8):
            alg = random_algebra(rng)
            mods = [random_mod(rng, alg) for _ in range(4)]
            u = contained_pdi(random_module_pi(rng, mods[1], mods[0]))
            v = contained_pdi(random_module_pi(rng, mods[2], mods[1]))
            w = contained_pdi(random_module_pi(rng, mods[3], mods[2]))
            lhs = compose_pdi(compose_pdi(u, v), w)
            rhs = compose_pdi(u, compose_pdi(v, w))
            assert lhs.domain.equals(rhs.domain)
            for mat in lhs.domain.basis_matrices:
                lx = lhs.map.lift() @ mat
                rx = rhs.map.lift() @ mat
                assert frobenius(lx - rx) < 1e-7


class TestInitialSubmodule:
    def test_matches_domain_of_contained_pdi(self):
        rng = rng_from(504)
        for trial in range(8):
            alg = random_algebra(rng)
            e, f = random_mod(rng, alg), random_mod(rng, alg)
            c = random_module_contraction(rng, e, f)
            v = contained_partial_isometry_mod(c)
            assert initial_submodule(v).equals(contained_pdi(c).domain)


class TestContainedCompositionAgreement:
    def test_random_pairs(self):
        rng = rng_from(505)
        for trial in range(10):
            alg = random_algebra(rng)
            d, e, f = (random_mod(rng, alg) for _ in range(3))
            w = random_module_pi(rng, d, e)
            v = random_module_pi(rng, e, f)
            assert contained_composition_agrees(v, w)

    def test_specializes_to_matrix_dot_composition(self):
        # Single one-dimensional block: lifts are plain matrices and the
        # composed partially defined isometry must act like v . w.
        alg = CStarAlgebra((1,))
        rng = rng_from(506)
        for trial in range(10):
            d, e, f = (random_mod(rng, alg) for _ in range(3))
            w = random_module_pi(rng, d, e)
            v = random_module_pi(rng, e, f)
            assert contained_composition_agrees(v, w)
            lhs = contained_partial_isometry_mod(v.compose(w)).lift()
            rhs = dot_compose(v.lift(), w.lift())
            assert frobenius(lhs - rhs) < 1e-7
