"""Property-verification suites driven by the CLI and the acceptance tests.

Each suite draws its trial inputs from per-trial seeded streams derived
from ``(master seed, suite id, trial index)``, so any failing trial can be
re-run in isolation and sharding would not change results.  Machine-readable
reports contain no timing data and are byte-identical for identical
configurations.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

import numpy as np

from . import io as formats
from .errors import PisometryError
from .generators import (
    random_algebra,
    random_contraction,
    random_contractive_idempotent,
    random_module_contraction,
    random_module_pi,
    random_module_sample,
    random_pi_pair,
    random_right_linear_map,
    rng_from,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerance,
    adjoint,
    frobenius,
    orthogonal_projection,
    psd_order_leq,
    spectral_norm,
)
from .modules import (
    ModuleElement,
    complement,
    is_partial_isometry_mod,
    isometric_submodule,
    module_inner,
)
from .operators import (
    classify,
    contained_partial_isometry,
    dot_compose,
    isometric_subspace,
    product_criterion,
)
from .partial_functions import FiniteSet, PartialFn, compose_pdf, to_partial_isometry
from .pdi import contained_composition_agrees

__all__ = ["SuiteConfig", "SuiteResult", "Report", "SUITE_NAMES", "run_suite", "run"]

# Stream ids keep per-trial seeds disjoint across suites.
SUITE_IDS = {
    "pilem": 1,
    "clem": 2,
    "cthm": 3,
    "cathm": 4,
    "functor": 5,
    "module-tool": 6,
    "invariance": 7,
    "univthm": 8,
    "proposition": 9,
}
SUITE_NAMES = tuple(SUITE_IDS) + ("all",)

ASSOC_TOL = 1e-7  # three nested spectral computations compound error


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "all"
    trials: int = 200
    dim: int = 4
    seed: int = 0
    tol: Tolerance = DEFAULT_TOL

    def __post_init__(self):
        if self.suite not in SUITE_NAMES:
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 1 <= self.dim <= 16:
            raise ValueError("dim must lie in [1, 16]")


@dataclass
class SuiteResult:
    name: str
    trials: int
    passed: bool = True
    worst_residual: float = 0.0
    stats: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    duration: float = 0.0

    def note_residual(self, value: float) -> None:
        self.worst_residual = max(self.worst_residual, float(value))

    def fail(self, trial: int, seed_key, reason: str, payload: dict | None = None) -> None:
        self.passed = False
        self.failures.append(
            {
                "trial": trial,
                "seed": list(seed_key),
                "reason": reason,
                "payload": payload or {},
            }
        )

    def to_obj(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "passed": self.passed,
            "worst_residual": self.worst_residual,
            "stats": self.stats,
            "failures": self.failures,
        }


@dataclass
class Report:
    config: SuiteConfig
    suites: list

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_obj(self) -> dict:
        """Machine-readable form; deterministic (no wall-clock data)."""
        return {
            "config": {
                "suite": self.config.suite,
                "trials": self.config.trials,
                "dim": self.config.dim,
                "seed": self.config.seed,
                "tol": {
                    "eq": self.config.tol.eq,
                    "eig1": self.config.tol.eig1,
                    "ortho": self.config.tol.ortho,
                },
            },
            "passed": self.passed,
            "suites": [s.to_obj() for s in self.suites],
        }


def _dim(rng, lo: int, hi: int) -> int:
    return int(rng.integers(lo, max(lo, hi) + 1))


def _pair_payload(v, w) -> dict:
    return {"v": formats.matrix_to_obj(v), "w": formats.matrix_to_obj(w)}


def run_pilem(cfg: SuiteConfig) -> SuiteResult:
    """Four-way product criterion agreement, plus contractive idempotents."""
    res = SuiteResult("pilem", cfg.trials)
    tol = cfg.tol
    true_pairs = 0
    for trial in range(cfg.trials):
        key = (cfg.seed, SUITE_IDS["pilem"], trial)
        rng = rng_from(*key)
        v, w = random_pi_pair(rng, max(2, cfg.dim))
        crit = product_criterion(v, w, tol)
        if not crit.agree():
            res.fail(trial, key, f"criterion booleans disagree: {crit}", _pair_payload(v, w))
            continue
        if crit.product_is_pi:
            true_pairs += 1
            vw = v @ w
            res.note_residual(frobenius(vw @ adjoint(vw) @ vw - vw))
    for trial in range(cfg.trials):
        key = (cfg.seed, SUITE_IDS["pilem"], cfg.trials + trial)
        rng = rng_from(*key)
        n = _dim(rng, 2, cfg.dim)
        e = random_contractive_idempotent(rng, n)
        if spectral_norm(e, tol) > 1.0 + tol.eq:
            continue  # filtered out, not a counterexample
        gap = frobenius(e - adjoint(e))
        res.note_residual(gap)
        if gap > 10 * tol.eq:
            res.fail(trial, key, "contractive idempotent is not self-adjoint",
                     {"e": formats.matrix_to_obj(e)})
    res.stats = {"product_pi_pairs": true_pairs, "idempotents": cfg.trials}
    return res


def run_clem(cfg: SuiteConfig) -> SuiteResult:
    """Maximal isometric subspace of a contraction and its maximality."""
    res = SuiteResult("clem", cfg.trials)
    tol = cfg.tol
    for trial in range(cfg.trials):
        key = (cfg.seed, SUITE_IDS["clem"], trial)
        rng = rng_from(*key)
        rows, cols = _dim(rng, 2, cfg.dim), _dim(rng, 2, cfg.dim)
        c = random_contraction(rng, rows, cols)
        data = contained_partial_isometry(c, tol)
        residual = frobenius(adjoint(data.v) @ data.v - data.p_c)
        res.note_residual(residual)
        if residual > 10 * tol.eq:
            res.fail(trial, key, "(c p)* (c p) != p", {"c": formats.matrix_to_obj(c)})
        if not psd_order_leq(data.p_c, adjoint(c) @ c, tol):
            res.fail(trial, key, "p_c not dominated by c*c", {"c": formats.matrix_to_obj(c)})
        for j in range(data.subspace.dim):
            b = data.subspace.basis[:, j]
            res.note_residual(abs(float(np.linalg.norm(c @ b)) - 1.0))

    for trial in range(100):
        key = (cfg.seed, SUITE_IDS["clem"], cfg.trials + trial)
        rng = rng_from(*key)
        n = _dim(rng, 2, cfg.dim)
        c = random_contraction(rng, n, n, isometric_directions=_dim(rng, 1, n))
        subspace = isometric_subspace(c, tol)
        j = _dim(rng, 1, subspace.dim)
        mix = np.linalg.qr(
            rng.standard_normal((subspace.dim, j)) + 1j * rng.standard_normal((subspace.dim, j))
        )[0]
        basis = subspace.basis @ mix
        q = basis @ adjoint(basis)
        residual = frobenius(adjoint(c @ q) @ (c @ q) - q)
        res.note_residual(residual)
        if residual > 10 * tol.eq:
            res.fail(trial, key, "subprojection of p_c lost isometry",
                     {"c": formats.matrix_to_obj(c), "q": formats.matrix_to_obj(q)})
        if not psd_order_leq(q, orthogonal_projection(subspace), tol):
            res.fail(trial, key, "subprojection not below p_c", {"q": formats.matrix_to_obj(q)})

    for trial in range(100):
        key = (cfg.seed, SUITE_IDS["clem"], cfg.trials + 100 + trial)
        rng = rng_from(*key)
        n = _dim(rng, 2, cfg.dim)
        k_iso = _dim(rng, 0, n - 1)
        c = random_contraction(rng, n, n, isometric_directions=k_iso, max_other=0.9)
        subspace = isometric_subspace(c, tol)
        p = orthogonal_projection(subspace)
        outside = _outside_direction(p)
        if subspace.dim:
            x = 0.6 * subspace.basis[:, 0] + 0.8 * outside
        else:
            x = outside
        q = np.outer(x, x.conj())
        deviation = frobenius(adjoint(c @ q) @ (c @ q) - q)
        if deviation <= 100 * tol.eq:
            res.fail(trial, key, "projection with outside direction did not fail",
                     {"c": formats.matrix_to_obj(c), "q": formats.matrix_to_obj(q)})
    res.stats = {"subprojection_trials": 100, "outside_trials": 100}
    return res


def _outside_direction(p: np.ndarray) -> np.ndarray:
    """Unit vector orthogonal to the range of the projection p."""
    n = p.shape[0]
    complement_map = np.eye(n) - p
    u, s, _ = np.linalg.svd(complement_map)
    return u[:, 0]


def run_cthm(cfg: SuiteConfig) -> SuiteResult:
    """Properties of the maximal projection p_{v,w} of a product."""
    res = SuiteResult("cthm", cfg.trials)
    tol = cfg.tol
    for trial in range(cfg.trials):
        key = (cfg.seed, SUITE_IDS["cthm"], trial)
        rng = rng_from(*key)
        v, w = random_pi_pair(rng, max(2, cfg.dim))
        data = contained_partial_isometry(v @ w, tol)
        p = data.p_c
        payload = _pair_payload(v, w)
        if not classify(data.v, tol).is_partial_isometry:
            res.fail(trial, key, "v w p_{v,w} is not a partial isometry", payload)
        if not psd_order_leq(p, adjoint(w) @ w, tol):
            res.fail(trial, key, "p_{v,w} not below w*w", payload)
        wp = w @ p
        if not classify(wp, tol).is_partial_isometry:
            res.fail(trial, key, "w p_{v,w} is not a partial isometry", payload)
        if not psd_order_leq(wp @ adjoint(wp), adjoint(v) @ v, tol):
            res.fail(trial, key, "(w p)(w p)* not below v*v", payload)
        res.note_residual(frobenius(adjoint(data.v) @ data.v - p))
    return res


def run_cathm(cfg: SuiteConfig) -> SuiteResult:
    """Associativity of the dot composition."""
    res = SuiteResult("cathm", cfg.trials)
    tol = cfg.tol
    for trial in range(cfg.trials):
        key = (cfg.seed, SUITE_IDS["cathm"], trial)
        rng = rng_from(*key)
        dims = [_dim(rng, 2, cfg.dim) for _ in range(4)]
        u = _random_pi(rng, dims[0], dims[1])
        v = _random_pi(rng, dims[1], dims[2])
        w = _random_pi(rng, dims[2], dims[3])
        lhs = dot_compose(dot_compose(u, v, tol), w, tol)
        rhs = dot_compose(u, dot_compose(v, w, tol), tol)
        residual = frobenius(lhs - rhs)
        res.note_residual(residual)
        if residual > ASSOC_TOL:
            res.fail(trial, key, f"associativity residual {residual:.3e}",
                     {"u": formats.matrix_to_obj(u), "v": formats.matrix_to_obj(v),
                      "w": formats.matrix_to_obj(w)})
    return res


def _random_pi(rng, rows: int, cols: int) -> np.ndarray:
    from .generators import random_partial_isometry

    return random_partial_isometry(rng, rows, cols)


def _enumerate_injective(source: FiniteSet, target: FiniteSet):
    """All injective partially defined functions source -> target."""
    for size in range(min(len(source), len(target)) + 1):
        for domain in itertools.combinations(source.labels, size):
            for image in itertools.permutations(target.labels, size):
                yield PartialFn(source, target, dict(zip(domain, image)))


def _random_injective(rng, source: FiniteSet, target: FiniteSet) -> PartialFn:
    max_dom = min(len(source), len(target))
    d = int(rng.integers(0, max_dom + 1)) if max_dom else 0
    keys = [source.labels[i] for i in rng.permutation(len(source))[:d]]
    values = [target.labels[i] for i in rng.permutation(len(target))[:d]]
    return PartialFn(source, target, dict(zip(keys, values)))


def run_functor(cfg: SuiteConfig) -> SuiteResult:
    """Exact functoriality of partial functions into 0/1 partial isometries."""
    res = SuiteResult("functor", cfg.trials)
    exhaustive = 0
    sets = {
        size: FiniteSet(tuple(f"{chr(97 + size)}{i}" for i in range(size)))
        for size in range(4)
    }
    for a, b, c in itertools.product(range(4), repeat=3):
        set_a, set_b, set_c = sets[a], sets[b], sets[c]
        fs = list(_enumerate_injective(set_b, set_a))
        gs = list(_enumerate_injective(set_c, set_b))
        for f in fs:
            vf = to_partial_isometry(f)
            for g in gs:
                exhaustive += 1
                composed = compose_pdf(f, g)
                if not np.array_equal(to_partial_isometry(composed), vf @ to_partial_isometry(g)):
                    res.fail(exhaustive, (cfg.seed, SUITE_IDS["functor"], -1),
                             "exhaustive functor violation",
                             {"f": formats.partial_fn_to_obj(f),
                              "g": formats.partial_fn_to_obj(g)})
    max_size = max(3, cfg.dim)
    for trial in range(cfg.trials):
        key = (cfg.seed, SUITE_IDS["functor"], trial)
        rng = rng_from(*key)
        sizes = [int(rng.integers(0, max_size + 1)) for _ in range(3)]
        set_a = FiniteSet(tuple(f"a{i}" for i in range(sizes[0])))
        set_b = FiniteSet(tuple(f"b{i}" for i in range(sizes[1])))
        set_c = FiniteSet(tuple(f"c{i}" for i in range(sizes[2])))
        f = _random_injective(rng, set_b, set_a)
        g = _random_injective(rng, set_c, set_b)
        composed = compose_pdf(f, g)
        vf, vg = to_partial_isometry(f), to_partial_isometry(g)
        if not np.array_equal(to_partial_isometry(composed), vf @ vg):
            res.fail(trial, key, "random functor violation",
                     {"f": formats.partial_fn_to_obj(f), "g": formats.partial_fn_to_obj(g)})
        if trial < 100 and vf.size and vg.size and vf.shape[0] and vg.shape[1]:
            # 0/1 diagonal projections commute, so dot composition is the product.
            residual = frobenius(dot_compose(vf, vg, cfg.tol) - vf @ vg)
            res.note_residual(residual)
            if residual > 10 * cfg.tol.eq:
                res.fail(trial, key, "dot composition disagrees with product",
                         {"f": formats.partial_fn_to_obj(f), "g": formats.partial_fn_to_obj(g)})
    res.stats = {"exhaustive_pairs": exhaustive}
    return res


def run_module_tool(cfg: SuiteConfig) -> SuiteResult:
    """Fidelity of the lifted-operator picture of modules."""
    res = SuiteResult("module-tool", cfg.trials)
    tol = cfg.tol
    for trial in range(cfg.trials):
        key = (cfg.seed, SUITE_IDS["module-tool"], trial)
        rng = rng_from(*key)
        algebra = random_algebra(rng)
        e_mod = random_module_sample(rng, algebra).module
        f_mod = random_module_sample(rng, algebra).module
        n = algebra.dim
        g1 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        g2 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        for x in e_mod.generators[: min(4, e_mod.dim)]:
            for y in e_mod.generators[: min(4, e_mod.dim)]:
                lhs = np.vdot(x @ g1, y @ g2)
                rhs = np.vdot(g1, (adjoint(x) @ y) @ g2)
                res.note_residual(abs(lhs - rhs))
                inner = module_inner(
                    ModuleElement(e_mod, e_mod.coords_of(x)),
                    ModuleElement(e_mod, e_mod.coords_of(y)),
                    tol,
                )
                res.note_residual(frobenius(inner - adjoint(x) @ y))
        c = random_module_contraction(rng, e_mod, f_mod, tol=tol)
        lifted = c.lift()
        worst = 0.0
        for j, x in enumerate(e_mod.generators):
            image = f_mod.matrix_of(c.action[:, j])
            worst = max(worst, frobenius(lifted @ x - image))
        res.note_residual(worst)
        if worst > 10 * tol.eq:
            res.fail(trial, key, "lift does not intertwine generators", {})
    return res


def run_invariance(cfg: SuiteConfig) -> SuiteResult:
    """Product-is-partial-isometry iff pi_v leaves the image of w invariant."""
    res = SuiteResult("invariance", cfg.trials)
    tol = cfg.tol
    agree_true = 0
    for trial in range(cfg.trials):
        key = (cfg.seed, SUITE_IDS["invariance"], trial)
        rng = rng_from(*key)
        algebra = random_algebra(rng)
        d_mod = random_module_sample(rng, algebra).module
        e_mod = random_module_sample(rng, algebra).module
        f_mod = random_module_sample(rng, algebra).module
        w = random_module_pi(rng, d_mod, e_mod, tol)
        v = random_module_pi(rng, e_mod, f_mod, tol)
        product_is_pi, range_invariant = product_invariance(v, w, tol)
        if product_is_pi != range_invariant:
            res.fail(trial, key, f"criteria disagree: pi={product_is_pi}, inv={range_invariant}",
                     {"blocks": list(algebra.block_sizes)})
        elif product_is_pi:
            agree_true += 1
    res.stats = {"products_that_are_pi": agree_true}
    return res


def product_invariance(v, w, tol):
    from .modules import product_invariance_criterion

    return product_invariance_criterion(v, w, tol)


def run_univthm(cfg: SuiteConfig) -> SuiteResult:
    """Maximal isometric submodule and the contained partial isometry."""
    res = SuiteResult("univthm", cfg.trials)
    tol = cfg.tol
    for trial in range(cfg.trials):
        key = (cfg.seed, SUITE_IDS["univthm"], trial)
        rng = rng_from(*key)
        algebra = random_algebra(rng)
        e_mod = random_module_sample(rng, algebra).module
        f_mod = random_module_sample(rng, algebra).module
        c = random_module_contraction(rng, e_mod, f_mod, tol=tol)
        sub = isometric_submodule(c, tol)
        lifted = c.lift()
        for x in sub.basis_matrices:
            gap = frobenius(adjoint(lifted @ x) @ (lifted @ x) - adjoint(x) @ x)
            res.note_residual(gap)
            if gap > 10 * tol.eq:
                res.fail(trial, key, "P_c basis element is not isometric", {})
            for b in algebra.basis:
                if not sub.contains_matrix(x @ b, tol):
                    res.fail(trial, key, "P_c not closed under the algebra", {})
                    break
        complemented, projection = complement(sub, tol)
        if not complemented:
            res.fail(trial, key, "P_c unexpectedly not complemented", {})
            continue
        v = c.compose(projection)
        is_pi, pi_v = is_partial_isometry_mod(v, tol)
        if not is_pi:
            res.fail(trial, key, "c p_c is not a partial isometry", {})
            continue
        gap = frobenius(pi_v.lift() - projection.lift())
        res.note_residual(gap)
        if gap > 10 * tol.eq:
            res.fail(trial, key, "initial projection of c p_c differs from p_c", {})
        p_lift = projection.lift()
        for _ in range(20):
            coords = rng.standard_normal(e_mod.dim) + 1j * rng.standard_normal(e_mod.dim)
            x = e_mod.matrix_of(coords)
            lhs = adjoint(x) @ (p_lift @ x)
            rhs = adjoint(lifted @ x) @ (lifted @ x)
            lhs = (lhs + adjoint(lhs)) / 2
            rhs = (rhs + adjoint(rhs)) / 2
            if not psd_order_leq(lhs, rhs, tol):
                res.fail(trial, key, "<x, pi_v x> not dominated by <cx, cx>", {})
                break
        rest = np.eye(e_mod.lift_dim) - p_lift
        worst = 0.0
        for x in e_mod.generators:
            for y in e_mod.generators:
                worst = max(
                    worst, frobenius(adjoint(lifted @ rest @ y) @ (lifted @ p_lift @ x))
                )
        res.note_residual(worst)
        if worst > 10 * tol.eq:
            res.fail(trial, key, "c(1-p_c) range not orthogonal to c p_c range", {})
    return res


def run_proposition(cfg: SuiteConfig) -> SuiteResult:
    """(vw, P_vw) equals the composition of the contained partially defined isometries."""
    res = SuiteResult("proposition", cfg.trials)
    tol = cfg.tol
    for trial in range(cfg.trials):
        key = (cfg.seed, SUITE_IDS["proposition"], trial)
        rng = rng_from(*key)
        algebra = random_algebra(rng)
        d_mod = random_module_sample(rng, algebra).module
        e_mod = random_module_sample(rng, algebra).module
        f_mod = random_module_sample(rng, algebra).module
        w = random_module_pi(rng, d_mod, e_mod, tol)
        v = random_module_pi(rng, e_mod, f_mod, tol)
        if not contained_composition_agrees(v, w, tol):
            res.fail(trial, key, "final proposition violated",
                     {"blocks": list(algebra.block_sizes)})
    return res


_RUNNERS = {
    "pilem": run_pilem,
    "clem": run_clem,
    "cthm": run_cthm,
    "cathm": run_cathm,
    "functor": run_functor,
    "module-tool": run_module_tool,
    "invariance": run_invariance,
    "univthm": run_univthm,
    "proposition": run_proposition,
}


def run_suite(name: str, cfg: SuiteConfig) -> SuiteResult:
    start = time.perf_counter()
    result = _RUNNERS[name](cfg)
    result.duration = time.perf_counter() - start
    return result


def run(cfg: SuiteConfig) -> Report:
    names = list(SUITE_IDS) if cfg.suite == "all" else [cfg.suite]
    suites = [run_suite(name, cfg) for name in names]
    return Report(cfg, suites)
