"""JSON file formats for matrices, partial functions, modules, maps, PDIs.

Complex numbers are always serialized as two-element ``[re, im]`` arrays of
IEEE-754 doubles; matrices are row-major.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import ParseError
from .modules import CStarAlgebra, HilbertModule, ModuleMap, Submodule
from .partial_functions import FiniteSet, PartialFn
from .pdi import PartiallyDefinedIsometry

__all__ = [
    "matrix_to_obj",
    "matrix_from_obj",
    "partial_fn_to_obj",
    "partial_fn_from_obj",
    "module_to_obj",
    "module_from_obj",
    "module_map_to_obj",
    "module_map_from_obj",
    "pdi_to_obj",
    "pdi_from_obj",
    "load_document",
    "sniff_and_parse",
    "dump_json",
]


def matrix_to_obj(a) -> dict:
    a = np.asarray(a, dtype=complex)
    return {
        "rows": a.shape[0],
        "cols": a.shape[1],
        "entries": [[float(z.real), float(z.imag)] for z in a.reshape(-1)],
    }


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ParseError(message)


def matrix_from_obj(obj) -> np.ndarray:
    _require(isinstance(obj, dict), "matrix document must be an object")
    _require(
        set(obj) >= {"rows", "cols", "entries"}, "matrix document needs rows/cols/entries"
    )
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = [complex(re, im) for re, im in obj["entries"]]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix entries: {exc}") from exc
    _require(rows >= 0 and cols >= 0, "rows/cols must be nonnegative")
    _require(len(entries) == rows * cols, "entries length must be rows*cols")
    return np.array(entries, dtype=complex).reshape(rows, cols)


def partial_fn_to_obj(f: PartialFn) -> dict:
    return {
        "source": list(f.source.labels),
        "target": list(f.target.labels),
        "map": dict(f.mapping),
    }


def partial_fn_from_obj(obj) -> PartialFn:
    _require(isinstance(obj, dict), "partial function document must be an object")
    _require(set(obj) >= {"source", "target", "map"}, "needs source/target/map")
    try:
        return PartialFn(
            FiniteSet(tuple(obj["source"])),
            FiniteSet(tuple(obj["target"])),
            dict(obj["map"]),
        )
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed partial function: {exc}") from exc


def module_to_obj(module: HilbertModule) -> dict:
    return {
        "blocks": list(module.algebra.block_sizes),
        "lift_dim": module.lift_dim,
        "generators": [matrix_to_obj(g) for g in module.generators],
    }


def module_from_obj(obj) -> HilbertModule:
    _require(isinstance(obj, dict), "module document must be an object")
    _require(set(obj) >= {"blocks", "lift_dim", "generators"}, "needs blocks/lift_dim/generators")
    try:
        algebra = CStarAlgebra(tuple(int(b) for b in obj["blocks"]))
        generators = tuple(matrix_from_obj(g) for g in obj["generators"])
        module = HilbertModule(algebra, generators)
    except ParseError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed module: {exc}") from exc
    _require(module.lift_dim == int(obj["lift_dim"]), "lift_dim disagrees with generators")
    return module


def module_map_to_obj(c: ModuleMap) -> dict:
    return {
        "source": module_to_obj(c.source),
        "target": module_to_obj(c.target),
        "action": matrix_to_obj(c.action),
    }


def module_map_from_obj(obj) -> ModuleMap:
    _require(isinstance(obj, dict), "module map document must be an object")
    _require(set(obj) >= {"source", "target", "action"}, "needs source/target/action")
    try:
        return ModuleMap(
            module_from_obj(obj["source"]),
            module_from_obj(obj["target"]),
            matrix_from_obj(obj["action"]),
        )
    except ParseError:
        raise
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed module map: {exc}") from exc


def pdi_to_obj(p: PartiallyDefinedIsometry) -> dict:
    return {
        "map": module_map_to_obj(p.map),
        "domain": [matrix_to_obj(m) for m in p.domain.basis_matrices],
    }


def pdi_from_obj(obj) -> PartiallyDefinedIsometry:
    _require(isinstance(obj, dict), "PDI document must be an object")
    _require(set(obj) >= {"map", "domain"}, "needs map/domain")
    mapping = module_map_from_obj(obj["map"])
    domain_spec = obj["domain"]
    _require(isinstance(domain_spec, list), "domain must be a list")
    try:
        if all(isinstance(d, int) for d in domain_spec):
            matrices = [mapping.source.generators[i] for i in domain_spec]
        else:
            matrices = [matrix_from_obj(d) for d in domain_spec]
        domain = Submodule.from_matrices(mapping.source, matrices)
    except ParseError:
        raise
    except (IndexError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed PDI domain: {exc}") from exc
    return PartiallyDefinedIsometry(mapping, domain)


def load_document(path):
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def sniff_and_parse(path):
    """Load a file and parse it as whichever object its keys announce.

    Returns ``(kind, value)`` with kind in
    {"matrix", "partial_fn", "module", "module_map", "pdi"}.
    """
    obj = load_document(path)
    if not isinstance(obj, dict):
        raise ParseError("document must be a JSON object")
    keys = set(obj)
    if keys >= {"rows", "cols", "entries"}:
        return "matrix", matrix_from_obj(obj)
    if keys >= {"map", "domain"}:
        return "pdi", pdi_from_obj(obj)
    if keys >= {"source", "target", "map"}:
        return "partial_fn", partial_fn_from_obj(obj)
    if keys >= {"source", "target", "action"}:
        return "module_map", module_map_from_obj(obj)
    if keys >= {"blocks", "lift_dim", "generators"}:
        return "module", module_from_obj(obj)
    raise ParseError("unrecognized document shape")


def dump_json(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(obj, handle, sort_keys=True, separators=(",", ":"))
        handle.write("\n")
