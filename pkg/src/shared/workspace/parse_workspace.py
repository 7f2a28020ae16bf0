"""Load a workspace file.

A workspace is a UTF-8 JSON document. Every top-level key is optional:

    {
      "categories":     {name: {"objects", "morphisms", "compose"} | {"builtin", "size"}},
      "reedy":          {name: {"category", "degree", "plus", "minus"} | {"builtin", "size"}},
      "presheaves":     {name: {"category", "at", "restrict"} | {"sset", "n", "k", "N"}},
      "maps":           {name: {"source", "target", "components" | "kind"}},
      "signatures":     {name: {"arities"} | {"fibers"} | {"A", "B", "f"}},
      "dep_signatures": {name: {"C", "A", "B", "f", "h", "g"}},
      "algebras":       {name: {"signature", "carrier", "table", "default"}},
      "coalgebras":     {name: {"signature", "step"}}
    }

Sections are loaded in that order, so later sections may refer to earlier
ones. Elements are named by their rendering (``render``), which lets JSON
keys refer to tuple-valued simplices such as ``"(0,1)"``.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Callable, Hashable, Iterable, Mapping
from pathlib import Path

from mtype import build_coalgebra
from reedy import builtin_reedy, diagram_category, reedy_from_json
from shared.fincat import (
    build_fincategory,
    build_presheaf,
    build_psh_map,
    cospan_category,
    fin_category,
    fin_pointed_category,
    poset_category,
    representable,
    simplex_category,
    span_category,
    terminal_category,
    terminal_presheaf,
    walking_arrow,
)
from shared.poly import (
    apply_poly,
    arity_signature,
    build_dep_signature,
    build_signature,
    signature_from_fibers,
)
from shared.render import render
from sset import boundary, discrete_sset, horn, indiscrete_nerve, standard_simplex
from wtree import build_algebra

from .types import SECTIONS, ParseError, ValidationError, Workspace

log = logging.getLogger(__name__)

CATEGORY_BUILTINS: dict[str, Callable] = {
    "terminal": lambda size: terminal_category(),
    "arrow": lambda size: walking_arrow(),
    "span": lambda size: span_category(),
    "cospan": lambda size: cospan_category(),
    "poset": poset_category,
    "simplex": simplex_category,
    "fin": fin_category,
    "fin_pointed": fin_pointed_category,
}

SSET_KINDS = ("simplex", "boundary", "horn", "discrete", "nerve")


# ---------------------------------------------------------------------------
# Generic helpers
# ---------------------------------------------------------------------------


def _element(value: object) -> Hashable:
    """JSON arrays become tuples so they can be elements."""
    if isinstance(value, list):
        return tuple(_element(v) for v in value)
    if isinstance(value, dict):
        raise TypeError("objects cannot be elements")
    return value


def _elements(values: Iterable, where: str) -> list:
    try:
        return [_element(v) for v in values]
    except TypeError as exc:
        raise ParseError(where, str(exc)) from None


def _lookup(elements: Iterable[Hashable], key: object, where: str) -> Hashable:
    """The element whose rendering is *key* (or *key* itself)."""
    elements = list(elements)
    value = _element(key)
    if value in elements:
        return value
    by_name = {render(x): x for x in elements}
    if isinstance(key, str) and key in by_name:
        return by_name[key]
    raise ValidationError(where, f"{key!r} is not one of {sorted(by_name)}")


def _table(data: Mapping, key: str, where: str, kind: type = dict):
    if key not in data:
        raise ParseError(where, f"missing key {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise ParseError(f"{where}.{key}", f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _validated(where: str, build: Callable[[], object]):
    """Run a builder, turning its ValueError into a located ``ValidationError``."""
    try:
        return build()
    except (ParseError, ValidationError):
        raise
    except ValueError as exc:
        raise ValidationError(where, str(exc)) from None


# ---------------------------------------------------------------------------
# Sections
# ---------------------------------------------------------------------------


def _category(ws: Workspace, data: Mapping, where: str):
    if "builtin" in data:
        kind = data["builtin"]
        if kind not in CATEGORY_BUILTINS:
            raise ValidationError(where, f"unknown built-in category {kind!r}")
        return _validated(where, lambda: CATEGORY_BUILTINS[kind](int(data.get("size", 0))))
    objects = _table(data, "objects", where, list)
    morphisms = []
    for i, m in enumerate(data.get("morphisms", [])):
        if not isinstance(m, dict) or not {"id", "src", "dst"} <= set(m):
            raise ParseError(f"{where}.morphisms[{i}]", "expected {'id', 'src', 'dst'}")
        morphisms.append((m["id"], m["src"], m["dst"]))
    compose = [tuple(row) for row in data.get("compose", [])]
    name = where.rsplit(".", 1)[-1]
    return _validated(where, lambda: build_fincategory(objects, morphisms, compose, name=name))


def _category_ref(ws: Workspace, ref: object, where: str):
    """A category name, or ``{"diagram": reedy, "N": n}`` for R x Delta<=N."""
    if isinstance(ref, dict):
        r = _reference(ws, "reedy", _table(ref, "diagram", where, str), where)
        return diagram_category(r, int(ref.get("N", 1)))
    return _reference(ws, "categories", ref, where)


def _reference(ws: Workspace, section: str, name: object, where: str):
    table = getattr(ws, section)
    if not isinstance(name, str) or name not in table:
        raise ValidationError(where, f"{name!r} does not name an entry of {section}")
    return table[name]


def _reedy(ws: Workspace, data: Mapping, where: str):
    if "builtin" in data:
        return _validated(where, lambda: builtin_reedy(data["builtin"], int(data.get("size", 1))))
    cat = _reference(ws, "categories", data.get("category"), where)
    _table(data, "degree", where)
    return _validated(where, lambda: reedy_from_json(cat, data))


def _presheaf(ws: Workspace, data: Mapping, where: str, truncation: int):
    name = where.rsplit(".", 1)[-1]
    if "sset" in data:
        kind = data["sset"]
        N = int(data.get("N", truncation))
        n = int(data.get("n", 0))
        points = _elements(data.get("points", []), f"{where}.points")
        builders = {
            "simplex": lambda: standard_simplex(N, n),
            "boundary": lambda: boundary(N, n),
            "horn": lambda: horn(N, n, int(_table(data, "k", where, int))),
            "discrete": lambda: discrete_sset(N, points, name=name),
            "nerve": lambda: indiscrete_nerve(N, points, name=name),
        }
        if kind not in builders:
            raise ValidationError(where, f"unknown simplicial set {kind!r}; use {SSET_KINDS}")
        return _validated(where, builders[kind])
    cat = _category_ref(ws, data.get("category"), where)
    if "representable" in data:
        return _validated(where, lambda: representable(cat, data["representable"]))
    if data.get("terminal"):
        return terminal_presheaf(cat)
    at = {
        obj: _elements(elems, f"{where}.at.{obj}")
        for obj, elems in _table(data, "at", where).items()
    }
    restrict = {}
    for m, table in data.get("restrict", {}).items():
        if m not in cat.ends:
            raise ValidationError(f"{where}.restrict", f"unknown morphism {m!r}")
        src, dst = cat.ends[m]
        restrict[m] = {
            _lookup(at.get(dst, []), x, f"{where}.restrict.{m}"):
                _lookup(at.get(src, []), y, f"{where}.restrict.{m}")
            for x, y in table.items()
        }
    return _validated(where, lambda: build_presheaf(cat, at, restrict, name=name))


def _map(ws: Workspace, data: Mapping, where: str):
    source = _reference(ws, "presheaves", data.get("source"), where)
    target = _reference(ws, "presheaves", data.get("target"), where)
    cat = source.category
    kind = data.get("kind", "components")
    if kind == "components":
        comps = {}
        for obj, table in _table(data, "components", where).items():
            at = f"{where}.components.{obj}"
            if obj not in cat.objects:
                raise ValidationError(at, f"unknown object {obj!r}")
            comps[obj] = {
                _lookup(source(obj), x, at): _lookup(target(obj), y, at) for x, y in table.items()
            }
    elif kind in ("identity", "inclusion"):
        comps = {obj: {x: x for x in source(obj)} for obj in cat.objects}
    elif kind == "vertices":
        vertices = _table(data, "vertices", where)

        def move(x):
            if isinstance(x, tuple):
                return tuple(move(v) for v in x)
            if render(x) not in vertices:
                raise ValidationError(f"{where}.vertices", f"no image for vertex {render(x)}")
            return _element(vertices[render(x)])

        comps = {obj: {x: move(x) for x in source(obj)} for obj in cat.objects}
    else:
        raise ValidationError(where, f"unknown map kind {kind!r}")
    name = where.rsplit(".", 1)[-1]
    return _validated(where, lambda: build_psh_map(source, target, comps, name=name))


def _signature(ws: Workspace, data: Mapping, where: str):
    name = where.rsplit(".", 1)[-1]
    if "arities" in data:
        arities = [int(k) for k in _table(data, "arities", where, list)]
        return _validated(where, lambda: arity_signature(*arities, name=name))
    if "fibers" in data:
        fibers = {
            a: _elements(bs, f"{where}.fibers.{a}")
            for a, bs in _table(data, "fibers", where).items()
        }
        return _validated(where, lambda: signature_from_fibers(fibers, name=name))
    A = _elements(_table(data, "A", where, list), f"{where}.A")
    B = _elements(_table(data, "B", where, list), f"{where}.B")
    f = {_lookup(B, b, f"{where}.f"): _element(a) for b, a in _table(data, "f", where).items()}
    return _validated(where, lambda: build_signature(A, B, f, name=name))


def _dep_signature(ws: Workspace, data: Mapping, where: str):
    name = where.rsplit(".", 1)[-1]
    C, A, B = (_elements(_table(data, k, where, list), f"{where}.{k}") for k in "CAB")

    def fn(key: str, domain: list) -> dict:
        table = _table(data, key, where)
        return {_lookup(domain, x, f"{where}.{key}"): _element(y) for x, y in table.items()}

    f, h, g = fn("f", B), fn("h", B), fn("g", A)
    return _validated(where, lambda: build_dep_signature(C, A, B, f, h, g, name=name))


def _algebra(ws: Workspace, data: Mapping, where: str):
    sig = _reference(ws, "signatures", data.get("signature"), where)
    carrier = _elements(_table(data, "carrier", where, list), f"{where}.carrier")
    structure = {}
    for i, row in enumerate(data.get("table", [])):
        at = f"{where}.table[{i}]"
        a = _lookup(sig.labels, row.get("label"), at)
        children = row.get("children", {})
        t = tuple(
            (b, _lookup(carrier, children.get(render(b)), at)) for b in sig.fiber(a)
        )
        structure[(a, t)] = _lookup(carrier, row.get("value"), at)
    if "default" in data:
        default = _lookup(carrier, data["default"], f"{where}.default")
        for elem in apply_poly(sig, carrier):
            structure.setdefault(elem, default)
    return _validated(where, lambda: build_algebra(sig, carrier, structure))


def _coalgebra(ws: Workspace, data: Mapping, where: str):
    sig = _reference(ws, "signatures", data.get("signature"), where)
    raw = _table(data, "step", where)
    states = list(raw)
    step = {}
    for x, entry in raw.items():
        at = f"{where}.step.{x}"
        a = _lookup(sig.labels, entry.get("label"), at)
        children = entry.get("children", {})
        step[x] = (
            a,
            {b: _lookup(states, children.get(render(b)), at) for b in sig.fiber(a)},
        )
    name = where.rsplit(".", 1)[-1]
    return _validated(where, lambda: build_coalgebra(sig, states, step, name=name))


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def load_document(text: str, path: str = "<workspace>") -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise ParseError(path, "a workspace must be a JSON object")
    unknown = sorted(set(doc) - set(SECTIONS))
    if unknown:
        raise ParseError(path, f"unknown top-level keys {unknown}")
    return doc


def build_workspace(doc: Mapping, *, truncation: int = 3, path: Path | None = None) -> Workspace:
    """Validate every structure of an already decoded document."""
    ws = Workspace(path=path)
    loaders = {
        "categories": lambda data, where: _category(ws, data, where),
        "reedy": lambda data, where: _reedy(ws, data, where),
        "presheaves": lambda data, where: _presheaf(ws, data, where, truncation),
        "maps": lambda data, where: _map(ws, data, where),
        "signatures": lambda data, where: _signature(ws, data, where),
        "dep_signatures": lambda data, where: _dep_signature(ws, data, where),
        "algebras": lambda data, where: _algebra(ws, data, where),
        "coalgebras": lambda data, where: _coalgebra(ws, data, where),
    }
    for section in SECTIONS:
        entries = doc.get(section, {})
        if not isinstance(entries, dict):
            raise ParseError(section, "expected an object of named entries")
        for name, data in entries.items():
            where = f"{section}.{name}"
            if not isinstance(data, dict):
                raise ParseError(where, "expected an object")
            getattr(ws, section)[name] = loaders[section](data, where)
    log.info("workspace %s: %s", path or "<memory>", ws.summary())
    return ws


def parse_workspace(path: str | Path, *, truncation: int = 3) -> Workspace:
    """Read and validate a workspace file.

    Raises ``ParseError`` for malformed input and ``ValidationError`` naming
    the first structure that does not validate.
    """
    path = Path(path)
    if not path.is_file():
        raise ParseError(str(path), "workspace file not found")
    doc = load_document(path.read_text(encoding="utf-8"), str(path))
    return build_workspace(doc, truncation=truncation, path=path)
