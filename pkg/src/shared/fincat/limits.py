"""Finite diagrams (covariant functors into finite sets) and their limits."""

from __future__ import annotations

import logging
from collections.abc import Hashable, Mapping
from dataclasses import dataclass

from ..budget import check_size, resolve_budget
from ..render import render, sort_key
from .category import CategoryError, FinCategory, UnknownIdentifier
from .finset import FinSet
from .presheaf import FunctorialityViolation, NaturalityViolation

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FinDiagram:
    """F: J -> FinSet. ``edges[u]`` maps F(src u) to F(dst u)."""

    shape: FinCategory
    nodes: Mapping[str, FinSet]
    edges: Mapping[str, Mapping]

    def __call__(self, obj: str) -> FinSet:
        return self.nodes[obj]

    def move(self, u: str, x: Hashable) -> Hashable:
        return self.edges[u][x]


def build_diagram(
    shape: FinCategory,
    nodes: Mapping[str, object],
    edges: Mapping[str, Mapping],
) -> FinDiagram:
    """Validate a covariant diagram; edges along identities may be omitted."""
    sets = {}
    for obj in shape.objects:
        if obj not in nodes:
            raise FunctorialityViolation(obj, "no set assigned to this object")
        v = nodes[obj]
        sets[obj] = v if isinstance(v, FinSet) else FinSet(tuple(v))
    tables: dict[str, dict] = {}
    for u in shape.morphisms:
        a, b = shape.ends[u]
        if u not in edges:
            if shape.is_identity(u):
                tables[u] = {x: x for x in sets[a]}
                continue
            raise FunctorialityViolation(u, "edge function missing")
        table = dict(edges[u])
        for x in sets[a]:
            if x not in table or table[x] not in sets[b]:
                raise FunctorialityViolation(u, f"edge is not a function {a} -> {b} at {render(x)}")
        tables[u] = table
    for u in edges:
        if u not in shape.ends:
            raise UnknownIdentifier("morphism", u, "diagram")
    for (g, f), gf in shape.table.items():
        for x in sets[shape.src(f)]:
            if tables[gf][x] != tables[g][tables[f][x]]:
                raise FunctorialityViolation(f"{g} . {f}", f"not functorial at {render(x)}")
    return FinDiagram(shape=shape, nodes=sets, edges=tables)


@dataclass(frozen=True, eq=False)
class DiagramMap:
    """Natural map between two diagrams of the same shape."""

    source: FinDiagram
    target: FinDiagram
    components: Mapping[str, Mapping]

    def __call__(self, obj: str, x: Hashable) -> Hashable:
        return self.components[obj][x]


def build_diagram_map(
    source: FinDiagram, target: FinDiagram, components: Mapping[str, Mapping]
) -> DiagramMap:
    if source.shape is not target.shape:
        raise CategoryError("Diagram map joins diagrams of different shapes")
    shape = source.shape
    for obj in shape.objects:
        for x in source(obj):
            if components[obj].get(x, None) not in target(obj):
                raise CategoryError(f"Diagram map has no valid value at {obj} for {render(x)}")
    for u in shape.morphisms:
        a, b = shape.ends[u]
        for x in source(a):
            if components[b][source.move(u, x)] != target.move(u, components[a][x]):
                raise NaturalityViolation(u, x)
    return DiagramMap(source, target, {o: dict(components[o]) for o in shape.objects})


# ---------------------------------------------------------------------------
# Limits and colimits
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Cone:
    """Limit carrier (tuples indexed by the shape's objects) with its legs."""

    carrier: FinSet
    legs: Mapping[str, Mapping]
    shape: FinCategory


@dataclass(frozen=True, eq=False)
class Cocone:
    """Colimit carrier (least representatives ``(obj, x)``) with its legs."""

    carrier: FinSet
    legs: Mapping[str, Mapping]
    classes: Mapping[Hashable, tuple]
    shape: FinCategory


def finite_limit(diagram: FinDiagram, *, budget: int | None = None) -> Cone:
    """Compatible families, one coordinate per object of the shape.

    The limit of the empty diagram is the one-point set ``{()}``.
    """
    shape = diagram.shape
    objs = shape.objects
    pos = {o: i for i, o in enumerate(objs)}
    limit = resolve_budget(budget)
    # constraints checked as soon as both ends are placed
    checks: list[list[str]] = [[] for _ in objs]
    for u in shape.morphisms:
        if shape.is_identity(u):
            continue
        a, b = shape.ends[u]
        checks[max(pos[a], pos[b])].append(u)

    partial: list[tuple] = [()]
    for k, obj in enumerate(objs):
        grown = []
        for p in partial:
            for x in diagram(obj):
                cand = p + (x,)
                if all(_edge_ok(diagram, shape, u, cand) for u in checks[k]):
                    grown.append(cand)
        check_size(len(grown), limit, f"computing a limit over {len(objs)} objects")
        partial = grown
    carrier = FinSet.of(partial)
    legs = {obj: {t: t[pos[obj]] for t in carrier} for obj in objs}
    log.debug("limit over %s: %d elements", shape.name or f"{len(objs)} objects", len(carrier))
    return Cone(carrier=carrier, legs=legs, shape=shape)


def _edge_ok(diagram: FinDiagram, shape: FinCategory, u: str, cand: tuple) -> bool:
    a, b = shape.ends[u]
    return diagram.move(u, cand[shape.objects.index(a)]) == cand[shape.objects.index(b)]


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


def finite_colimit(diagram: FinDiagram) -> Cocone:
    """Quotient of the disjoint union by the edge relation.

    Each class is named by its least member ``(obj, x)`` in canonical order.
    """
    shape = diagram.shape
    nodes = [(obj, x) for obj in shape.objects for x in diagram(obj)]
    uf = _UnionFind(nodes)
    for u in shape.morphisms:
        if shape.is_identity(u):
            continue
        a, b = shape.ends[u]
        for x in diagram(a):
            uf.union((a, x), (b, diagram.move(u, x)))
    members: dict[Hashable, list] = {}
    for node in nodes:
        members.setdefault(uf.find(node), []).append(node)
    rep_of: dict[Hashable, Hashable] = {}
    classes: dict[Hashable, tuple] = {}
    for group in members.values():
        ordered = tuple(sorted(group, key=sort_key))
        classes[ordered[0]] = ordered
        for node in group:
            rep_of[node] = ordered[0]
    carrier = FinSet.of(classes)
    legs = {obj: {x: rep_of[(obj, x)] for x in diagram(obj)} for obj in shape.objects}
    where = shape.name or f"{len(shape.objects)} objects"
    log.debug("colimit over %s: %d classes", where, len(carrier))
    return Cocone(carrier=carrier, legs=legs, classes=classes, shape=shape)
