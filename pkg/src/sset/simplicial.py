"""Truncated simplicial sets: presheaves on Delta<=N.

Simplices of standard simplices and their subobjects are written as vertex
sequences: an m-simplex of Delta[n] is a monotone tuple of length m + 1
with entries in 0..n. Restriction along alpha: [k] -> [m] reads off
``tuple(x[i] for i in alpha)``.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Hashable, Iterable
from dataclasses import dataclass
from typing import Literal

from shared.fincat import (
    FinCategory,
    FinSet,
    Presheaf,
    PshMap,
    build_psh_map,
    map_values,
    presheaf_from_action,
    simplex_category,
)
from shared.render import render

log = logging.getLogger(__name__)

CellKind = Literal["simplex", "boundary", "horn"]


class SimplicialError(ValueError):
    """Base class for simplicial-set errors."""


class DimensionOutOfRange(SimplicialError):
    def __init__(self, what: str, value: int, bound: int):
        self.value = value
        self.bound = bound
        super().__init__(f"{what} = {value} is out of range (must be <= {bound})")


def delta(N: int) -> FinCategory:
    """Delta<=N."""
    return simplex_category(N)


def level(n: int) -> str:
    return f"[{n}]"


def dim_of(obj: str) -> int:
    return int(obj.strip("[]"))


def truncation_of(cat: FinCategory) -> int:
    """N for a category built by ``delta(N)``."""
    return max(dim_of(obj) for obj in cat.objects)


def _vertex_act(x: tuple, alpha: str) -> tuple:
    return tuple(x[i] for i in map_values(alpha))


def _simplices(n: int, m: int) -> Iterable[tuple]:
    return itertools.combinations_with_replacement(range(n + 1), m + 1)


def _sub_simplex(N: int, n: int, keep: Callable[[tuple], bool], name: str) -> Presheaf:
    cat = delta(N)
    at = {
        level(m): FinSet(tuple(x for x in _simplices(n, m) if keep(x)))
        for m in range(N + 1)
    }
    return presheaf_from_action(cat, at, _vertex_act, name=name, validate=False)


def standard_simplex(N: int, n: int) -> Presheaf:
    if n > N:
        raise DimensionOutOfRange("n", n, N)
    return _sub_simplex(N, n, lambda x: True, f"Delta[{n}]")


def boundary(N: int, n: int) -> Presheaf:
    """Simplices of Delta[n] missing at least one vertex."""
    if n > N:
        raise DimensionOutOfRange("n", n, N)
    return _sub_simplex(N, n, lambda x: len(set(x)) < n + 1, f"dDelta[{n}]")


def horn(N: int, n: int, k: int) -> Presheaf:
    """Simplices of Delta[n] missing some vertex other than k."""
    if n > N:
        raise DimensionOutOfRange("n", n, N)
    if not 0 <= k <= n:
        raise DimensionOutOfRange("k", k, n)
    return _sub_simplex(
        N, n, lambda x: any(j not in x for j in range(n + 1) if j != k), f"Lambda^{k}[{n}]"
    )


@dataclass(frozen=True, eq=False)
class Cell:
    """A generating cell with its inclusion into Delta[n] and, if asked, a vertex."""

    kind: CellKind
    n: int
    k: int | None
    cell: Presheaf
    ambient: Presheaf
    inclusion: PshMap
    vertex: PshMap | None


def generate_cell(kind: CellKind, n: int, k: int | None = None, *, N: int = 3) -> Cell:
    """Delta[n], its boundary or the horn Lambda^k[n] over Delta<=N.

    ``vertex`` is the map Delta[0] -> cell picking vertex k (when k is given
    and the vertex lies in the cell).
    """
    if kind == "horn":
        if k is None:
            raise SimplicialError("horn needs k")
        cell = horn(N, n, k)
    elif kind == "boundary":
        cell = boundary(N, n)
    elif kind == "simplex":
        cell = standard_simplex(N, n)
    else:
        raise SimplicialError(f"Unknown cell kind: {kind!r}")
    ambient = standard_simplex(N, n)
    cat = ambient.category
    inclusion = PshMap(cell, ambient, {obj: {x: x for x in cell(obj)} for obj in cat.objects})
    vertex = None
    if k is not None:
        if not 0 <= k <= n:
            raise DimensionOutOfRange("k", k, n)
        point = standard_simplex(N, 0)
        if (k,) in cell(level(0)):
            vertex = build_psh_map(
                point, cell,
                {obj: {x: tuple(k for _ in x) for x in point(obj)} for obj in cat.objects},
                name=f"vertex {k}",
            )
    return Cell(kind=kind, n=n, k=k, cell=cell, ambient=ambient, inclusion=inclusion, vertex=vertex)


# ---------------------------------------------------------------------------
# Other simplicial sets
# ---------------------------------------------------------------------------


def discrete_sset(N: int, points: Iterable[Hashable], name: str = "") -> Presheaf:
    """K(S): S in every dimension, all restrictions identities."""
    cat = delta(N)
    S = FinSet.of(points)
    return presheaf_from_action(
        cat, {obj: S for obj in cat.objects}, lambda x, m: x, name=name or f"K({len(S)})",
        validate=False,
    )


def indiscrete_nerve(N: int, points: Iterable[Hashable], name: str = "") -> Presheaf:
    """Nerve of the groupoid with exactly one arrow between any two points.

    m-simplices are all (m+1)-tuples of points; a Kan complex.
    """
    cat = delta(N)
    S = FinSet.of(points)
    at = {
        level(m): FinSet(tuple(itertools.product(S.elements, repeat=m + 1)))
        for m in range(N + 1)
    }
    return presheaf_from_action(
        cat, at, _vertex_act, name=name or f"J({len(S)})", validate=False
    )


def nondegenerate(X: Presheaf, n: int) -> list[Hashable]:
    """n-simplices of X that are not restrictions along a map [n] -> [m], m < n."""
    cat = X.category
    degenerate = set()
    for sigma in cat.out_of(level(n)):
        target = cat.dst(sigma)
        if dim_of(target) < n:
            degenerate.update(X.act(y, sigma) for y in X(target))
    return [x for x in X(level(n)) if x not in degenerate]


def simplex_morphism(a: tuple, n: int) -> str:
    """The morphism [m] -> [n] whose vertex sequence is *a*."""
    return f"{len(a) - 1}>{n}:" + "".join(map(str, a))


def yoneda_map(X: Presheaf, n: int, x: Hashable, simplex: Presheaf | None = None) -> PshMap:
    """Delta[n] -> X sending the identity simplex to x.

    Pass *simplex* to reuse an existing Delta[n] as the source.
    """
    if simplex is None:
        simplex = standard_simplex(truncation_of(X.category), n)
    cat = X.category
    comps = {}
    for obj in cat.objects:
        comps[obj] = {a: X.act(x, simplex_morphism(a, n)) for a in simplex(obj)}
    return PshMap(simplex, X, comps, name=f"y({render(x)})")

