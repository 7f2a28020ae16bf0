"""Matching and latching objects.

For a covariant X: R -> FinSet (a ``FinDiagram`` on the base)

    M_r(X) = lim over r -> s in R-,   L_r(X) = colim over s -> r in R+,

and for a contravariant X (a ``Presheaf`` on the base) the dual indexing:
matching over plus maps s -> r and latching over minus maps r -> s. Only
non-trivial maps take part (non-identities, or non-isomorphisms for
generalised structures).
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Hashable, Mapping
from dataclasses import dataclass
from typing import Literal

from shared.fincat import (
    Cocone,
    Cone,
    FinCategory,
    FinDiagram,
    FinSet,
    Presheaf,
    build_diagram,
    build_fincategory,
    finite_colimit,
    finite_limit,
)

from .structure import ReedyError, ReedyStructure

log = logging.getLogger(__name__)

Side = Literal["matching", "latching"]
Variance = Literal["covariant", "contravariant"]
Functor = FinDiagram | Presheaf


@dataclass(frozen=True, eq=False)
class LatchingObject:
    """M_r(X) or L_r(X) with its comparison map to or from X_r.

    ``comparison`` maps X_r -> M_r(X) for matching and L_r(X) -> X_r for
    latching. ``index`` lists the maps of the base the (co)limit runs over and
    ``at[u]`` is the object X is evaluated at for the index map u.
    """

    side: Side
    variance: Variance
    obj: str
    carrier: FinSet
    comparison: dict
    index: tuple[str, ...]
    at: Mapping[str, str]
    cone: Cone | None = None
    cocone: Cocone | None = None

    def comparison_injective(self) -> bool:
        return len(set(self.comparison.values())) == len(self.comparison)


def variance_of(X: Functor) -> Variance:
    return "contravariant" if isinstance(X, Presheaf) else "covariant"


def category_of(X: Functor) -> FinCategory:
    return X.category if isinstance(X, Presheaf) else X.shape


def mover(X: Functor) -> Callable[[Hashable, str], Hashable]:
    """x, w |-> X(w)(x), whichever way X is variant."""
    if isinstance(X, Presheaf):
        return X.act
    return lambda x, w: X.move(w, x)


def _index_shape(
    nodes: list[str],
    arrows: list[tuple[str, str, str]],
    identity_of: Callable[[str], str],
    compose: Callable[[str, str], str],
    name: str,
) -> tuple[FinCategory, dict[str, str]]:
    """Shape category whose arrows are labelled by base morphisms w.

    *arrows* are (w, a, b) for an arrow a -> b; the composite of (w2, b, c)
    after (w1, a, b) is labelled ``compose(w2, w1)``. Returns the shape and
    the label of each arrow id.
    """
    ident = {a: f"{a} -{identity_of(a)}-> {a}" for a in nodes}
    ids = {(w, a, b): f"{a} -{w}-> {b}" for w, a, b in arrows}
    label = {mid: key[0] for key, mid in ids.items()}
    out: dict[str, list[tuple[str, str, str]]] = {a: [] for a in nodes}
    for key in ids:
        out[key[1]].append(key)
    table = []
    for w1, a, b in ids:
        for w2, _, c in out[b]:
            w = compose(w2, w1)
            if (w, a, c) not in ids:
                raise ReedyError(f"index category of {name} is not closed: {w} from {a} to {c}")
            table.append((ids[(w2, b, c)], ids[(w1, a, b)], ids[(w, a, c)]))
    morphisms = [(mid, a, b) for (_, a, b), mid in ids.items()]
    shape = build_fincategory(nodes, morphisms, table, identities=ident, name=name)
    return shape, label


def matching_latching(
    r: ReedyStructure,
    X: Functor,
    obj: str,
    side: Side,
    variance: Variance | None = None,
    *,
    budget: int | None = None,
) -> LatchingObject:
    """M_obj(X) or L_obj(X) with the canonical comparison map."""
    cat = r.base
    if category_of(X) is not cat:
        raise ReedyError("X must be defined on the base of the Reedy structure")
    actual = variance_of(X)
    if variance is not None and variance != actual:
        raise ReedyError(f"X is {actual}, not {variance}")
    move = mover(X)
    contravariant = actual == "contravariant"

    if side == "matching" and not contravariant:
        # u: obj -> s in R-, arrows w: u -> w u
        nodes = r.minus_out_of(obj)
        arrows = [
            (w, u, cat.compose(w, u))
            for u in nodes for w in cat.out_of(cat.dst(u))
            if w in r.minus and cat.compose(w, u) in nodes
        ]
        at = {u: cat.dst(u) for u in nodes}
        shape, label = _index_shape(nodes, arrows, lambda u: cat.identity(at[u]), cat.compose,
                                    f"{obj}/R-")
    elif side == "latching" and not contravariant:
        # u: s -> obj in R+, arrows w: u -> u' with u' w = u
        nodes = r.plus_into(obj)
        arrows = [
            (w, u, u2)
            for u in nodes for u2 in nodes for w in cat.hom(cat.src(u), cat.src(u2))
            if w in r.plus and cat.compose(u2, w) == u
        ]
        at = {u: cat.src(u) for u in nodes}
        shape, label = _index_shape(nodes, arrows, lambda u: cat.identity(at[u]), cat.compose,
                                    f"R+/{obj}")
    elif side == "matching":
        # u: s -> obj in R+, arrows u -> u w restricting along w
        nodes = r.plus_into(obj)
        arrows = [
            (w, u, cat.compose(u, w))
            for u in nodes for w in cat.into(cat.src(u))
            if w in r.plus and cat.compose(u, w) in nodes
        ]
        at = {u: cat.src(u) for u in nodes}
        shape, label = _index_shape(nodes, arrows, lambda u: cat.identity(at[u]),
                                    lambda w2, w1: cat.compose(w1, w2), f"R+/{obj}")
    elif side == "latching":
        # u: obj -> s in R-, arrows w u -> u restricting along w
        nodes = r.minus_out_of(obj)
        arrows = [
            (w, cat.compose(w, u), u)
            for u in nodes for w in cat.out_of(cat.dst(u))
            if w in r.minus and cat.compose(w, u) in nodes
        ]
        at = {u: cat.dst(u) for u in nodes}
        shape, label = _index_shape(nodes, arrows, lambda u: cat.identity(at[u]),
                                    lambda w2, w1: cat.compose(w1, w2), f"{obj}/R-")
    else:
        raise ReedyError(f"Unknown side {side!r}")

    diagram = build_diagram(
        shape,
        {u: X(at[u]) for u in nodes},
        {
            mid: {x: move(x, label[mid]) for x in X(at[shape.src(mid)])}
            for mid in shape.morphisms
        },
    )
    if side == "matching":
        cone = finite_limit(diagram, budget=budget)
        comparison = {x: tuple(move(x, u) for u in shape.objects) for x in X(obj)}
        result = LatchingObject(
            side, actual, obj, cone.carrier, comparison, tuple(nodes), at, cone=cone
        )
    else:
        cocone = finite_colimit(diagram)
        comparison = {rep: move(rep[1], rep[0]) for rep in cocone.carrier}
        result = LatchingObject(
            side, actual, obj, cocone.carrier, comparison, tuple(nodes), at, cocone=cocone
        )
    log.debug("%s object at %s: %d elements over %d maps", side, obj, len(result.carrier),
              len(nodes))
    return result


def latching_leg(lat: LatchingObject, u: str, x: Hashable) -> Hashable:
    """The class of x in X at the index map u."""
    if lat.cocone is None:
        raise ReedyError("not a latching object")
    return lat.cocone.legs[u][x]


def matching_coordinate(lat: LatchingObject, m: tuple, u: str) -> Hashable:
    if lat.cone is None:
        raise ReedyError("not a matching object")
    return m[lat.cone.shape.objects.index(u)]
