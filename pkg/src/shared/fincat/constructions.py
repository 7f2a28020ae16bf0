"""Presheaf constructions: terminal, empty, representable, products, pullbacks."""

from __future__ import annotations

from collections.abc import Callable, Hashable

from ..render import render
from .category import CategoryError, FinCategory
from .finset import FinSet
from .presheaf import Presheaf, PshMap, presheaf_from_action


def terminal_presheaf(cat: FinCategory) -> Presheaf:
    """One point ``"*"`` at every object."""
    at = {obj: FinSet(("*",)) for obj in cat.objects}
    return presheaf_from_action(cat, at, lambda x, m: x, name="1", validate=False)


def empty_presheaf(cat: FinCategory) -> Presheaf:
    at = {obj: FinSet(()) for obj in cat.objects}
    return presheaf_from_action(cat, at, lambda x, m: x, name="0", validate=False)


def representable(cat: FinCategory, obj: str) -> Presheaf:
    """y(obj): elements at D are the morphisms D -> obj, restricted by precomposition."""
    at = {d: FinSet(cat.hom(d, obj)) for d in cat.objects}
    return presheaf_from_action(
        cat, at, lambda x, m: cat.compose(x, m), name=f"y({obj})", validate=False
    )


def terminal_map(X: Presheaf, one: Presheaf | None = None) -> PshMap:
    one = one or terminal_presheaf(X.category)
    return PshMap(X, one, {obj: {x: "*" for x in X(obj)} for obj in X.category.objects})


def product(X: Presheaf, Y: Presheaf) -> tuple[Presheaf, PshMap, PshMap]:
    """X x Y with its two projections; elements are pairs ``(x, y)``."""
    cat = _same_category(X, Y)
    at = {obj: FinSet.of((x, y) for x in X(obj) for y in Y(obj)) for obj in cat.objects}
    P = presheaf_from_action(
        cat, at, lambda p, m: (X.act(p[0], m), Y.act(p[1], m)),
        name=f"{X.name}x{Y.name}", validate=False,
    )
    p1 = PshMap(P, X, {o: {p: p[0] for p in at[o]} for o in cat.objects})
    p2 = PshMap(P, Y, {o: {p: p[1] for p in at[o]} for o in cat.objects})
    return P, p1, p2


def coproduct(X: Presheaf, Y: Presheaf) -> tuple[Presheaf, PshMap, PshMap]:
    """X + Y with its injections; elements are ``(0, x)`` and ``(1, y)``."""
    cat = _same_category(X, Y)
    at = {
        obj: FinSet(tuple((0, x) for x in X(obj)) + tuple((1, y) for y in Y(obj)))
        for obj in cat.objects
    }
    S = presheaf_from_action(
        cat, at, lambda e, m: (e[0], (X if e[0] == 0 else Y).act(e[1], m)),
        name=f"{X.name}+{Y.name}", validate=False,
    )
    i1 = PshMap(X, S, {o: {x: (0, x) for x in X(o)} for o in cat.objects})
    i2 = PshMap(Y, S, {o: {y: (1, y) for y in Y(o)} for o in cat.objects})
    return S, i1, i2


def pullback(f: PshMap, g: PshMap) -> tuple[Presheaf, PshMap, PshMap]:
    """X x_Z Y for f: X -> Z and g: Y -> Z; elements are pairs ``(x, y)``."""
    if f.target is not g.target:
        raise CategoryError("pullback needs two maps with the same target")
    X, Y = f.source, g.source
    cat = _same_category(X, Y)
    at = {
        obj: FinSet.of(
            (x, y) for x in X(obj) for y in Y(obj) if f(obj, x) == g(obj, y)
        )
        for obj in cat.objects
    }
    P = presheaf_from_action(
        cat, at, lambda p, m: (X.act(p[0], m), Y.act(p[1], m)),
        name=f"{X.name}x_{f.target.name}{Y.name}", validate=False,
    )
    p1 = PshMap(P, X, {o: {p: p[0] for p in at[o]} for o in cat.objects})
    p2 = PshMap(P, Y, {o: {p: p[1] for p in at[o]} for o in cat.objects})
    return P, p1, p2


def pairing(f: PshMap, g: PshMap, target: Presheaf) -> PshMap:
    """<f, g>: X -> target where *target* has pairs ``(f x, g x)`` as elements."""
    cat = f.category
    comps = {o: {x: (f(o, x), g(o, x)) for x in f.source(o)} for o in cat.objects}
    for o in cat.objects:
        for x, pair in comps[o].items():
            if pair not in target(o):
                raise CategoryError(f"pairing of {render(x)} at {o} is not in {target.name}")
    return PshMap(f.source, target, comps)


def subpresheaf(
    X: Presheaf, keep: Callable[[str, Hashable], bool], *, name: str = ""
) -> tuple[Presheaf, PshMap]:
    """Elements of X satisfying *keep*, with the inclusion.

    Raises ``CategoryError`` if the selection is not closed under restriction.
    """
    cat = X.category
    at = {obj: FinSet(tuple(x for x in X(obj) if keep(obj, x))) for obj in cat.objects}
    for m in cat.morphisms:
        src, dst = cat.ends[m]
        for x in at[dst]:
            if X.act(x, m) not in at[src]:
                raise CategoryError(
                    f"Subpresheaf {name or '?'} is not closed: {render(x)} . {m} leaves it"
                )
    S = presheaf_from_action(cat, at, X.act, name=name, validate=False)
    inc = PshMap(S, X, {o: {x: x for x in at[o]} for o in cat.objects})
    return S, inc


def _same_category(*presheaves: Presheaf) -> FinCategory:
    cat = presheaves[0].category
    for P in presheaves[1:]:
        if P.category is not cat:
            raise CategoryError("presheaves live over different categories")
    return cat