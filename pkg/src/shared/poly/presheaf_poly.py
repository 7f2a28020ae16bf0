"""The polynomial functor of a map of presheaves f: B -> A.

An element of P_f(X) at C is a pair (a, t) with a in A(C) and t a natural
family over the fibre of a: for every alpha: D -> C and b in B(D) with
f(b) = a . alpha, an element t(alpha, b) of X(D), natural in D.
"""

from __future__ import annotations

import logging
from collections.abc import Hashable

from ..budget import check_size, resolve_budget
from ..fincat import FinSet, Presheaf, PshMap, natural_maps, presheaf_from_action
from ..render import canonical, sort_key

log = logging.getLogger(__name__)

FiberKey = tuple[str, Hashable]  # (alpha, b)


def hat_fiber(f: PshMap, obj: str, a: Hashable) -> tuple[FiberKey, ...]:
    """All (alpha, b) with alpha: D -> obj and f(b) = a . alpha, canonically ordered."""
    cat, A, B = f.category, f.target, f.source
    keys = []
    for alpha in cat.into(obj):
        d = cat.src(alpha)
        target = A.act(a, alpha)
        for b in B(d):
            if f(d, b) == target:
                keys.append((alpha, b))
    return canonical(keys)


def hat_fiber_presheaf(f: PshMap, obj: str, a: Hashable) -> Presheaf:
    """The fibre of (obj, a) as a presheaf: D |-> {(alpha: D -> obj, b) : f(b) = a . alpha}."""
    cat, B = f.category, f.source
    keys = hat_fiber(f, obj, a)
    at = {d: FinSet(tuple(k for k in keys if cat.src(k[0]) == d)) for d in cat.objects}

    def act(key: FiberKey, beta: str) -> FiberKey:
        alpha, b = key
        return cat.compose(alpha, beta), B.act(b, beta)

    return presheaf_from_action(cat, at, act, name=f"fib({obj},{a})", validate=False)


def natural_families(
    f: PshMap, obj: str, a: Hashable, X: Presheaf, *, budget: int | None = None
) -> list[tuple[tuple[FiberKey, Hashable], ...]]:
    """Every natural family t over the fibre of (obj, a), as sorted (key, value) pairs."""
    E = hat_fiber_presheaf(f, obj, a)
    families = []
    for comps in natural_maps(E, X, budget=budget):
        pairs = [(key, comps[d][key]) for d in E.category.objects for key in E(d)]
        families.append(tuple(sorted(pairs, key=lambda kv: sort_key(kv[0]))))
    return families


def presheaf_poly(f: PshMap, X: Presheaf, *, budget: int | None = None) -> Presheaf:
    """P_f(X) as a presheaf.

    Restriction along gamma: C' -> C sends (a, t) to (a . gamma, t') with
    t'(beta, b) = t(gamma . beta, b).
    """
    cat, A = f.category, f.target
    if X.category is not cat:
        raise ValueError("presheaf_poly needs X over the category of f")
    limit = resolve_budget(budget)
    at: dict[str, FinSet] = {}
    total = 0
    for obj in cat.objects:
        elems = []
        for a in A(obj):
            families = natural_families(f, obj, a, X, budget=limit)
            total += len(families)
            check_size(total, limit, "enumerating natural families")
            elems.extend((a, t) for t in families)
        at[obj] = FinSet.of(elems)

    fibers: dict[tuple[str, Hashable], tuple[FiberKey, ...]] = {}

    def act(elem, gamma: str):
        a, t = elem
        src = cat.src(gamma)
        a2 = A.act(a, gamma)
        if (src, a2) not in fibers:
            fibers[(src, a2)] = hat_fiber(f, src, a2)
        lookup = dict(t)
        t2 = tuple(
            ((beta, b), lookup[(cat.compose(gamma, beta), b)]) for beta, b in fibers[(src, a2)]
        )
        return a2, t2

    name = f"P_{f.name or 'f'}({X.name or 'X'})"
    P = presheaf_from_action(cat, at, act, name=name)
    log.debug("presheaf_poly: sizes %s", P.sizes())
    return P
