"""Dependent products along a map of presheaves.

For f: B -> A and z: Z -> B, the presheaf Pi_f(Z) has at C the pairs
(a, s) with a in A(C) and s a section of z over the fibre of (C, a): a
natural map from {(beta: D -> C, b) : f(b) = a . beta} to Z with
z(s(beta, b)) = b. Restriction along gamma sends (a, s) to (a . gamma, s')
with s'(beta, b) = s(gamma . beta, b).
"""

from __future__ import annotations

import logging
from collections.abc import Hashable

from shared.budget import check_size, resolve_budget
from shared.fincat import (
    FinSet,
    PshMap,
    count_natural_maps,
    natural_maps,
    presheaf_from_action,
    pullback,
)
from shared.poly import hat_fiber, hat_fiber_presheaf
from shared.render import sort_key

from .simplicial import SimplicialError

log = logging.getLogger(__name__)

Section = tuple[tuple[tuple[str, Hashable], Hashable], ...]


def sections_over(
    f: PshMap, z: PshMap, obj: str, a: Hashable, *, budget: int | None = None
) -> list[Section]:
    """Sections of z over the fibre of (obj, a), as sorted (key, value) pairs."""
    F = hat_fiber_presheaf(f, obj, a)
    found = []
    for comps in natural_maps(
        F, z.source,
        allowed=lambda d, key, v: z(d, v) == key[1],
        budget=budget,
    ):
        pairs = [(key, comps[d][key]) for d in F.category.objects for key in F(d)]
        found.append(tuple(sorted(pairs, key=lambda kv: sort_key(kv[0]))))
    return found


def dependent_product(f: PshMap, z: PshMap, *, budget: int | None = None) -> PshMap:
    """Pi_f(z): Pi_f(Z) -> A.

    Raises ``SizeLimitExceeded`` when the presheaf would have more elements
    than the budget.
    """
    if z.target is not f.source:
        raise SimplicialError("dependent_product needs z: Z -> B for f: B -> A")
    cat, A = f.category, f.target
    limit = resolve_budget(budget)
    at: dict[str, FinSet] = {}
    total = 0
    for obj in cat.objects:
        elems = []
        for a in A(obj):
            sections = sections_over(f, z, obj, a, budget=limit)
            total += len(sections)
            check_size(total, limit, "enumerating sections of a dependent product")
            elems.extend((a, s) for s in sections)
        at[obj] = FinSet.of(elems)

    fibers: dict[tuple[str, Hashable], tuple] = {}

    def act(elem, gamma: str):
        a, s = elem
        src = cat.src(gamma)
        a2 = A.act(a, gamma)
        if (src, a2) not in fibers:
            fibers[(src, a2)] = hat_fiber(f, src, a2)
        lookup = dict(s)
        return a2, tuple(
            ((beta, b), lookup[(cat.compose(gamma, beta), b)]) for beta, b in fibers[(src, a2)]
        )

    name = f"Pi_{f.name or 'f'}({z.source.name or 'Z'})"
    Pi = presheaf_from_action(cat, at, act, name=name, validate=False)
    log.debug("dependent product %s: sizes %s", name, Pi.sizes())
    return PshMap(Pi, A, {obj: {e: e[0] for e in at[obj]} for obj in cat.objects}, name=name)


def adjunction_counts(
    f: PshMap, z: PshMap, y: PshMap, *, budget: int | None = None
) -> tuple[int, int]:
    """|hom_A(Y, Pi_f Z)| and |hom_B(f*Y, Z)| for y: Y -> A.

    The two agree whenever Pi_f is right adjoint to pulling back along f.
    """
    if y.target is not f.target:
        raise SimplicialError("y must live over the target of f")
    pi = dependent_product(f, z, budget=budget)
    left = count_natural_maps(
        y.source, pi.source,
        allowed=lambda obj, u, v: v[0] == y(obj, u),
        budget=budget,
    )
    pulled, _, to_B = pullback(y, f)
    right = count_natural_maps(
        pulled, z.source,
        allowed=lambda obj, u, v: z(obj, v) == to_B(obj, u),
        budget=budget,
    )
    return left, right


def global_sections(z: PshMap, *, budget: int | None = None) -> int:
    """Number of sections of z: natural maps s with z s = id."""
    return count_natural_maps(
        z.target, z.source, allowed=lambda obj, b, v: z(obj, v) == b, budget=budget
    )


def fibre_sizes(p: PshMap) -> dict[str, dict[Hashable, int]]:
    """For each object, how many elements of the source sit over each target element."""
    sizes: dict[str, dict[Hashable, int]] = {}
    for obj in p.category.objects:
        counts = {x: 0 for x in p.target(obj)}
        for e in p.source(obj):
            counts[p(obj, e)] += 1
        sizes[obj] = counts
    return sizes
