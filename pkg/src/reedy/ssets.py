"""R^op-diagrams of truncated simplicial sets.

A diagram X: R^op -> sSet<=N is stored as one presheaf on R x Delta<=N
(objects ``"r|[n]"``, morphisms ``"g|alpha"``). ``level_presheaf`` fixes
the simplicial level and gives a presheaf on R; ``slice_presheaf`` fixes an
object of R and gives a simplicial set.
"""

from __future__ import annotations

import functools
import logging
from collections.abc import Mapping

from shared.fincat import (
    FinCategory,
    FinSet,
    Presheaf,
    PshMap,
    build_psh_map,
    presheaf_from_action,
    product_category,
    product_object,
)
from sset import delta, level, truncation_of

from .structure import ReedyError, ReedyStructure

log = logging.getLogger(__name__)

DIAGRAM_CACHE_SIZE = 32


@functools.lru_cache(maxsize=DIAGRAM_CACHE_SIZE)
def diagram_category(r: ReedyStructure, N: int) -> FinCategory:
    """R x Delta<=N, one instance per structure so diagrams over it can be compared.

    Only the most recent ``DIAGRAM_CACHE_SIZE`` categories are kept; diagrams built
    over an evicted one no longer share a category with new diagrams.
    """
    return product_category(r.base, delta(N))


def truncation_over(r: ReedyStructure, cat: FinCategory) -> int:
    """N such that *cat* is R x Delta<=N, or ``ReedyError``."""
    per_object, rest = divmod(len(cat.objects), len(r.base.objects))
    N = per_object - 1
    expected = [product_object(c, level(n)) for c in r.base.objects for n in range(N + 1)]
    if rest or N < 0 or list(cat.objects) != expected:
        raise ReedyError(
            f"{cat.name or 'category'} is not {r.base.name} x Delta<=N; "
            "diagrams of simplicial sets live on the product category"
        )
    return N


def sset_diagram(
    r: ReedyStructure,
    ssets: Mapping[str, Presheaf],
    restrictions: Mapping[str, PshMap],
    *,
    name: str = "",
) -> Presheaf:
    """Assemble X from X_r = ``ssets[r]`` and X(g): X_dst -> X_src.

    Restrictions along identities may be left out. Functoriality in R is
    checked when the presheaf is built.
    """
    base = r.base
    N = truncation_of(ssets[base.objects[0]].category)
    cat = diagram_category(r, N)
    parts = {f"{g}|{a}": (g, a) for g in base.morphisms for a in delta(N).morphisms}
    for g in base.morphisms:
        if g not in restrictions and not base.is_identity(g):
            raise ReedyError(f"No restriction given along {g}")
    at = {
        product_object(c, level(n)): FinSet(ssets[c](level(n)).elements)
        for c in base.objects
        for n in range(N + 1)
    }

    def act(x, m: str):
        g, alpha = parts[m]
        if g in restrictions:
            x = restrictions[g](delta(N).dst(alpha), x)
        return ssets[base.src(g)].act(x, alpha)

    X = presheaf_from_action(cat, at, act, name=name)
    log.debug("diagram %s of simplicial sets: %d elements", name or "<anonymous>", X.size())
    return X


def sset_diagram_map(
    source: Presheaf, target: Presheaf, components: Mapping[str, PshMap], *, name: str = ""
) -> PshMap:
    """A map of diagrams from one simplicial map per object of R."""
    cat = source.category
    comps: dict[str, dict] = {}
    for obj in cat.objects:
        c, n = obj.rsplit("|", 1)
        comps[obj] = dict(components[c].components[n])
    return build_psh_map(source, target, comps, name=name)


def level_presheaf(X: Presheaf, r: ReedyStructure, n: int) -> Presheaf:
    """X(-, [n]) as a presheaf on R."""
    base = r.base
    ident = delta(truncation_over(r, X.category)).identity(level(n))
    at = {c: X(product_object(c, level(n))) for c in base.objects}
    return presheaf_from_action(
        base, at, lambda x, g: X.act(x, f"{g}|{ident}"), name=f"{X.name}[{n}]", validate=False
    )


def level_map(f: PshMap, source: Presheaf, target: Presheaf, n: int) -> PshMap:
    """f at level n, between the level presheaves *source* and *target*."""
    comps = {c: f.components[product_object(c, level(n))] for c in source.category.objects}
    return PshMap(source, target, comps)


def slice_presheaf(X: Presheaf, r: ReedyStructure, obj: str) -> Presheaf:
    """X_obj as a simplicial set."""
    N = truncation_over(r, X.category)
    ident = r.base.identity(obj)
    cat = delta(N)
    at = {level(n): X(product_object(obj, level(n))) for n in range(N + 1)}
    return presheaf_from_action(
        cat, at, lambda x, a: X.act(x, f"{ident}|{a}"), name=f"{X.name}_{obj}", validate=False
    )
