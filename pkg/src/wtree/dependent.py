"""Initial algebras of dependent polynomials, one family of trees per sort."""

from __future__ import annotations

import logging
from collections.abc import Hashable

from shared.budget import resolve_budget
from shared.fincat import FinSet
from shared.poly import DepPolySignature, apply_dep_poly

from .tree import WTree, subtrees

log = logging.getLogger(__name__)


def enumerate_dep_stage(
    dsig: DepPolySignature, n: int, *, budget: int | None = None
) -> list[dict[Hashable, FinSet]]:
    """Families W_{<0}, ..., W_{<n} with W_{<k+1} = D_f(W_{<k})."""
    limit = resolve_budget(budget)
    family = {c: FinSet(()) for c in dsig.sorts}
    stages = [family]
    for k in range(n):
        raw = apply_dep_poly(dsig, family, budget=limit)
        family = {c: FinSet.of(WTree(a, t) for a, t in raw[c]) for c in dsig.sorts}
        stages.append(family)
        log.debug("dependent stage %d: %s", k + 1, {c: len(s) for c, s in family.items()})
    return stages


def dep_compatible(dsig: DepPolySignature, w: WTree) -> bool:
    """Every child at position b of an a-node has a root label a' with g(a') = h(a, b)."""
    return all(
        dsig.g[child.label] == dsig.h[(node.label, b)]
        for node in subtrees(w)
        for b, child in node.children
    )


def sort_of(dsig: DepPolySignature, w: WTree) -> Hashable:
    return dsig.g[w.label]
