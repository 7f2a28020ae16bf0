"""Stage presheaves of hereditarily natural trees.

Stage k+1 at C is obtained from the natural families over stage k:
every element (a, t) of P_f(W_{<k})(C) becomes the tree sup_(C, a)(t).
"""

from __future__ import annotations

import logging
from collections.abc import Hashable
from dataclasses import dataclass, field

from shared.budget import resolve_budget
from shared.fincat import (
    FinSet,
    Presheaf,
    PshMap,
    build_psh_map,
    empty_presheaf,
    presheaf_from_action,
)
from shared.poly import presheaf_poly
from wtree import WTree, enumerate_stage

from .hat import HatSignature, hat_construction
from .trees import is_hereditarily_natural, restrict_tree

log = logging.getLogger(__name__)


@dataclass
class PshStageChain:
    hat: HatSignature
    stages: list[Presheaf] = field(default_factory=list)
    stabilized_at: int | None = None

    @property
    def stabilized(self) -> bool:
        return self.stabilized_at is not None

    def sizes(self) -> list[dict[str, int]]:
        return [s.sizes() for s in self.stages]

    def top(self) -> Presheaf:
        return self.stages[-1]


def stage_presheaf(hat: HatSignature, trees: dict[str, FinSet], name: str = "") -> Presheaf:
    """Presheaf of trees acted on by ``restrict_tree``."""
    return presheaf_from_action(
        hat.f.category, trees, lambda w, alpha: restrict_tree(hat, w, alpha), name=name
    )


def _trees_from_poly(P: Presheaf) -> dict[str, FinSet]:
    return {
        obj: FinSet.of(WTree((obj, a), t) for a, t in P(obj)) for obj in P.category.objects
    }


def enumerate_psh_stage(f: PshMap, n: int, *, budget: int | None = None) -> PshStageChain:
    """W(f)_{<0}, ..., W(f)_{<n} as presheaves of trees.

    Every stage is validated as a presheaf, so closure under restriction is
    checked on construction.
    """
    limit = resolve_budget(budget)
    hat = hat_construction(f)
    chain = PshStageChain(hat=hat, stages=[empty_presheaf(f.category)])
    for k in range(n):
        current = chain.stages[-1]
        if chain.stabilized:
            chain.stages.append(current)
            continue
        P = presheaf_poly(f, current, budget=limit)
        nxt = stage_presheaf(hat, _trees_from_poly(P), name=f"W<{k + 1}")
        if all(nxt(obj) == current(obj) for obj in f.category.objects):
            chain.stabilized_at = k
            log.info("presheaf W-type stabilized at stage %d", k)
        chain.stages.append(nxt)
        log.debug("presheaf stage %d: %s", k + 1, nxt.sizes())
    return chain


def unfold(w: WTree) -> tuple[Hashable, tuple]:
    """The inverse of sup: (a, t) for a tree sup_(C, a)(t)."""
    return w.label[1], w.children


def stage_isomorphism(
    f: PshMap, stage: Presheaf, next_stage: Presheaf, *, budget: int | None = None
) -> tuple[PshMap, PshMap]:
    """sup: P_f(stage) -> next_stage and unfold: next_stage -> P_f(stage).

    Both are validated as natural maps; raises ``ValueError`` if they are
    not mutually inverse.
    """
    P = presheaf_poly(f, stage, budget=budget)
    cat = f.category
    sup_comps = {obj: {(a, t): WTree((obj, a), t) for a, t in P(obj)} for obj in cat.objects}
    unfold_comps = {obj: {w: unfold(w) for w in next_stage(obj)} for obj in cat.objects}
    sup_map = build_psh_map(P, next_stage, sup_comps, name="sup")
    unfold_map = build_psh_map(next_stage, P, unfold_comps, name="unfold")
    for obj in cat.objects:
        if any(unfold_comps[obj][sup_comps[obj][e]] != e for e in P(obj)):
            raise ValueError(f"unfold . sup is not the identity at {obj}")
        if any(sup_comps[obj][unfold_comps[obj][w]] != w for w in next_stage(obj)):
            raise ValueError(f"sup . unfold is not the identity at {obj}")
    return sup_map, unfold_map


def hat_stage_trees(hat: HatSignature, n: int, *, budget: int | None = None) -> FinSet:
    """All trees of W(f^) of rank < n, natural or not (bounded searches only)."""
    return enumerate_stage(hat.signature, n, budget=budget).top()


def hereditarily_natural_part(hat: HatSignature, trees: FinSet) -> dict[str, FinSet]:
    """Filter a set of f^-trees down to the hereditarily natural ones, by object."""
    keep = [w for w in trees if is_hereditarily_natural(hat, w)]
    return {obj: FinSet.of(w for w in keep if w.label[0] == obj) for obj in hat.f.category.objects}
