"""Stage-by-stage enumeration of the initial algebra of P_f.

W_{<0} is empty and W_{<k+1} = P_f(W_{<k}), read as trees: W_{<k} is
exactly the set of trees of rank below k.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from shared.budget import check_size, resolve_budget
from shared.fincat import FinSet
from shared.poly import PolySignature, apply_poly, poly_size

from .tree import WTree

log = logging.getLogger(__name__)


@dataclass
class StageChain:
    """W_{<0} ⊆ W_{<1} ⊆ ... ⊆ W_{<n}.

    ``stabilized_at`` is the first k with W_{<k} = W_{<k+1}; from there on
    every stage equals W(f).
    """

    signature: PolySignature
    stages: list[FinSet] = field(default_factory=list)
    stabilized_at: int | None = None

    @property
    def stabilized(self) -> bool:
        return self.stabilized_at is not None

    @property
    def limit(self) -> FinSet | None:
        """W(f) when the chain has stabilized."""
        if self.stabilized_at is None:
            return None
        return self.stages[self.stabilized_at]

    def sizes(self) -> list[int]:
        return [len(s) for s in self.stages]

    def top(self) -> FinSet:
        return self.stages[-1]


def next_stage(sig: PolySignature, stage: FinSet, *, budget: int | None = None) -> FinSet:
    """P_f(stage) with every element read as the tree it builds."""
    return FinSet.of(WTree(a, t) for a, t in apply_poly(sig, stage, budget=budget))


def enumerate_stage(sig: PolySignature, n: int, *, budget: int | None = None) -> StageChain:
    """Compute W_{<0}, ..., W_{<n}.

    Raises ``SizeLimitExceeded`` as soon as a stage would exceed *budget*.
    """
    if n < 0:
        raise ValueError(f"Stage index must be >= 0, got {n}")
    limit = resolve_budget(budget)
    chain = StageChain(signature=sig, stages=[FinSet(())])
    for k in range(n):
        current = chain.stages[-1]
        if chain.stabilized:
            chain.stages.append(current)
            continue
        check_size(poly_size(sig, len(current)), limit, f"enumerating stage {k + 1}")
        nxt = next_stage(sig, current, budget=limit)
        if nxt == current:
            chain.stabilized_at = k
            log.info("W-type %s stabilized at stage %d (%d trees)", sig.name, k, len(nxt))
        chain.stages.append(nxt)
        log.debug("stage %d: %d trees", k + 1, len(nxt))
    return chain
