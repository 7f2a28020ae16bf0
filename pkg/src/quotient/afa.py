"""Anti-foundation classes of rational trees (experimental).

States of a coalgebra are read as non-well-founded sets: a state stands for
the set of what its successors stand for. The classes are computed by first
minimizing the coalgebra and then refining its states by sets of successor
classes, starting from a single block.
"""

from __future__ import annotations

import logging
from collections.abc import Hashable

from mtype import Coalgebra, minimize
from shared.fincat import FinSet
from shared.render import sort_key

from .eqrel import EqClassMap

log = logging.getLogger(__name__)


def afa_classes(coalg: Coalgebra) -> EqClassMap:
    """States identified under the largest set-bisimulation, labels ignored."""
    m = minimize(coalg)
    states = sorted(m.minimal.states, key=sort_key)
    block = {x: 0 for x in states}
    while True:
        keys = {
            x: (block[x], frozenset(block[y] for _, y in m.minimal.successors(x)))
            for x in states
        }
        numbering: dict[tuple, int] = {}
        refined = {x: numbering.setdefault(keys[x], len(numbering)) for x in states}
        if len(numbering) == len(set(block.values())):
            break
        block = refined
    rep: dict[int, Hashable] = {}
    for x in sorted(coalg.states, key=sort_key):
        rep.setdefault(block[m.quotient[x]], x)
    class_of = {x: rep[block[m.quotient[x]]] for x in coalg.states}
    log.debug("anti-foundation classes: %d states -> %d", len(coalg.states), len(rep))
    return EqClassMap(carrier=FinSet.of(rep.values()), class_of=class_of)
