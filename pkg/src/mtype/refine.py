"""Bisimilarity by naive partition refinement, and coalgebra minimization."""

from __future__ import annotations

import logging
from collections.abc import Hashable
from dataclasses import dataclass

from shared.fincat import FinSet
from shared.render import render, sort_key

from .coalgebra import Coalgebra, CoalgebraError, build_coalgebra

log = logging.getLogger(__name__)


def refine(coalg: Coalgebra) -> dict[Hashable, int]:
    """Block index of every state under the largest bisimulation.

    Starts from the partition by label and splits blocks by the blocks of
    their successors until nothing changes. Block indices are assigned in
    canonical state order so the result is deterministic.
    """
    states = coalg.states.elements
    block = _number({x: sort_key(coalg.label(x)) for x in states}, states)
    rounds = 0
    while True:
        rounds += 1
        signature = {
            x: (block[x], tuple((sort_key(b), block[y]) for b, y in coalg.successors(x)))
            for x in states
        }
        refined = _number(signature, states)
        if len(set(refined.values())) == len(set(block.values())):
            log.debug("refinement of %s stable after %d rounds", coalg.name or "coalgebra", rounds)
            return refined
        block = refined


def _number(keys: dict[Hashable, Hashable], states: tuple) -> dict[Hashable, int]:
    seen: dict[Hashable, int] = {}
    out = {}
    for x in states:
        out[x] = seen.setdefault(keys[x], len(seen))
    return out


def disjoint_union(c1: Coalgebra, c2: Coalgebra) -> Coalgebra:
    """c1 + c2 with states tagged (0, x) and (1, y)."""
    if c1.signature is not c2.signature and c1.signature.fibers != c2.signature.fibers:
        raise CoalgebraError("Cannot compare coalgebras over different signatures")
    step = {}
    for tag, c in ((0, c1), (1, c2)):
        for x in c.states:
            a, succ = c.step[x]
            step[(tag, x)] = (a, {b: (tag, y) for b, y in succ})
    states = [(0, x) for x in c1.states] + [(1, y) for y in c2.states]
    return build_coalgebra(c1.signature, states, step, name=f"{c1.name}+{c2.name}")


def bisimilar(c1: Coalgebra, x1: Hashable, c2: Coalgebra, x2: Hashable) -> bool:
    """Whether x1 and x2 denote the same element of the final coalgebra."""
    for c, x in ((c1, x1), (c2, x2)):
        if x not in c.states:
            raise CoalgebraError(f"{render(x)} is not a state of {c.name or 'the coalgebra'}")
    blocks = refine(disjoint_union(c1, c2))
    return blocks[(0, x1)] == blocks[(1, x2)]


@dataclass(frozen=True)
class Minimization:
    """The minimal coalgebra and the quotient map onto it.

    States of ``minimal`` are the least-rendering representatives of their
    bisimilarity classes.
    """

    minimal: Coalgebra
    quotient: dict[Hashable, Hashable]

    def classes(self) -> list[list[Hashable]]:
        grouped: dict[Hashable, list[Hashable]] = {}
        for x, rep in self.quotient.items():
            grouped.setdefault(rep, []).append(x)
        return [sorted(grouped[rep], key=sort_key) for rep in self.minimal.states]


def minimize(coalg: Coalgebra) -> Minimization:
    blocks = refine(coalg)
    rep: dict[int, Hashable] = {}
    for x in sorted(coalg.states, key=sort_key):
        rep.setdefault(blocks[x], x)
    quotient = {x: rep[blocks[x]] for x in coalg.states}
    step = {}
    for r in rep.values():
        a, succ = coalg.step[r]
        step[r] = (a, {b: quotient[y] for b, y in succ})
    minimal = build_coalgebra(
        coalg.signature, FinSet.of(rep.values()), step, name=f"min({coalg.name})"
    )
    log.info("minimized %d states to %d", len(coalg.states), len(minimal.states))
    return Minimization(minimal=minimal, quotient=quotient)
