"""Hereditarily finite sets, enumerated directly as nested frozensets.

This is the reference against which tree quotients are counted; it knows
nothing about trees beyond reading off the set a tree denotes.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable

from wtree import WTree

HFSet = frozenset


def realizable(m: int, arities: Iterable[int]) -> bool:
    """Whether some label can denote a set with exactly *m* distinct members."""
    arities = list(arities)
    if m == 0:
        return 0 in arities
    return any(k >= m for k in arities)


def hf_sets(n: int, arities: Iterable[int]) -> set[HFSet]:
    """Sets denoted by trees of rank < n over labels with the given arities.

    V_0 is empty; V_{k+1} holds every subset of V_k whose size some label
    can realize.
    """
    arities = sorted(set(arities))
    level: set[HFSet] = set()
    for _ in range(n):
        members = sorted(level, key=render_hf)
        sizes = [m for m in range(len(members) + 1) if realizable(m, arities)]
        level = {
            frozenset(combo) for m in sizes for combo in itertools.combinations(members, m)
        }
    return level


def denotation(w: WTree) -> HFSet:
    """The set a tree denotes: the set of what its children denote."""
    return frozenset(denotation(c) for _, c in w.children)


def render_hf(x: HFSet) -> str:
    return "{" + ",".join(sorted(render_hf(y) for y in x)) + "}"
