"""Truncations tr_n: M(f) -> P_f^n(1) of coalgebra states."""

from __future__ import annotations

from collections.abc import Hashable
from dataclasses import dataclass

from wtree import WTree

from .coalgebra import Coalgebra


@dataclass(frozen=True)
class Cut:
    """The unique element of 1, marking a branch cut off at the truncation depth."""

    def render(self) -> str:
        return "#"

    def to_json(self) -> str:
        return "#"


CUT = Cut()

TruncTree = WTree | Cut


def truncate(coalg: Coalgebra, x: Hashable, n: int) -> TruncTree:
    """tr_0 is the cut; tr_{n+1} = P_f(tr_n) . step."""
    if n < 0:
        raise ValueError(f"Truncation depth must be >= 0, got {n}")
    memo: dict[tuple[Hashable, int], TruncTree] = {}

    def go(state: Hashable, depth: int) -> TruncTree:
        if depth == 0:
            return CUT
        key = (state, depth)
        if key not in memo:
            a, succ = coalg.step[state]
            memo[key] = WTree(a, tuple((b, go(y, depth - 1)) for b, y in succ))
        return memo[key]

    return go(x, n)


def cut_at(t: TruncTree, n: int) -> TruncTree:
    """The chain projection P_f^{m}(1) -> P_f^n(1) for n <= m: cut every branch at depth n."""
    if n == 0 or isinstance(t, Cut):
        return CUT
    return WTree(t.label, tuple((b, cut_at(c, n - 1)) for b, c in t.children))
