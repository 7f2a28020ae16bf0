"""Finite coalgebras for P_f, presenting elements of the M-type."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass

from shared.fincat import FinSet
from shared.poly import PolyElement, PolySignature, check_poly_element
from shared.render import render
from wtree import WTree, subtrees


class CoalgebraError(ValueError):
    """Malformed coalgebra or a query mixing incompatible coalgebras."""


@dataclass(frozen=True, eq=False)
class Coalgebra:
    """states -> P_f(states): each state has a label and one successor per position."""

    signature: PolySignature
    states: FinSet
    step: Mapping[Hashable, PolyElement]
    name: str = ""

    def label(self, x: Hashable) -> Hashable:
        return self.step[x][0]

    def successors(self, x: Hashable) -> tuple[tuple[Hashable, Hashable], ...]:
        return self.step[x][1]

    def to_json(self) -> dict:
        return {
            "states": [render(x) for x in self.states],
            "step": {
                render(x): {
                    "label": render(self.label(x)),
                    "children": {render(b): render(y) for b, y in self.successors(x)},
                }
                for x in self.states
            },
        }


def build_coalgebra(
    sig: PolySignature,
    states: Iterable[Hashable],
    step: Mapping[Hashable, tuple[Hashable, Mapping[Hashable, Hashable]]],
    *,
    name: str = "",
) -> Coalgebra:
    """Validate a coalgebra given as x -> (a, {b: x'})."""
    states = states if isinstance(states, FinSet) else FinSet(tuple(states))
    table: dict[Hashable, PolyElement] = {}
    for x in states:
        if x not in step:
            raise CoalgebraError(f"Coalgebra {name or '?'} has no step for state {render(x)}")
        a, children = step[x]
        children = dict(children)
        fiber = sig.fiber(a)
        if set(children) != set(fiber):
            raise CoalgebraError(
                f"State {render(x)}: successors must be indexed by the fibre of {render(a)}"
            )
        elem = (a, tuple((b, children[b]) for b in fiber))
        try:
            check_poly_element(sig, elem, states)
        except ValueError as exc:
            raise CoalgebraError(f"State {render(x)}: {exc}") from None
        table[x] = elem
    return Coalgebra(signature=sig, states=states, step=table, name=name)


def coalgebra_of_tree(sig: PolySignature, w: WTree) -> Coalgebra:
    """The subtree coalgebra of a well-founded tree; the root state is *w*."""
    nodes = list(subtrees(w))
    step = {node: (node.label, dict(node.children)) for node in nodes}
    return build_coalgebra(sig, FinSet.of(nodes), step, name=f"sub({w.render()})")


def is_coalgebra_morphism(c1: Coalgebra, c2: Coalgebra, h: Mapping[Hashable, Hashable]) -> bool:
    """step2 . h == P_f(h) . step1."""
    for x in c1.states:
        a, succ = c1.step[x]
        if c2.step[h[x]] != (a, tuple((b, h[y]) for b, y in succ)):
            return False
    return True
