"""Lifting problems and their diagonal fillers.

A lifting problem is a commuting square

    A --top--> Y
    |          |
    i          p
    v          v
    B --bot--> X

and a filler is a natural d: B -> Y with d i = top and p d = bottom.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from shared.fincat import PshMap, natural_maps
from shared.render import render, to_jsonable

from .simplicial import SimplicialError

log = logging.getLogger(__name__)


class SquareNotCommuting(SimplicialError):
    def __init__(self, obj: str, element):
        self.obj = obj
        self.element = element
        super().__init__(f"Lifting square does not commute at {obj} on {render(element)}")


@dataclass(frozen=True, eq=False)
class LiftingProblem:
    i: PshMap
    p: PshMap
    top: PshMap
    bottom: PshMap

    def to_json(self) -> dict:
        """The full square, component by component."""

        def comps(m: PshMap) -> dict:
            return {obj: to_jsonable(dict(m.components[obj])) for obj in m.category.objects}

        return {
            "i": comps(self.i),
            "p": comps(self.p),
            "top": comps(self.top),
            "bottom": comps(self.bottom),
        }


@dataclass(frozen=True, eq=False)
class Filler:
    d: PshMap


def build_lifting_problem(i: PshMap, p: PshMap, top: PshMap, bottom: PshMap) -> LiftingProblem:
    """Check shapes and commutativity of the square p top = bottom i."""
    if top.source is not i.source or bottom.source is not i.target:
        raise SimplicialError("top and bottom must start at the source and target of i")
    if top.target is not p.source or bottom.target is not p.target:
        raise SimplicialError("top and bottom must end at the source and target of p")
    for obj in i.category.objects:
        for a in i.source(obj):
            if p(obj, top(obj, a)) != bottom(obj, i(obj, a)):
                raise SquareNotCommuting(obj, a)
    return LiftingProblem(i=i, p=p, top=top, bottom=bottom)


def verify_filler(problem: LiftingProblem, d: PshMap) -> bool:
    """Both triangles commute."""
    i, p, top, bottom = problem.i, problem.p, problem.top, problem.bottom
    for obj in i.category.objects:
        if any(d(obj, i(obj, a)) != top(obj, a) for a in i.source(obj)):
            return False
        if any(p(obj, d(obj, b)) != bottom(obj, b) for b in i.target(obj)):
            return False
    return True


def solve_lifting(problem: LiftingProblem, *, budget: int | None = None) -> Filler | None:
    """Search for a filler; ``None`` means none exists.

    Values on the image of i are pinned to ``top``; every other simplex of B
    ranges over the simplices of Y above its image under ``bottom``, lowest
    dimension first. Raises ``BudgetExceeded`` when the search runs out.
    """
    i, p, top, bottom = problem.i, problem.p, problem.top, problem.bottom
    B, Y = i.target, p.source
    fixed = {}
    for obj in i.category.objects:
        for a in i.source(obj):
            key = (obj, i(obj, a))
            if fixed.setdefault(key, top(obj, a)) != top(obj, a):
                log.debug("no filler: i identifies simplices that top separates")
                return None
    for comps in natural_maps(
        B, Y,
        fixed=fixed,
        allowed=lambda obj, b, y: p(obj, y) == bottom(obj, b),
        budget=budget,
    ):
        d = PshMap(B, Y, comps, name="d")
        if not verify_filler(problem, d):
            raise SimplicialError("search returned a map that does not fill the square")
        return Filler(d=d)
    return None
