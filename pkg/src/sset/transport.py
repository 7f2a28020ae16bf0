"""Filler transport: fillers for one map built from fillers for others.

Two constructions are supported.

``epi-triangle``: E --p--> Y --f--> X with g = f p and p pointwise
surjective. A horn square (top, bottom) against f is filled by lifting a
vertex of the horn to E (gamma), extending it over the horn against p
(delta), filling the resulting square against g (epsilon) and returning
p epsilon.

``eqrel``: an equivalence relation R on Y with projections pi1, pi2 and a
quotient q: Y -> Q. A horn square against q is filled by lifting the bottom
simplex to Y (gamma), lifting (top, gamma i) against pi2 (delta) and
returning pi1 delta.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Literal

from shared.fincat import (
    PshMap,
    compose_maps,
    is_pointwise_surjective,
    maps_equal,
    pullback,
)
from shared.render import sort_key

from .kan import HornSquare, KanReport, horn_squares
from .lifting import Filler, build_lifting_problem, solve_lifting, verify_filler
from .simplicial import DimensionOutOfRange, SimplicialError, level, truncation_of, yoneda_map

log = logging.getLogger(__name__)

TransportMode = Literal["epi-triangle", "eqrel"]
TransportStage = Literal["gamma", "delta", "epsilon", "pair", "verify"]


class TransportFailed(SimplicialError):
    """An intermediate lift of a transport does not exist."""

    def __init__(self, stage: TransportStage, detail: str = ""):
        self.stage = stage
        msg = f"Filler transport failed at stage {stage}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


@dataclass(frozen=True, eq=False)
class EpiTriangle:
    p: PshMap  # E -> Y, pointwise surjective
    f: PshMap  # Y -> X, the map being filled against
    g: PshMap  # E -> X, equal to f p


@dataclass(frozen=True, eq=False)
class EqRelData:
    q: PshMap  # Y -> Q, the map being filled against
    pi1: PshMap  # R -> Y
    pi2: PshMap  # R -> Y


def epi_triangle(p: PshMap, f: PshMap) -> EpiTriangle:
    """Package E --p--> Y --f--> X, checking that p is pointwise surjective."""
    if p.target is not f.source:
        raise SimplicialError("epi triangle needs p to land in the source of f")
    if not is_pointwise_surjective(p):
        raise SimplicialError(f"{p.name or 'p'} is not pointwise surjective")
    return EpiTriangle(p=p, f=f, g=compose_maps(f, p))


def check_epi_triangle(p: PshMap, f: PshMap, g: PshMap) -> EpiTriangle:
    """Like ``epi_triangle`` but with g supplied; checks f p = g."""
    tri = epi_triangle(p, f)
    if g.source is not p.source or g.target is not f.target or not maps_equal(tri.g, g):
        raise SimplicialError("triangle does not commute: f p != g")
    return EpiTriangle(p=p, f=f, g=g)


def kernel_pair(q: PshMap) -> EqRelData:
    """The equivalence relation Y x_Q Y of q with its two projections."""
    _, pi1, pi2 = pullback(q, q)
    return EqRelData(q=q, pi1=pi1, pi2=pi2)


def eqrel_data(q: PshMap, pi1: PshMap, pi2: PshMap) -> EqRelData:
    """A relation R on Y with q pi1 = q pi2, for q: Y -> Q."""
    if pi1.source is not pi2.source:
        raise SimplicialError("pi1 and pi2 must share their source R")
    if pi1.target is not q.source or pi2.target is not q.source:
        raise SimplicialError("pi1 and pi2 must land in the source of q")
    if not maps_equal(compose_maps(q, pi1), compose_maps(q, pi2)):
        raise SimplicialError("q does not identify related simplices")
    return EqRelData(q=q, pi1=pi1, pi2=pi2)


def _transport_epi(tri: EpiTriangle, square: HornSquare, budget: int | None) -> PshMap:
    problem, cell = square.problem, square.cell
    if cell.vertex is None:
        raise TransportFailed("gamma", f"vertex {square.k} is not in the horn")
    E = tri.p.source
    corner = problem.top(level(0), (square.k,))
    over = [e for e in E(level(0)) if tri.p(level(0), e) == corner]
    if not over:
        raise TransportFailed("gamma", "p is not surjective on vertices")
    e0 = min(over, key=sort_key)
    gamma = yoneda_map(E, 0, e0, simplex=cell.vertex.source)

    delta = solve_lifting(
        build_lifting_problem(cell.vertex, tri.p, gamma, problem.top), budget=budget
    )
    if delta is None:
        raise TransportFailed("delta", "vertex inclusion has no lift against p")
    eps = solve_lifting(
        build_lifting_problem(cell.inclusion, tri.g, delta.d, problem.bottom), budget=budget
    )
    if eps is None:
        raise TransportFailed("epsilon", "horn square against g has no filler")
    return compose_maps(tri.p, eps.d)


def _transport_eqrel(data: EqRelData, square: HornSquare, budget: int | None) -> PshMap:
    problem, cell, n = square.problem, square.cell, square.n
    Y, R = data.q.source, data.pi1.source
    over = [y for y in Y(level(n)) if data.q(level(n), y) == square.x]
    if not over:
        raise TransportFailed("gamma", "q is not surjective on the bottom simplex")
    gamma = yoneda_map(Y, n, min(over, key=sort_key), simplex=cell.ambient)

    # (top, gamma i): Lambda -> R, read off through the projections level by level
    pairs = {
        obj: {(data.pi1(obj, r), data.pi2(obj, r)): r for r in R(obj)}
        for obj in R.category.objects
    }
    comps: dict[str, dict] = {}
    for obj in cell.cell.category.objects:
        comps[obj] = {}
        for a in cell.cell(obj):
            key = (problem.top(obj, a), gamma(obj, cell.inclusion(obj, a)))
            if key not in pairs[obj]:
                raise TransportFailed("pair", f"top and gamma are unrelated at {obj}")
            comps[obj][a] = pairs[obj][key]
    paired = PshMap(cell.cell, R, comps, name="(top, gamma i)")

    delta = solve_lifting(
        build_lifting_problem(cell.inclusion, data.pi2, paired, gamma), budget=budget
    )
    if delta is None:
        raise TransportFailed("delta", "horn square against pi2 has no filler")
    return compose_maps(data.pi1, delta.d)


def filler_transport(
    mode: TransportMode,
    data: EpiTriangle | EqRelData,
    square: HornSquare,
    *,
    budget: int | None = None,
) -> Filler:
    """Fill a horn square against ``data.f`` (epi-triangle) or ``data.q`` (eqrel)."""
    if mode == "epi-triangle":
        if not isinstance(data, EpiTriangle):
            raise TypeError("epi-triangle transport needs an EpiTriangle")
        d = _transport_epi(data, square, budget)
    elif mode == "eqrel":
        if not isinstance(data, EqRelData):
            raise TypeError("eqrel transport needs EqRelData")
        d = _transport_eqrel(data, square, budget)
    else:
        raise ValueError(f"Unknown transport mode: {mode!r}")
    if not verify_filler(square.problem, d):
        raise TransportFailed("verify", "transported map does not fill the square")
    return Filler(d=d)


def transport_kan_check(
    mode: TransportMode,
    data: EpiTriangle | EqRelData,
    dim: int,
    *,
    budget: int | None = None,
) -> KanReport:
    """Fill every horn square up to *dim* by transport; ``TransportFailed`` propagates."""
    target = data.f if isinstance(data, EpiTriangle) else data.q
    N = truncation_of(target.category)
    if dim > N - 1:
        raise DimensionOutOfRange("dim", dim, N - 1)
    report = KanReport(dim=dim, truncation=N)
    for n in range(1, dim + 1):
        for k in range(n + 1):
            count = 0
            for square in horn_squares(target, n, k, budget=budget):
                filler_transport(mode, data, square, budget=budget)
                count += 1
            report.per_horn[(n, k)] = count
            report.squares += count
    log.info("transport (%s) filled %d horn squares", mode, report.squares)
    return report
