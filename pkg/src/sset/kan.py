"""Bounded Kan-fibration checks for maps of truncated simplicial sets.

``kan_check_upto(p, d)`` enumerates every commuting square from a horn
inclusion Lambda^k[n] -> Delta[n] (1 <= n <= d) into p and looks for a
filler. A square's bottom edge Delta[n] -> X is a simplex x of X, and by
Yoneda a filler is an n-simplex of Y over x restricting to the top edge on
the horn, so fillers are found by scanning Y([n]).
"""

from __future__ import annotations

import logging
from collections.abc import Hashable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field

from shared.budget import SearchCounter
from shared.fincat import Presheaf, PshMap, build_psh_map, chain_colimit, natural_maps
from shared.render import render, sort_key, to_jsonable

from .lifting import Filler, LiftingProblem, verify_filler
from .simplicial import (
    Cell,
    DimensionOutOfRange,
    generate_cell,
    level,
    simplex_morphism,
    truncation_of,
    yoneda_map,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HornSquare:
    n: int
    k: int
    cell: Cell
    x: Hashable  # the bottom simplex
    problem: LiftingProblem


@dataclass
class KanReport:
    """Outcome of a bounded Kan check; only says something up to ``dim``."""

    dim: int
    truncation: int
    fibration: bool = True
    squares: int = 0
    counterexample: HornSquare | None = None
    per_horn: dict[tuple[int, int], int] = field(default_factory=dict)

    def summary(self) -> str:
        verdict = "fibration" if self.fibration else "not a fibration"
        text = f"{verdict} up to dimension {self.dim} ({self.squares} horn squares)"
        if self.counterexample is not None:
            c = self.counterexample
            text += f"; unfillable square at Lambda^{c.k}[{c.n}] over {render(c.x)}"
        return text

    def to_json(self) -> dict:
        data: dict = {
            "fibration_up_to_dim": self.fibration,
            "dim": self.dim,
            "truncation": self.truncation,
            "squares": self.squares,
            "counterexample": None,
        }
        if self.counterexample is not None:
            c = self.counterexample
            data["counterexample"] = {
                "horn": {"n": c.n, "k": c.k},
                "bottom": to_jsonable(c.x),
                "square": c.problem.to_json(),
            }
        return data


def horn_squares(
    p: PshMap, n: int, k: int, *, budget: int | None = None
) -> Iterator[HornSquare]:
    """Every commuting square from Lambda^k[n] -> Delta[n] into p, in canonical order."""
    N = truncation_of(p.category)
    cell = generate_cell("horn", n, k, N=N)
    Y, X = p.source, p.target
    for x in sorted(X(level(n)), key=sort_key):
        bottom = yoneda_map(X, n, x, simplex=cell.ambient)
        for comps in natural_maps(
            cell.cell, Y,
            allowed=lambda obj, a, y, bottom=bottom: p(obj, y) == bottom(obj, a),
            budget=budget,
        ):
            top = PshMap(cell.cell, Y, comps, name="top")
            problem = LiftingProblem(i=cell.inclusion, p=p, top=top, bottom=bottom)
            yield HornSquare(n=n, k=k, cell=cell, x=x, problem=problem)


def yoneda_filler(square: HornSquare, *, budget: int | None = None) -> Filler | None:
    """A filler for a horn square, found among the n-simplices of Y over x."""
    problem = square.problem
    p, top, n = problem.p, problem.top, square.n
    Y = p.source
    horn = square.cell.cell
    counter = SearchCounter(budget, f"filling Lambda^{square.k}[{n}]")
    for y in Y(level(n)):
        counter.tick()
        if p(level(n), y) != square.x:
            continue
        if all(
            Y.act(y, simplex_morphism(a, n)) == top(obj, a)
            for obj in horn.category.objects
            for a in horn(obj)
        ):
            d = yoneda_map(Y, n, y, simplex=square.cell.ambient)
            if not verify_filler(problem, d):
                raise RuntimeError(f"Yoneda filler over {render(square.x)} does not commute")
            return Filler(d=d)
    return None


def _check_horn(p: PshMap, n: int, k: int, budget: int | None) -> tuple[int, HornSquare | None]:
    count = 0
    for square in horn_squares(p, n, k, budget=budget):
        count += 1
        if yoneda_filler(square, budget=budget) is None:
            return count, square
    return count, None


def kan_check_upto(
    p: PshMap, dim: int, *, max_workers: int = 1, budget: int | None = None
) -> KanReport:
    """Check the right lifting property against Lambda^k[n] -> Delta[n], n <= dim.

    Needs dim <= N - 1 for Delta<=N. Horns are checked independently (in a
    thread pool when ``max_workers > 1``); the reported counterexample is
    the first in (n, k) order.
    """
    N = truncation_of(p.category)
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if dim > N - 1:
        raise DimensionOutOfRange("dim", dim, N - 1)
    horns = [(n, k) for n in range(1, dim + 1) for k in range(n + 1)]
    results: dict[tuple[int, int], tuple[int, HornSquare | None]] = {}
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            futures = {pool.submit(_check_horn, p, n, k, budget): (n, k) for n, k in horns}
            for future in as_completed(futures):
                results[futures[future]] = future.result()
    else:
        for n, k in horns:
            results[(n, k)] = _check_horn(p, n, k, budget)

    report = KanReport(dim=dim, truncation=N)
    for nk in horns:
        count, bad = results[nk]
        report.per_horn[nk] = count
        report.squares += count
        if bad is not None and report.counterexample is None:
            report.fibration = False
            report.counterexample = bad
    log.info("Kan check of %s: %s", p.name or "map", report.summary())
    return report


def chain_union_map(inclusions: Sequence[PshMap], over: Sequence[PshMap]) -> PshMap:
    """colim_i X_i -> A for a chain X_0 -> X_1 -> ... with compatible maps X_i -> A."""
    colim, legs = chain_colimit(inclusions)
    A = over[0].target
    comps: dict[str, dict] = {obj: {} for obj in colim.category.objects}
    for leg, to_A in zip(legs, over, strict=True):
        for obj in colim.category.objects:
            for x in leg.source(obj):
                comps[obj][leg(obj, x)] = to_A(obj, x)
    return build_psh_map(colim, A, comps, name="union")


def stage_map(stage: Presheaf, A: Presheaf) -> PshMap:
    """W_{<k} -> A sending a tree over C to its label in A(C)."""
    comps = {obj: {w: w.label[1] for w in stage(obj)} for obj in stage.category.objects}
    return build_psh_map(stage, A, comps, name=f"{stage.name}->{A.name}")
