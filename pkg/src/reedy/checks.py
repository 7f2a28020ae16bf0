"""Reedy fibration and cofibration conditions, checked one object at a time.

For f: Y -> X the fibration condition at r asks that

    Y_r -> X_r x_{M_r(X)} M_r(Y)

be a fibration, and for f: A -> B the cofibration condition asks that

    A_r u_{L_r(A)} L_r(B) -> B_r

be a cofibration. In the finite-sets ambient these mean surjective and
injective. In the truncated-ssets ambient f is a map of diagrams of
simplicial sets (a presheaf map over R x Delta<=N): cofibrations are the
levelwise monos and fibrations are decided by ``kan_check_upto``. For
generalised structures a cofibration also needs Aut(r) to act freely on
the part of B_r outside the image.
"""

from __future__ import annotations

import functools
import logging
from collections.abc import Hashable, Mapping
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Literal

from shared.budget import check_size
from shared.fincat import (
    Cocone,
    DiagramMap,
    FinSet,
    Presheaf,
    PshMap,
    build_diagram,
    finite_colimit,
    span_category,
)
from shared.render import render, sort_key, to_jsonable
from sset import KanReport, delta, dim_of, kan_check_upto, level

from .gset import fixed_point, functor_gset
from .latching import LatchingObject, latching_leg, matching_latching
from .ssets import level_map, level_presheaf, slice_presheaf, truncation_over
from .structure import ReedyError, ReedyStructure

log = logging.getLogger(__name__)

Ambient = Literal["finite-sets", "truncated-ssets"]
CheckSide = Literal["fibration", "cofibration"]
FunctorMap = PshMap | DiagramMap


@dataclass
class Verdict:
    subject: str
    ok: bool
    detail: str = ""
    witness: Hashable | None = None
    kan: KanReport | None = None

    def to_json(self) -> dict:
        data = {
            "subject": self.subject,
            "ok": self.ok,
            "detail": self.detail,
            "witness": None if self.witness is None else to_jsonable(self.witness),
        }
        if self.kan is not None:
            data["kan"] = self.kan.to_json()
        return data


@dataclass
class ReedyCheckReport:
    side: CheckSide
    ambient: Ambient
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if not v.ok]

    def summary(self) -> str:
        verdict = f"Reedy {self.side}" if self.ok else f"not a Reedy {self.side}"
        text = f"{verdict} ({self.ambient}, {len(self.verdicts)} objects)"
        bad = self.failures()
        if bad:
            text += f"; fails at {bad[0].subject}: {bad[0].detail}"
        return text

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "ambient": self.ambient,
            "ok": self.ok,
            "objects": [v.to_json() for v in self.verdicts],
        }


@dataclass(frozen=True, eq=False)
class RelativeComparison:
    """One of the two displayed comparison maps at ``obj``.

    ``latching`` is M_r(Y) for the fibration map and L_r(B) for the
    cofibration map; ``pushout`` is the cocone of A_r u L_r(B).
    """

    obj: str
    source: FinSet
    target: FinSet
    fn: Mapping
    latching: LatchingObject
    pushout: Cocone | None = None


def collision(fn: Mapping) -> tuple[Hashable, Hashable] | None:
    """Two keys with the same value, the first such pair in key order."""
    seen: dict[Hashable, Hashable] = {}
    for x in sorted(fn, key=sort_key):
        if fn[x] in seen:
            return seen[fn[x]], x
        seen[fn[x]] = x
    return None


def matching_map(f: FunctorMap, MY: LatchingObject) -> dict:
    """M_r(f): M_r(Y) -> M_r(X), coordinate by coordinate."""
    order = MY.cone.shape.objects
    return {
        m: tuple(f(MY.at[u], y) for u, y in zip(order, m, strict=True)) for m in MY.carrier
    }


def latching_map(f: FunctorMap, LA: LatchingObject, LB: LatchingObject) -> dict:
    """L_r(f): L_r(A) -> L_r(B) on class representatives."""
    return {
        rep: latching_leg(LB, rep[0], f(LA.at[rep[0]], rep[1])) for rep in LA.carrier
    }


def fibration_comparison(
    r: ReedyStructure, f: FunctorMap, obj: str, *, budget: int | None = None
) -> RelativeComparison:
    """Y_r -> X_r x_{M_r(X)} M_r(Y); target elements are pairs (x, m)."""
    Y, X = f.source, f.target
    MY = matching_latching(r, Y, obj, "matching", budget=budget)
    MX = matching_latching(r, X, obj, "matching", budget=budget)
    Mf = matching_map(f, MY)
    check_size(len(X(obj)) * len(MY.carrier), budget, f"relative matching object at {obj}")
    target = FinSet.of(
        (x, m) for x in X(obj) for m in MY.carrier if MX.comparison[x] == Mf[m]
    )
    fn = {y: (f(obj, y), MY.comparison[y]) for y in Y(obj)}
    return RelativeComparison(obj, FinSet(Y(obj).elements), target, fn, MY)


def cofibration_comparison(
    r: ReedyStructure, f: FunctorMap, obj: str, *, budget: int | None = None
) -> RelativeComparison:
    """A_r u_{L_r(A)} L_r(B) -> B_r, the pushout computed as a colimit over a span."""
    A, B = f.source, f.target
    LA = matching_latching(r, A, obj, "latching", budget=budget)
    LB = matching_latching(r, B, obj, "latching", budget=budget)
    Lf = latching_map(f, LA, LB)
    span = build_diagram(
        span_category(),
        {"A": LA.carrier, "L": A(obj), "R": LB.carrier},
        {"l": LA.comparison, "m": Lf},
    )
    push = finite_colimit(span)

    def out(rep):
        node, x = rep
        if node == "L":
            return f(obj, x)
        if node == "R":
            return LB.comparison[x]
        return LB.comparison[Lf[x]]

    fn = {rep: out(rep) for rep in push.carrier}
    return RelativeComparison(obj, push.carrier, FinSet(B(obj).elements), fn, LB, pushout=push)


def _cofibration_verdict(
    r: ReedyStructure, f: FunctorMap, obj: str, where: str, budget: int | None
) -> Verdict:
    comp = cofibration_comparison(r, f, obj, budget=budget)
    clash = collision(comp.fn)
    if clash is not None:
        return Verdict(
            obj, False,
            f"comparison into B_{obj} is not injective{where}: "
            f"{render(clash[0])} and {render(clash[1])} meet",
            witness=clash,
        )
    if r.generalised and len(r.automorphisms(obj)) > 1:
        image = set(comp.fn.values())
        fixed = fixed_point(functor_gset(f.target, obj), [y for y in comp.target if y not in image])
        if fixed is not None:
            return Verdict(
                obj, False,
                f"Aut({obj}) does not act freely outside the image{where}: "
                f"{render(fixed[1])} fixes {render(fixed[0])}",
                witness=fixed,
            )
    return Verdict(obj, True, f"comparison into B_{obj} is injective{where}")


def _finite_verdict(
    r: ReedyStructure, f: FunctorMap, side: CheckSide, obj: str, budget: int | None
) -> Verdict:
    if side == "cofibration":
        return _cofibration_verdict(r, f, obj, "", budget)
    comp = fibration_comparison(r, f, obj, budget=budget)
    hit = set(comp.fn.values())
    missing = [t for t in comp.target if t not in hit]
    if missing:
        return Verdict(
            obj, False,
            f"{len(missing)} of {len(comp.target)} elements of X_{obj} x M_{obj}(Y) are not hit",
            witness=missing[0],
        )
    return Verdict(obj, True, f"comparison onto X_{obj} x M_{obj}(Y) is surjective")


def _sset_verdict(
    r: ReedyStructure, f: PshMap, side: CheckSide, obj: str, dim: int, budget: int | None
) -> Verdict:
    N = truncation_over(r, f.category)
    levels = []
    for n in range(N + 1):
        Yn = level_presheaf(f.source, r, n)
        Xn = level_presheaf(f.target, r, n)
        levels.append(level_map(f, Yn, Xn, n))
    if side == "cofibration":
        for n, fn in enumerate(levels):
            verdict = _cofibration_verdict(r, fn, obj, f" at level [{n}]", budget)
            if not verdict.ok:
                return verdict
        return Verdict(obj, True, f"comparison into B_{obj} is a levelwise mono")

    comps = [fibration_comparison(r, fn, obj, budget=budget) for fn in levels]
    comparison = _assemble(r, f, obj, comps)
    report = kan_check_upto(comparison, dim, budget=budget)
    return Verdict(obj, report.fibration, report.summary(), kan=report)


def _assemble(
    r: ReedyStructure, f: PshMap, obj: str, comps: list[RelativeComparison]
) -> PshMap:
    """The levelwise fibration comparisons as one simplicial map."""
    Y, X = f.source, f.target
    N = len(comps) - 1
    base = r.base
    MY = comps[0].latching
    order = MY.cone.shape.objects

    def act(elem, alpha: str):
        x, m = elem
        return (
            X.act(x, f"{base.identity(obj)}|{alpha}"),
            tuple(
                Y.act(y, f"{base.identity(MY.at[u])}|{alpha}")
                for u, y in zip(order, m, strict=True)
            ),
        )

    cat = delta(N)
    target = Presheaf(
        category=cat,
        at={level(n): comps[n].target for n in range(N + 1)},
        restrict={
            a: {elem: act(elem, a) for elem in comps[dim_of(cat.dst(a))].target}
            for a in cat.morphisms
        },
        name=f"X_{obj} x M_{obj}(Y)",
    )
    source = slice_presheaf(Y, r, obj)
    return PshMap(
        source, target, {level(n): dict(comps[n].fn) for n in range(N + 1)},
        name=f"comparison at {obj}",
    )


def reedy_fib_cofib_check(
    r: ReedyStructure,
    f: FunctorMap,
    side: CheckSide,
    ambient: Ambient = "finite-sets",
    *,
    dim: int | None = None,
    max_workers: int = 1,
    budget: int | None = None,
) -> ReedyCheckReport:
    """Check the Reedy (co)fibration condition at every object of the base.

    Objects are checked independently (in a thread pool when
    ``max_workers > 1``) and reported in the base's object order. ``dim``
    bounds the Kan check in the truncated-ssets ambient (default N - 1).
    """
    if side not in ("fibration", "cofibration"):
        raise ReedyError(f"Unknown side {side!r}; expected fibration or cofibration")
    if ambient == "finite-sets":
        check = functools.partial(_finite_verdict, r, f, side, budget=budget)
    elif ambient == "truncated-ssets":
        if not isinstance(f, PshMap):
            raise ReedyError("the truncated-ssets ambient needs a map of presheaves on R x Delta")
        N = truncation_over(r, f.category)
        dim = N - 1 if dim is None else dim
        check = functools.partial(_sset_verdict, r, f, side, dim=dim, budget=budget)
    else:
        raise ReedyError(f"Unknown ambient {ambient!r}; expected finite-sets or truncated-ssets")

    objects = list(r.base.objects)
    results: dict[str, Verdict] = {}
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            futures = {pool.submit(check, obj=obj): obj for obj in objects}
            for future in as_completed(futures):
                results[futures[future]] = future.result()
    else:
        for obj in objects:
            results[obj] = check(obj=obj)

    report = ReedyCheckReport(side, ambient, [results[obj] for obj in objects])
    log.info("Reedy %s check on %s: %s", side, r.name or "base", report.summary())
    return report


# ---------------------------------------------------------------------------
# Latching monos
# ---------------------------------------------------------------------------


@dataclass
class LatchingMonoReport:
    obj: str
    verdicts: list[Verdict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    def summary(self) -> str:
        marks = ", ".join(f"({v.subject}) {'yes' if v.ok else 'no'}" for v in self.verdicts)
        return f"latching monos at {self.obj}: {marks}"

    def to_json(self) -> dict:
        return {"object": self.obj, "ok": self.ok, "checks": [v.to_json() for v in self.verdicts]}


def _latching_injective(
    r: ReedyStructure, X: Presheaf, obj: str, budget: int | None
) -> Verdict | None:
    lat = matching_latching(r, X, obj, "latching", budget=budget)
    clash = collision(lat.comparison)
    if clash is None:
        return None
    return Verdict(
        "a", False,
        f"L_{obj}({X.name or 'X'}) -> {X.name or 'X'}_{obj} identifies "
        f"{render(clash[0])} and {render(clash[1])}",
        witness=clash,
    )


def latching_mono_check(
    r: ReedyStructure, m: PshMap, obj: str, *, budget: int | None = None
) -> LatchingMonoReport:
    """For a mono m: X -> Y of presheaves on the base, verify at obj that

    (a) L(X) -> X_obj and L(Y) -> Y_obj are injective,
    (b) every naturality square of m over a map obj -> s in R- is a pullback,
    (c) L(Y) u_{L(X)} X_obj -> Y_obj is injective.

    Failures carry a witness instead of raising.
    """
    if not isinstance(m, PshMap):
        raise ReedyError("latching_mono_check needs a map of presheaves")
    X, Y = m.source, m.target
    cat = r.base
    report = LatchingMonoReport(obj)

    bad = _latching_injective(r, X, obj, budget) or _latching_injective(r, Y, obj, budget)
    report.verdicts.append(bad or Verdict("a", True, "latching comparisons are injective"))

    square = Verdict("b", True, "naturality squares over R- are pullbacks")
    for u in r.minus_out_of(obj):
        s = cat.dst(u)
        corner = {(x, y) for x in X(obj) for y in Y(s) if m(obj, x) == Y.act(y, u)}
        fn = {x: (X.act(x, u), m(s, x)) for x in X(s)}
        clash = collision(fn)
        missing = corner - set(fn.values())
        if clash is not None or missing:
            witness = clash if clash is not None else min(missing, key=sort_key)
            square = Verdict(
                "b", False, f"square over {u} is not a pullback at {render(witness)}",
                witness=witness,
            )
            break
    report.verdicts.append(square)

    comp = cofibration_comparison(r, m, obj, budget=budget)
    clash = collision(comp.fn)
    if clash is None:
        report.verdicts.append(Verdict("c", True, f"L(Y) u_L(X) X_{obj} -> Y_{obj} is injective"))
    else:
        report.verdicts.append(Verdict(
            "c", False, f"{render(clash[0])} and {render(clash[1])} meet in Y_{obj}",
            witness=clash,
        ))
    log.debug("%s", report.summary())
    return report
