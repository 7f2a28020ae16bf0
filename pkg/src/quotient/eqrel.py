"""Pseudo-equivalence relations on presheaves and their quotients.

A pseudo-equivalence relation is a span s, t: R -> Y together with maps

    rho: Y -> R          s rho = t rho = id
    sigma: R -> R        s sigma = t, t sigma = s
    tau: P -> R          s tau = s p12, t tau = t p23

where P is the pullback of t against s (composable pairs (r1, r2) with
t(r1) = s(r2)). R -> Y x Y need not be monic; its image is an honest
equivalence relation and the quotient Y/R is taken by that image.
"""

from __future__ import annotations

import logging
from collections.abc import Hashable, Mapping
from dataclasses import dataclass

from shared.fincat import (
    FinSet,
    Presheaf,
    PshMap,
    build_psh_map,
    first_natural_map,
    image_factorization,
    pairing,
    presheaf_from_action,
    product,
    pullback,
)
from shared.render import render, sort_key

log = logging.getLogger(__name__)


class QuotientError(ValueError):
    """Base class for relation and quotient failures."""


class ConditionFailed(QuotientError):
    """Pseudo-equivalence condition 1 (reflexive), 2 (symmetric) or 3 (transitive) fails."""

    def __init__(self, condition: int, obj: str | None = None, element: Hashable = None,
                 detail: str = ""):
        self.condition = condition
        self.obj = obj
        self.element = element
        where = f" at {obj} on {render(element)}" if obj is not None else ""
        msg = f"Condition ({condition}) fails{where}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ImageNotEquivalence(QuotientError):
    def __init__(self, obj: str, detail: str):
        self.obj = obj
        super().__init__(f"Image of the relation is not an equivalence at {obj}: {detail}")


@dataclass(frozen=True, eq=False)
class PseudoEqRel:
    Y: Presheaf
    R: Presheaf
    s: PshMap
    t: PshMap
    rho: PshMap
    sigma: PshMap
    tau: PshMap
    P: Presheaf
    p12: PshMap
    p23: PshMap


def composable_pairs(s: PshMap, t: PshMap) -> tuple[Presheaf, PshMap, PshMap]:
    """P = R x_Y R along (t, s) with its two projections p12, p23."""
    return pullback(t, s)


def _as_map(source: Presheaf, target: Presheaf, value: PshMap | Mapping, name: str) -> PshMap:
    comps = value.components if isinstance(value, PshMap) else value
    return build_psh_map(source, target, comps, name=name)


def check_pseudo_eqrel(
    s: PshMap,
    t: PshMap,
    rho: PshMap | Mapping,
    sigma: PshMap | Mapping,
    tau: PshMap | Mapping,
) -> PseudoEqRel:
    """Validate the three conditions exhaustively.

    Witnesses may be given as ``PshMap``s or as component dicts; ``tau`` is
    read on the pairs ``(r1, r2)`` of ``composable_pairs(s, t)``.
    """
    R, Y = s.source, s.target
    if t.source is not R or t.target is not Y:
        raise QuotientError("s and t must be maps R -> Y between the same presheaves")
    cat = R.category
    P, p12, p23 = composable_pairs(s, t)

    rho = _as_map(Y, R, rho, "rho")
    for obj in cat.objects:
        for y in Y(obj):
            r = rho(obj, y)
            if s(obj, r) != y or t(obj, r) != y:
                raise ConditionFailed(1, obj, y, f"rho gives {render(r)}")
    sigma = _as_map(R, R, sigma, "sigma")
    for obj in cat.objects:
        for r in R(obj):
            r2 = sigma(obj, r)
            if s(obj, r2) != t(obj, r) or t(obj, r2) != s(obj, r):
                raise ConditionFailed(2, obj, r, f"sigma gives {render(r2)}")
    tau = _as_map(P, R, tau, "tau")
    for obj in cat.objects:
        for pair in P(obj):
            r3 = tau(obj, pair)
            if s(obj, r3) != s(obj, p12(obj, pair)) or t(obj, r3) != t(obj, p23(obj, pair)):
                raise ConditionFailed(3, obj, pair, f"tau gives {render(r3)}")
    return PseudoEqRel(Y=Y, R=R, s=s, t=t, rho=rho, sigma=sigma, tau=tau, P=P, p12=p12, p23=p23)


def witnesses_by_search(s: PshMap, t: PshMap, *, budget: int | None = None) -> PseudoEqRel:
    """Find rho, sigma and tau by natural-map search and validate them.

    Raises ``ConditionFailed`` naming the first condition with no witness.
    """
    R, Y = s.source, s.target
    P, p12, p23 = composable_pairs(s, t)
    rho = first_natural_map(
        Y, R, allowed=lambda o, y, r: s(o, r) == y and t(o, r) == y, budget=budget
    )
    if rho is None:
        raise ConditionFailed(1, detail="no natural reflexivity witness")
    sigma = first_natural_map(
        R, R, allowed=lambda o, r, r2: s(o, r2) == t(o, r) and t(o, r2) == s(o, r),
        budget=budget,
    )
    if sigma is None:
        raise ConditionFailed(2, detail="no natural symmetry witness")
    tau = first_natural_map(
        P, R,
        allowed=lambda o, pr, r: s(o, r) == s(o, p12(o, pr)) and t(o, r) == t(o, p23(o, pr)),
        budget=budget,
    )
    if tau is None:
        raise ConditionFailed(3, detail="no natural transitivity witness")
    return check_pseudo_eqrel(s, t, rho, sigma, tau)


# ---------------------------------------------------------------------------
# Quotients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EqClassMap:
    """A partition of a finite set named by least representatives."""

    carrier: FinSet
    class_of: Mapping[Hashable, Hashable]

    @property
    def representatives(self) -> tuple:
        return self.carrier.elements

    def classes(self) -> list[list[Hashable]]:
        grouped: dict[Hashable, list] = {rep: [] for rep in self.carrier}
        for x in sorted(self.class_of, key=sort_key):
            grouped[self.class_of[x]].append(x)
        return [grouped[rep] for rep in self.carrier]

    def to_json(self) -> dict:
        return {
            "classes": [[render(x) for x in cls] for cls in self.classes()],
            "representatives": [render(r) for r in self.carrier],
        }


def partition_from_pairs(elements: FinSet, related: set[tuple]) -> EqClassMap:
    """Classes of an equivalence relation given as a set of pairs.

    Each class is named by its least member in canonical order.
    """
    ordered = sorted(elements, key=sort_key)
    class_of: dict[Hashable, Hashable] = {}
    for x in ordered:
        if x in class_of:
            continue
        for y in ordered:
            if (x, y) in related:
                class_of[y] = x
    return EqClassMap(carrier=FinSet.of(set(class_of.values())), class_of=class_of)


def _check_equivalence(obj: str, elements: FinSet, related: set[tuple]) -> None:
    for x in elements:
        if (x, x) not in related:
            raise ImageNotEquivalence(obj, f"{render(x)} is not related to itself")
    succ: dict[Hashable, set] = {}
    for x, y in related:
        if (y, x) not in related:
            raise ImageNotEquivalence(obj, f"({render(x)}, {render(y)}) has no mirror")
        succ.setdefault(x, set()).add(y)
    for x, ys in succ.items():
        for y in ys:
            extra = succ[y] - ys
            if extra:
                z = min(extra, key=sort_key)
                raise ImageNotEquivalence(
                    obj, f"({render(x)}, {render(y)}), ({render(y)}, {render(z)}) do not compose"
                )


def quotient_by_pseudo_eqrel(rel: PseudoEqRel) -> tuple[dict[str, EqClassMap], PshMap]:
    """Y/R by the image of (s, t), with the quotient map q: Y -> Y/R.

    Restrictions descend to the quotient; this is re-checked on every class.
    """
    Y = rel.Y
    cat = Y.category
    YY, _, _ = product(Y, Y)
    st = pairing(rel.s, rel.t, YY)
    _, mono = image_factorization(st)
    image = mono.source
    classes: dict[str, EqClassMap] = {}
    for obj in cat.objects:
        related = set(image(obj))
        _check_equivalence(obj, Y(obj), related)
        classes[obj] = partition_from_pairs(Y(obj), related)

    def act(rep, alpha):
        src, dst = cat.ends[alpha]
        image_class = classes[src].class_of[Y.act(rep, alpha)]
        for x in Y(dst):
            if classes[dst].class_of[x] != rep:
                continue
            if classes[src].class_of[Y.act(x, alpha)] != image_class:
                raise QuotientError(
                    f"Restriction along {alpha} does not descend: {render(x)} ~ {render(rep)}"
                )
        return image_class

    at = {obj: classes[obj].carrier for obj in cat.objects}
    Q = presheaf_from_action(cat, at, act, name=f"{Y.name or 'Y'}/R")
    q = build_psh_map(Y, Q, {obj: dict(classes[obj].class_of) for obj in cat.objects}, name="q")
    log.debug("quotient sizes %s -> %s", Y.sizes(), Q.sizes())
    return classes, q


def mediating_map(rel: PseudoEqRel, q: PshMap, h: PshMap) -> PshMap | None:
    """The unique k with k q = h, or None when h does not coequalize s and t."""
    cat = rel.Y.category
    for obj in cat.objects:
        for r in rel.R(obj):
            if h(obj, rel.s(obj, r)) != h(obj, rel.t(obj, r)):
                return None
    comps: dict[str, dict] = {obj: {} for obj in cat.objects}
    for obj in cat.objects:
        for y in rel.Y(obj):
            rep = q(obj, y)
            if comps[obj].setdefault(rep, h(obj, y)) != h(obj, y):
                return None
    return build_psh_map(q.target, h.target, comps, name="k")
