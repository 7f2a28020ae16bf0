"""Finite groups, right G-sets and the free-action cofibration check.

A map of G-sets X -> Y is a cofibration when it is injective, equivariant
and G acts freely on the elements of Y outside its image.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass

from shared.fincat import FinCategory, FinSet, Presheaf
from shared.render import render, sort_key, to_jsonable

from .latching import Functor, category_of
from .structure import ReedyError

log = logging.getLogger(__name__)


class GroupError(ReedyError):
    """The data do not form a group or a group action."""


class NotEquivariant(ReedyError):
    def __init__(self, x: Hashable, g: Hashable):
        self.element = x
        self.group_element = g
        super().__init__(f"Map is not equivariant at {render(x)} acted on by {render(g)}")


class NotMono(ReedyError):
    def __init__(self, first: Hashable, second: Hashable):
        self.witnesses = (first, second)
        super().__init__(f"Map is not injective: {render(first)} and {render(second)} collide")


@dataclass(frozen=True, eq=False)
class Group:
    elements: tuple
    table: Mapping[tuple[Hashable, Hashable], Hashable]
    unit: Hashable
    name: str = ""

    def mul(self, g: Hashable, h: Hashable) -> Hashable:
        return self.table[(g, h)]

    def inverse(self, g: Hashable) -> Hashable:
        return next(h for h in self.elements if self.table[(g, h)] == self.unit)

    def __len__(self) -> int:
        return len(self.elements)


def build_group(
    elements: Iterable[Hashable],
    mul: Callable[[Hashable, Hashable], Hashable],
    *,
    name: str = "",
) -> Group:
    """Validate closure, unit, inverses and associativity."""
    elems = tuple(elements)
    members = set(elems)
    if not elems:
        raise GroupError("A group needs at least one element")
    table = {}
    for g, h in itertools.product(elems, repeat=2):
        gh = mul(g, h)
        if gh not in members:
            raise GroupError(f"{render(g)} * {render(h)} = {render(gh)} is not in {name or 'G'}")
        table[(g, h)] = gh
    units = [e for e in elems if all(table[(e, g)] == g == table[(g, e)] for g in elems)]
    if not units:
        raise GroupError(f"{name or 'G'} has no unit")
    unit = units[0]
    for g in elems:
        if not any(table[(g, h)] == unit == table[(h, g)] for h in elems):
            raise GroupError(f"{render(g)} has no inverse in {name or 'G'}")
    for g, h, k in itertools.product(elems, repeat=3):
        if table[(table[(g, h)], k)] != table[(g, table[(h, k)])]:
            raise GroupError(f"Multiplication is not associative at {render((g, h, k))}")
    return Group(elements=elems, table=table, unit=unit, name=name)


def cyclic_group(n: int) -> Group:
    if n < 1:
        raise GroupError(f"Cyclic group order must be positive, got {n}")
    return build_group(range(n), lambda g, h: (g + h) % n, name=f"Z/{n}")


def automorphism_group(cat: FinCategory, obj: str) -> Group:
    """Aut(obj) with g * h = g . h."""
    autos = [m for m in cat.hom(obj, obj) if cat.is_iso(m)]
    return build_group(autos, cat.compose, name=f"Aut({obj})")


@dataclass(frozen=True, eq=False)
class GSet:
    """A right action x . g of a finite group on a finite set."""

    group: Group
    carrier: FinSet
    action: Mapping[tuple[Hashable, Hashable], Hashable]
    name: str = ""

    def act(self, x: Hashable, g: Hashable) -> Hashable:
        return self.action[(x, g)]

    def stabilizer(self, x: Hashable) -> list:
        return [g for g in self.group.elements if self.action[(x, g)] == x]


def build_gset(
    group: Group,
    carrier: Iterable[Hashable],
    act: Callable[[Hashable, Hashable], Hashable],
    *,
    name: str = "",
) -> GSet:
    """Validate x . e = x and (x . g) . h = x . (g * h)."""
    points = carrier if isinstance(carrier, FinSet) else FinSet.of(carrier)
    action = {}
    for x in points:
        for g in group.elements:
            y = act(x, g)
            if y not in points:
                raise GroupError(f"{render(x)} . {render(g)} = {render(y)} leaves the carrier")
            action[(x, g)] = y
    for x in points:
        if action[(x, group.unit)] != x:
            raise GroupError(f"The unit moves {render(x)}")
        for g, h in itertools.product(group.elements, repeat=2):
            if action[(action[(x, g)], h)] != action[(x, group.mul(g, h))]:
                raise GroupError(
                    f"Action law fails at {render(x)} for {render(g)} and {render(h)}"
                )
    return GSet(group=group, carrier=points, action=action, name=name)


def regular_gset(group: Group) -> GSet:
    """G acting on itself by right translation."""
    return build_gset(group, FinSet(group.elements), group.mul, name=f"{group.name} (regular)")


def trivial_gset(group: Group, points: Iterable[Hashable]) -> GSet:
    return build_gset(group, points, lambda x, g: x, name="trivial")


def functor_gset(X: Functor, obj: str, group: Group | None = None) -> GSet:
    """Aut(obj) acting on X(obj) on the right.

    For a presheaf x . g is the restriction along g; for a covariant functor
    it is X(g^-1)(x). Pass *group* to share one Aut(obj) between several G-sets.
    """
    cat = category_of(X)
    group = group or automorphism_group(cat, obj)
    if isinstance(X, Presheaf):
        act = X.act
    else:
        def act(x, g):
            return X.move(cat.inverse(g), x)
    return build_gset(group, X(obj), act, name=f"{getattr(X, 'name', '') or 'X'}({obj})")


@dataclass
class FreenessVerdict:
    free: bool
    outside: int
    witness: tuple[Hashable, Hashable] | None = None  # (y, g) with y . g = y, g != e

    def summary(self) -> str:
        if self.free:
            return f"cofibration: free action on the {self.outside} elements outside the image"
        y, g = self.witness
        return f"not a cofibration: {render(g)} fixes {render(y)} outside the image"

    def to_json(self) -> dict:
        return {
            "cofibration": self.free,
            "outside": self.outside,
            "witness": None if self.witness is None else to_jsonable(self.witness),
        }


def fixed_point(Y: GSet, elements: Iterable[Hashable]) -> tuple[Hashable, Hashable] | None:
    """The first (y, g) with g non-trivial and y . g = y."""
    for y in sorted(elements, key=sort_key):
        for g in Y.group.elements:
            if g != Y.group.unit and Y.act(y, g) == y:
                return y, g
    return None


def gset_free_cofibration_check(X: GSet, Y: GSet, m: Mapping) -> FreenessVerdict:
    """Decide whether m: X -> Y is a cofibration of G-sets.

    Raises ``NotMono`` or ``NotEquivariant`` when m is not an injective
    map of G-sets.
    """
    if X.group is not Y.group:
        raise GroupError("X and Y must carry actions of the same group")
    seen: dict[Hashable, Hashable] = {}
    for x in X.carrier:
        if x not in m or m[x] not in Y.carrier:
            raise ReedyError(f"m does not send {render(x)} into Y")
        if m[x] in seen:
            raise NotMono(seen[m[x]], x)
        seen[m[x]] = x
    for x in X.carrier:
        for g in X.group.elements:
            if m[X.act(x, g)] != Y.act(m[x], g):
                raise NotEquivariant(x, g)
    outside = [y for y in Y.carrier if y not in seen]
    witness = fixed_point(Y, outside)
    verdict = FreenessVerdict(free=witness is None, outside=len(outside), witness=witness)
    log.debug("free-action check over %s: %s", Y.group.name or "G", verdict.summary())
    return verdict
