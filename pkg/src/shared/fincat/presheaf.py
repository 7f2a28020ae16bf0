"""Presheaves (contravariant functors into finite sets) and natural maps."""

from __future__ import annotations

import logging
from collections.abc import Callable, Hashable, Iterator, Mapping
from dataclasses import dataclass

from ..render import render
from .category import CategoryError, FinCategory, UnknownIdentifier
from .finset import FinSet

log = logging.getLogger(__name__)


class FunctorialityViolation(CategoryError):
    def __init__(self, where: str, detail: str):
        self.where = where
        super().__init__(f"Functoriality fails at {where}: {detail}")


class NaturalityViolation(CategoryError):
    def __init__(self, morphism: str, element: Hashable, detail: str = ""):
        self.morphism = morphism
        self.element = element
        msg = f"Naturality square for {morphism} fails at {render(element)}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


@dataclass(frozen=True, eq=False)
class Presheaf:
    """X: C^op -> FinSet.

    ``restrict[alpha]`` maps X(dst alpha) to X(src alpha); ``x . alpha`` is
    written ``act(x, alpha)``.
    """

    category: FinCategory
    at: Mapping[str, FinSet]
    restrict: Mapping[str, Mapping]
    name: str = ""

    def __call__(self, obj: str) -> FinSet:
        try:
            return self.at[obj]
        except KeyError:
            raise UnknownIdentifier("object", obj, self.name or "presheaf") from None

    def act(self, x: Hashable, alpha: str) -> Hashable:
        try:
            return self.restrict[alpha][x]
        except KeyError:
            raise CategoryError(
                f"{render(x)} cannot be restricted along {alpha} in {self.name or 'presheaf'}"
            ) from None

    def elements(self) -> Iterator[tuple[str, Hashable]]:
        for obj in self.category.objects:
            for x in self.at[obj]:
                yield obj, x

    def size(self) -> int:
        return sum(len(s) for s in self.at.values())

    def sizes(self) -> dict[str, int]:
        return {obj: len(self.at[obj]) for obj in self.category.objects}


def build_presheaf(
    category: FinCategory,
    at: Mapping[str, object],
    restrict: Mapping[str, Mapping],
    *,
    name: str = "",
) -> Presheaf:
    """Validate a presheaf given by its sets and restriction tables.

    Restrictions along identities may be omitted.
    """
    sets: dict[str, FinSet] = {}
    for obj in category.objects:
        if obj not in at:
            raise FunctorialityViolation(obj, "no set assigned to this object")
        value = at[obj]
        sets[obj] = value if isinstance(value, FinSet) else FinSet(tuple(value))
    for obj in at:
        if obj not in sets:
            raise UnknownIdentifier("object", obj, name or "presheaf")
    for m in restrict:
        if m not in category.ends:
            raise UnknownIdentifier("morphism", m, name or "presheaf")

    tables: dict[str, dict] = {}
    for m in category.morphisms:
        src, dst = category.ends[m]
        if category.is_identity(m) and m not in restrict:
            tables[m] = {x: x for x in sets[dst]}
            continue
        if m not in restrict:
            raise FunctorialityViolation(m, "restriction missing")
        table = dict(restrict[m])
        for x in sets[dst]:
            if x not in table:
                raise FunctorialityViolation(m, f"no restriction of {render(x)}")
            if table[x] not in sets[src]:
                raise FunctorialityViolation(
                    m, f"{render(x)} restricts to {render(table[x])}, not an element of {src}"
                )
        tables[m] = table

    for obj in category.objects:
        ident = category.identity(obj)
        for x in sets[obj]:
            if tables[ident][x] != x:
                raise FunctorialityViolation(ident, f"identity moves {render(x)}")

    # x.(g.f) == (x.g).f
    for (g, f), gf in category.table.items():
        for x in sets[category.dst(g)]:
            if tables[gf][x] != tables[f][tables[g][x]]:
                raise FunctorialityViolation(
                    f"{g} . {f}", f"restriction of {render(x)} is not functorial"
                )

    log.debug("presheaf %s: sizes %s", name or "<anonymous>", {o: len(s) for o, s in sets.items()})
    return Presheaf(category=category, at=sets, restrict=tables, name=name)


def presheaf_from_action(
    category: FinCategory,
    at: Mapping[str, FinSet],
    act: Callable[[Hashable, str], Hashable],
    *,
    name: str = "",
    validate: bool = True,
) -> Presheaf:
    """Presheaf whose restriction x . alpha is computed by *act*."""
    restrict = {m: {x: act(x, m) for x in at[category.dst(m)]} for m in category.morphisms}
    if validate:
        return build_presheaf(category, at, restrict, name=name)
    return Presheaf(category=category, at=dict(at), restrict=restrict, name=name)


# ---------------------------------------------------------------------------
# Natural maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PshMap:
    """Natural map source -> target, one function per object."""

    source: Presheaf
    target: Presheaf
    components: Mapping[str, Mapping]
    name: str = ""

    def __call__(self, obj: str, x: Hashable) -> Hashable:
        return self.components[obj][x]

    @property
    def category(self) -> FinCategory:
        return self.source.category


def build_psh_map(
    source: Presheaf,
    target: Presheaf,
    components: Mapping[str, Mapping],
    *,
    name: str = "",
) -> PshMap:
    """Validate totality and naturality of a map of presheaves."""
    cat = source.category
    if target.category is not cat:
        raise CategoryError(
            f"Map {name or '<anonymous>'} joins presheaves over different categories"
        )
    comps: dict[str, dict] = {}
    for obj in cat.objects:
        comp = dict(components.get(obj, {}))
        for x in source(obj):
            if x not in comp:
                raise CategoryError(
                    f"Map {name or '<anonymous>'} has no value at {obj} for {render(x)}"
                )
            if comp[x] not in target(obj):
                raise CategoryError(
                    f"Map {name or '<anonymous>'} sends {render(x)} at {obj} outside the target"
                )
        comps[obj] = comp
    for m in cat.morphisms:
        src, dst = cat.ends[m]
        for x in source(dst):
            lhs = comps[src][source.act(x, m)]
            rhs = target.act(comps[dst][x], m)
            if lhs != rhs:
                raise NaturalityViolation(m, x, f"{render(lhs)} != {render(rhs)}")
    return PshMap(source=source, target=target, components=comps, name=name)


def identity_map(X: Presheaf) -> PshMap:
    return PshMap(X, X, {obj: {x: x for x in X(obj)} for obj in X.category.objects})


def compose_maps(g: PshMap, f: PshMap) -> PshMap:
    """g after f."""
    if f.target is not g.source:
        raise CategoryError(
            "Maps are not composable: target of the first is not the source of the second"
        )
    comps = {
        obj: {x: g.components[obj][y] for x, y in f.components[obj].items()}
        for obj in f.category.objects
    }
    return PshMap(f.source, g.target, comps)


def maps_equal(f: PshMap, g: PshMap) -> bool:
    return all(
        f.components[obj][x] == g.components[obj][x]
        for obj in f.category.objects
        for x in f.source(obj)
    )


def is_pointwise_injective(f: PshMap) -> bool:
    return all(len(set(f.components[o].values())) == len(f.source(o)) for o in f.category.objects)


def is_pointwise_surjective(f: PshMap) -> bool:
    return all(set(f.target(o)) <= set(f.components[o].values()) for o in f.category.objects)
