"""Finite categories given by explicit composition tables."""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

log = logging.getLogger(__name__)


class CategoryError(ValueError):
    """Base class for malformed categories, presheaves and maps."""


class UnknownIdentifier(CategoryError):
    def __init__(self, kind: str, ident: str, where: str = ""):
        self.kind = kind
        self.ident = ident
        suffix = f" in {where}" if where else ""
        super().__init__(f"Unknown {kind} {ident!r}{suffix}")


class CompositionUndefined(CategoryError):
    def __init__(self, g: str, f: str, detail: str = "missing from the table"):
        self.g = g
        self.f = f
        super().__init__(f"Composition {g} . {f} {detail}")


class AssociativityViolation(CategoryError):
    def __init__(self, h: str, g: str, f: str):
        self.h, self.g, self.f = h, g, f
        super().__init__(f"({h} . {g}) . {f} differs from {h} . ({g} . {f})")


class UnitViolation(CategoryError):
    def __init__(self, morphism: str, identity: str):
        self.morphism = morphism
        self.identity = identity
        super().__init__(f"Identity {identity} is not a unit for {morphism}")


@dataclass(frozen=True, eq=False)
class FinCategory:
    """A validated finite category.

    ``table[(g, f)]`` is the composite g . f (f first), defined exactly when
    ``dst(f) == src(g)``.
    """

    objects: tuple[str, ...]
    ends: Mapping[str, tuple[str, str]]  # morphism -> (src, dst)
    identities: Mapping[str, str]  # object -> identity morphism
    table: Mapping[tuple[str, str], str]
    name: str = ""
    morphism_order: tuple[str, ...] = field(default=())

    @property
    def morphisms(self) -> tuple[str, ...]:
        return self.morphism_order or tuple(self.ends)

    def src(self, m: str) -> str:
        try:
            return self.ends[m][0]
        except KeyError:
            raise UnknownIdentifier("morphism", m, self.name) from None

    def dst(self, m: str) -> str:
        try:
            return self.ends[m][1]
        except KeyError:
            raise UnknownIdentifier("morphism", m, self.name) from None

    def identity(self, obj: str) -> str:
        try:
            return self.identities[obj]
        except KeyError:
            raise UnknownIdentifier("object", obj, self.name) from None

    def compose(self, g: str, *fs: str) -> str:
        """g . f1 . f2 ... (rightmost applied first)."""
        result = g
        for f in fs:
            try:
                result = self.table[(result, f)]
            except KeyError:
                raise CompositionUndefined(result, f) from None
        return result

    @cached_property
    def identity_set(self) -> frozenset[str]:
        return frozenset(self.identities.values())

    def is_identity(self, m: str) -> bool:
        return m in self.identity_set

    @cached_property
    def _hom(self) -> dict[tuple[str, str], tuple[str, ...]]:
        hom: dict[tuple[str, str], list[str]] = {
            (a, b): [] for a in self.objects for b in self.objects
        }
        for m in self.morphisms:
            hom[self.ends[m]].append(m)
        return {k: tuple(v) for k, v in hom.items()}

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        try:
            return self._hom[(a, b)]
        except KeyError:
            bad = a if a not in self.identities else b
            raise UnknownIdentifier("object", bad, self.name) from None

    @cached_property
    def _into(self) -> dict[str, tuple[str, ...]]:
        return {c: tuple(m for m in self.morphisms if self.ends[m][1] == c) for c in self.objects}

    @cached_property
    def _out(self) -> dict[str, tuple[str, ...]]:
        return {c: tuple(m for m in self.morphisms if self.ends[m][0] == c) for c in self.objects}

    def into(self, obj: str) -> tuple[str, ...]:
        """Morphisms with codomain *obj*."""
        return self._into[obj]

    def out_of(self, obj: str) -> tuple[str, ...]:
        """Morphisms with domain *obj*."""
        return self._out[obj]

    def inverse(self, m: str) -> str | None:
        a, b = self.ends[m]
        for k in self.hom(b, a):
            back, forth = self.table[(k, m)], self.table[(m, k)]
            if back == self.identities[a] and forth == self.identities[b]:
                return k
        return None

    def is_iso(self, m: str) -> bool:
        return self.inverse(m) is not None


# ---------------------------------------------------------------------------
# Construction and validation
# ---------------------------------------------------------------------------


def _check_table(
    objects: Sequence[str],
    ends: Mapping[str, tuple[str, str]],
    identities: Mapping[str, str],
    table: Mapping[tuple[str, str], str],
) -> None:
    for (g, f), gf in table.items():
        for m in (g, f, gf):
            if m not in ends:
                raise UnknownIdentifier("morphism", m, "composition table")
        if ends[f][1] != ends[g][0]:
            raise CompositionUndefined(g, f, "listed but the morphisms are not composable")
        if ends[gf] != (ends[f][0], ends[g][1]):
            raise CompositionUndefined(g, f, f"has wrong endpoints ({gf})")

    for f, (a, b) in ends.items():
        for g, (b2, _) in ends.items():
            if b2 == b and (g, f) not in table:
                raise CompositionUndefined(g, f)

    for obj in objects:
        ident = identities[obj]
        for m in ends:
            if ends[m][0] == obj and table[(m, ident)] != m:
                raise UnitViolation(m, ident)
            if ends[m][1] == obj and table[(ident, m)] != m:
                raise UnitViolation(m, ident)

    out: dict[str, list[str]] = {o: [] for o in objects}
    for m, (a, _) in ends.items():
        out[a].append(m)
    for f, (_, b) in ends.items():
        for g in out[b]:
            gf = table[(g, f)]
            for h in out[ends[g][1]]:
                if table[(h, gf)] != table[(table[(h, g)], f)]:
                    raise AssociativityViolation(h, g, f)


def build_fincategory(
    objects: Iterable[str],
    morphisms: Iterable[tuple[str, str, str]],
    compose: Iterable[tuple[str, str, str]] = (),
    *,
    identities: Mapping[str, str] | None = None,
    name: str = "",
) -> FinCategory:
    """Validate a finite category.

    *morphisms* are ``(id, src, dst)`` triples and *compose* lists
    ``(g, f, g.f)``. Identities may be named explicitly; otherwise a
    morphism ``id_<obj>`` is used or synthesized. Compositions with an
    identity are filled in when omitted.
    """
    objects = tuple(objects)
    if len(set(objects)) != len(objects):
        raise CategoryError(f"Duplicate object ids in category {name!r}")
    obj_set = set(objects)

    ends: dict[str, tuple[str, str]] = {}
    order: list[str] = []
    for mid, src, dst in morphisms:
        if mid in ends:
            raise CategoryError(f"Duplicate morphism id {mid!r} in category {name!r}")
        for o in (src, dst):
            if o not in obj_set:
                raise UnknownIdentifier("object", o, f"morphism {mid}")
        ends[mid] = (src, dst)
        order.append(mid)

    ids: dict[str, str] = {}
    for obj in objects:
        ident = (identities or {}).get(obj, f"id_{obj}")
        if ident in ends:
            if ends[ident] != (obj, obj):
                raise UnitViolation(ident, ident)
        else:
            ends[ident] = (obj, obj)
            order.insert(len(ids), ident)
        ids[obj] = ident

    table: dict[tuple[str, str], str] = {}
    for g, f, gf in compose:
        if (g, f) in table and table[(g, f)] != gf:
            raise CategoryError(f"Composition {g} . {f} listed twice with different values")
        table[(g, f)] = gf
    for m, (a, b) in ends.items():
        table.setdefault((m, ids[a]), m)
        table.setdefault((ids[b], m), m)

    _check_table(objects, ends, ids, table)
    log.debug(
        "category %s: %d objects, %d morphisms, %d composites",
        name or "<anonymous>", len(objects), len(ends), len(table),
    )
    return FinCategory(
        objects=objects, ends=ends, identities=ids, table=table, name=name,
        morphism_order=tuple(order),
    )


def concrete_category(
    objects: Iterable[str],
    morphisms: Iterable[tuple[str, str, str]],
    compose_fn: Callable[[str, str], str],
    identities: Mapping[str, str],
    *,
    name: str = "",
    validate: bool = True,
) -> FinCategory:
    """Category whose composition is computed by *compose_fn* (g, f) -> g.f.

    Used for the built-in categories, whose morphisms are concrete maps.
    """
    objects = tuple(objects)
    ends = {m: (a, b) for m, a, b in morphisms}
    out: dict[str, list[str]] = {o: [] for o in objects}
    for m, (a, _) in ends.items():
        out[a].append(m)
    table = {(g, f): compose_fn(g, f) for f, (_, b) in ends.items() for g in out[b]}
    if validate:
        _check_table(objects, ends, identities, table)
    return FinCategory(
        objects=objects, ends=ends, identities=dict(identities), table=table, name=name,
        morphism_order=tuple(ends),
    )
