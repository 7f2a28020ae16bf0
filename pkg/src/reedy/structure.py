"""Reedy and generalised Reedy structures on finite categories.

A structure is a degree per object plus two wide subcategories: R+
(degree-raising) and R- (degree-lowering). Every morphism factors as a
minus map followed by a plus map; uniquely for ordinary structures, up to
a unique isomorphism for generalised ones, where isomorphisms sit in both
classes and preserve degree.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

from shared.fincat import (
    FinCategory,
    fin_category,
    fin_pointed_category,
    map_ends,
    map_values,
    poset_category,
    simplex_category,
)

log = logging.getLogger(__name__)

Factorization = tuple[str, str]  # (minus part, plus part)


class ReedyError(ValueError):
    """Base class for Reedy-structure errors."""


class DegreeViolation(ReedyError):
    def __init__(self, morphism: str, detail: str):
        self.morphism = morphism
        super().__init__(f"Degree condition fails for {morphism}: {detail}")


class FactorizationMissing(ReedyError):
    def __init__(self, morphism: str):
        self.morphism = morphism
        super().__init__(f"{morphism} has no factorization as a minus map followed by a plus map")


class FactorizationNotUnique(ReedyError):
    def __init__(self, morphism: str, first: Factorization, second: Factorization):
        self.morphism = morphism
        self.witnesses = (first, second)
        super().__init__(
            f"{morphism} factors twice: {first[1]} . {first[0]} and {second[1]} . {second[0]}"
        )


class ClassNotClosed(ReedyError):
    def __init__(self, which: str, g: str, f: str):
        self.which = which
        super().__init__(f"R{which} is not closed under composition: {g} . {f} is missing")


@dataclass(frozen=True, eq=False)
class ReedyStructure:
    base: FinCategory
    degree: Mapping[str, int]
    plus: frozenset[str]
    minus: frozenset[str]
    generalised: bool = False
    factorizations: Mapping[str, Factorization] = field(default_factory=dict)
    name: str = ""

    def is_trivial(self, m: str) -> bool:
        """Identities, or isomorphisms for generalised structures."""
        if self.generalised:
            return self.base.is_iso(m)
        return self.base.is_identity(m)

    def minus_out_of(self, obj: str, *, nontrivial: bool = True) -> list[str]:
        return [
            m for m in self.base.out_of(obj)
            if m in self.minus and not (nontrivial and self.is_trivial(m))
        ]

    def plus_into(self, obj: str, *, nontrivial: bool = True) -> list[str]:
        return [
            m for m in self.base.into(obj)
            if m in self.plus and not (nontrivial and self.is_trivial(m))
        ]

    def automorphisms(self, obj: str) -> list[str]:
        return [m for m in self.base.hom(obj, obj) if self.base.is_iso(m)]

    def to_json(self) -> dict:
        order = {m: i for i, m in enumerate(self.base.morphisms)}
        return {
            "degree": {obj: self.degree[obj] for obj in self.base.objects},
            "plus": sorted(self.plus, key=order.__getitem__),
            "minus": sorted(self.minus, key=order.__getitem__),
            "generalised": self.generalised,
        }


def _check_class(cat: FinCategory, cls: frozenset[str], which: str) -> None:
    for m in cls:
        if m not in cat.ends:
            raise ReedyError(f"R{which} names unknown morphism {m!r}")
    for obj in cat.objects:
        if cat.identity(obj) not in cls:
            raise ReedyError(f"R{which} must contain the identity of {obj}")
    for f in cls:
        for g in cat.out_of(cat.dst(f)):
            if g in cls and cat.compose(g, f) not in cls:
                raise ClassNotClosed(which, g, f)


def _check_degrees(
    cat: FinCategory, degree: Mapping[str, int], plus, minus, generalised: bool
) -> None:
    for obj in cat.objects:
        if obj not in degree:
            raise ReedyError(f"No degree given for {obj}")
        if not isinstance(degree[obj], int) or degree[obj] < 0:
            raise ReedyError(f"Degree of {obj} must be a natural number, got {degree[obj]!r}")
    for m in cat.morphisms:
        src, dst = cat.ends[m]
        if generalised and cat.is_iso(m):
            if degree[src] != degree[dst]:
                raise DegreeViolation(m, "isomorphisms must preserve degree")
            if m not in plus or m not in minus:
                raise DegreeViolation(m, "isomorphisms must lie in both classes")
            continue
        if cat.is_identity(m):
            continue
        if m in plus and degree[dst] <= degree[src]:
            raise DegreeViolation(m, f"in R+ but degree {degree[src]} -> {degree[dst]}")
        if m in minus and degree[dst] >= degree[src]:
            raise DegreeViolation(m, f"in R- but degree {degree[src]} -> {degree[dst]}")


def _factorizations(cat: FinCategory, m: str, plus, minus) -> list[Factorization]:
    src, dst = cat.ends[m]
    found = []
    for r in cat.out_of(src):
        if r not in minus:
            continue
        for s in cat.hom(cat.dst(r), dst):
            if s in plus and cat.compose(s, r) == m:
                found.append((r, s))
    return found


def _iso_related(cat: FinCategory, one: Factorization, two: Factorization) -> bool:
    """An iso theta with theta r = r' and s' theta = s."""
    (r, s), (r2, s2) = one, two
    for theta in cat.hom(cat.dst(r), cat.dst(r2)):
        if cat.is_iso(theta) and cat.compose(theta, r) == r2 and cat.compose(s2, theta) == s:
            return True
    return False


def attach_reedy(
    cat: FinCategory,
    degree: Mapping[str, int],
    plus: Iterable[str],
    minus: Iterable[str],
    *,
    generalised: bool = False,
    name: str = "",
) -> ReedyStructure:
    """Validate a (generalised) Reedy structure exhaustively.

    Raises ``DegreeViolation``, ``FactorizationMissing`` or
    ``FactorizationNotUnique`` naming the offending morphism.
    """
    plus, minus = frozenset(plus), frozenset(minus)
    _check_class(cat, plus, "+")
    _check_class(cat, minus, "-")
    _check_degrees(cat, degree, plus, minus, generalised)
    chosen: dict[str, Factorization] = {}
    for m in cat.morphisms:
        found = _factorizations(cat, m, plus, minus)
        if not found:
            raise FactorizationMissing(m)
        for other in found[1:]:
            if not generalised or not _iso_related(cat, found[0], other):
                raise FactorizationNotUnique(m, found[0], other)
        chosen[m] = found[0]
    log.debug(
        "Reedy structure on %s: %d plus, %d minus morphisms",
        cat.name or "<anonymous>", len(plus), len(minus),
    )
    return ReedyStructure(
        base=cat, degree=dict(degree), plus=plus, minus=minus,
        generalised=generalised, factorizations=chosen, name=name or cat.name,
    )


def reedy_from_json(cat: FinCategory, data: Mapping) -> ReedyStructure:
    """The inverse of ``ReedyStructure.to_json``; identities may be left out."""
    ids = set(cat.identities.values())
    return attach_reedy(
        cat,
        {obj: int(d) for obj, d in data["degree"].items()},
        ids | set(data.get("plus", [])),
        ids | set(data.get("minus", [])),
        generalised=bool(data.get("generalised", False)),
    )


# ---------------------------------------------------------------------------
# Built-in structures
# ---------------------------------------------------------------------------


def _injective(m: str) -> bool:
    values = map_values(m)
    return len(set(values)) == len(values)


def _surjective_onto(m: str, codomain: Iterable[int]) -> bool:
    return set(map_values(m)) == set(codomain)


def simplex_reedy(N: int) -> ReedyStructure:
    """Delta<=N with injections raising and surjections lowering degree."""
    cat = simplex_category(N)
    plus = [m for m in cat.morphisms if _injective(m)]
    minus = [m for m in cat.morphisms if _surjective_onto(m, range(map_ends(m)[1] + 1))]
    return attach_reedy(cat, {f"[{n}]": n for n in range(N + 1)}, plus, minus)


def poset_reedy(m: int) -> ReedyStructure:
    """The chain 0 <= ... <= m with everything in R+."""
    cat = poset_category(m)
    return attach_reedy(
        cat, {obj: int(obj) for obj in cat.objects}, cat.morphisms, cat.identities.values()
    )


def fin_reedy(k: int) -> ReedyStructure:
    """Finite sets of size <= k: generalised, injections up, surjections down."""
    cat = fin_category(k)
    plus = [m for m in cat.morphisms if _injective(m)]
    minus = [m for m in cat.morphisms if _surjective_onto(m, range(map_ends(m)[1]))]
    return attach_reedy(
        cat, {obj: int(obj) for obj in cat.objects}, plus, minus, generalised=True
    )


def fin_pointed_reedy(k: int) -> ReedyStructure:
    """Pointed finite sets {0..n}, n <= k, generalised like ``fin_reedy``."""
    cat = fin_pointed_category(k)
    plus = [m for m in cat.morphisms if _injective(m)]
    minus = [m for m in cat.morphisms if _surjective_onto(m, range(map_ends(m)[1] + 1))]
    return attach_reedy(
        cat, {obj: int(obj.strip("<>")) for obj in cat.objects}, plus, minus, generalised=True
    )


BUILTIN_REEDY = {
    "simplex": simplex_reedy,
    "poset": poset_reedy,
    "fin": fin_reedy,
    "fin_pointed": fin_pointed_reedy,
}


def builtin_reedy(kind: str, size: int) -> ReedyStructure:
    try:
        make = BUILTIN_REEDY[kind]
    except KeyError:
        raise ReedyError(
            f"Unknown built-in Reedy structure {kind!r}. Choose from {sorted(BUILTIN_REEDY)}"
        ) from None
    return make(size)
