"""Finite sets and functions between them.

A ``FinSet`` is an ordered tuple of distinct hashable elements. Functions
are plain dicts from the elements of one set to the elements of another.
"""

from __future__ import annotations

import itertools
from collections.abc import Hashable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property

from ..render import canonical, render


@dataclass(frozen=True)
class FinSet:
    """Finite set with a fixed enumeration order."""

    elements: tuple = ()

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            seen: set = set()
            dupes = [e for e in self.elements if e in seen or seen.add(e)]
            raise ValueError(
                f"FinSet elements must be distinct, repeated: {[render(d) for d in dupes]}"
            )

    @classmethod
    def of(cls, values: Iterable[Hashable]) -> FinSet:
        """Distinct *values* in canonical order."""
        return cls(canonical(values))

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.elements)

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, item: object) -> bool:
        return item in self.members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinSet):
            return NotImplemented
        return self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def render(self) -> str:
        return "{" + ", ".join(render(e) for e in self.elements) + "}"


EMPTY = FinSet(())


def check_function(fn: Mapping, domain: Iterable, codomain: FinSet, what: str) -> None:
    """Raise ``ValueError`` unless *fn* is a total function domain -> codomain."""
    for x in domain:
        if x not in fn:
            raise ValueError(f"{what}: no value for {render(x)}")
        if fn[x] not in codomain:
            raise ValueError(f"{what}: value {render(fn[x])} of {render(x)} is not in the codomain")


def compose_fn(g: Mapping, f: Mapping) -> dict:
    """g after f."""
    return {x: g[y] for x, y in f.items()}


def is_injective(fn: Mapping) -> bool:
    return len(set(fn.values())) == len(fn)


def is_surjective(fn: Mapping, codomain: Iterable) -> bool:
    return set(codomain) <= set(fn.values())


def all_functions(domain: FinSet, codomain: FinSet) -> Iterator[dict]:
    """Every function domain -> codomain, in lexicographic order."""
    for values in itertools.product(codomain.elements, repeat=len(domain)):
        yield dict(zip(domain.elements, values, strict=True))
