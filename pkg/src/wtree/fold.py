"""Algebras for P_f and the unique map out of the initial algebra."""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Mapping
from dataclasses import dataclass

from shared.fincat import FinSet
from shared.poly import PolyElement, PolySignature, apply_poly
from shared.render import render

from .tree import TreeError, WTree


class AlgebraError(TreeError):
    """Structure map is not a function P_f(carrier) -> carrier."""


@dataclass(frozen=True, eq=False)
class Algebra:
    signature: PolySignature
    carrier: FinSet
    structure: Mapping[PolyElement, Hashable]

    def __call__(self, a: Hashable, children: Mapping[Hashable, Hashable]) -> Hashable:
        key = (a, tuple((b, children[b]) for b in self.signature.fiber(a)))
        return self.structure[key]


def build_algebra(
    sig: PolySignature, carrier: Iterable[Hashable], structure: Mapping[PolyElement, Hashable]
) -> Algebra:
    carrier = carrier if isinstance(carrier, FinSet) else FinSet(tuple(carrier))
    for elem in apply_poly(sig, carrier):
        if elem not in structure:
            raise AlgebraError(f"Structure map has no value at {render(elem)}")
        if structure[elem] not in carrier:
            raise AlgebraError(f"Structure map sends {render(elem)} outside the carrier")
    return Algebra(sig, carrier, dict(structure))


def algebra_from_function(
    sig: PolySignature,
    carrier: Iterable[Hashable],
    fn: Callable[[Hashable, Mapping[Hashable, Hashable]], Hashable],
) -> Algebra:
    """Tabulate fn(a, children) over P_f(carrier)."""
    carrier = carrier if isinstance(carrier, FinSet) else FinSet(tuple(carrier))
    structure = {(a, t): fn(a, dict(t)) for a, t in apply_poly(sig, carrier)}
    return build_algebra(sig, carrier, structure)


def fold(alg: Algebra, w: WTree, memo: dict[WTree, Hashable] | None = None) -> Hashable:
    """The value of *w* under the unique algebra map W(f) -> carrier."""
    memo = {} if memo is None else memo
    if w in memo:
        return memo[w]
    children = {b: fold(alg, c, memo) for b, c in w.children}
    value = alg(w.label, children)
    memo[w] = value
    return value


def is_algebra_morphism(alg: Algebra, trees: Iterable[WTree], h: Mapping[WTree, Hashable]) -> bool:
    """Does h commute with sup on *trees* (whose children must also be keys of h)?"""
    for w in trees:
        if any(c not in h for _, c in w.children):
            raise TreeError(f"h is not defined on the children of {w.render()}")
        if h[w] != alg(w.label, {b: h[c] for b, c in w.children}):
            return False
    return True
