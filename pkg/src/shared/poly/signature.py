"""Polynomial signatures f: B -> A over finite sets."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass

from ..fincat import FinSet
from ..render import canonical, render


class SignatureError(ValueError):
    """Malformed signature or value outside a signature's labels."""


@dataclass(frozen=True, eq=False)
class PolySignature:
    """Labels A and, for each label a, the fibre B_a of child positions.

    Fibres are stored in canonical order; edge names only need to be
    unique within their fibre.
    """

    labels: FinSet
    fibers: Mapping[Hashable, tuple]
    name: str = ""

    def fiber(self, a: Hashable) -> tuple:
        try:
            return self.fibers[a]
        except KeyError:
            where = self.name or "signature"
            raise SignatureError(f"{render(a)} is not a label of {where}") from None

    def arity(self, a: Hashable) -> int:
        return len(self.fiber(a))

    def positions(self) -> list[tuple[Hashable, Hashable]]:
        """The total space B as pairs (a, b)."""
        return [(a, b) for a in self.labels for b in self.fibers[a]]


def signature_from_fibers(
    fibers: Mapping[Hashable, Iterable[Hashable]], *, name: str = ""
) -> PolySignature:
    """Signature given label by label."""
    table = {}
    for a, bs in fibers.items():
        bs = list(bs)
        if len(set(bs)) != len(bs):
            raise SignatureError(f"Fibre of {render(a)} repeats a position")
        table[a] = canonical(bs)
    labels = FinSet.of(table)
    return PolySignature(labels=labels, fibers={a: table[a] for a in labels}, name=name)


def build_signature(
    A: Iterable[Hashable], B: Iterable[Hashable], f: Mapping[Hashable, Hashable], *, name: str = ""
) -> PolySignature:
    """Signature from an explicit function f: B -> A."""
    A = FinSet.of(A)
    fibers: dict[Hashable, list] = {a: [] for a in A}
    for b in B:
        if b not in f:
            raise SignatureError(f"f is not total: no value for {render(b)}")
        if f[b] not in A:
            raise SignatureError(f"f({render(b)}) = {render(f[b])} is not in A")
        fibers[f[b]].append(b)
    return signature_from_fibers(fibers, name=name)


def arity_signature(*arities: int, name: str = "") -> PolySignature:
    """One label per arity; label ``"a<k>"`` has children ``0..k-1``.

    Repeated arities get distinct labels ``"a<k>_<i>"``.
    """
    fibers: dict[str, range] = {}
    seen: dict[int, int] = {}
    for k in arities:
        if k < 0:
            raise SignatureError(f"Arity must be >= 0, got {k}")
        i = seen.get(k, 0)
        seen[k] = i + 1
        label = f"a{k}" if i == 0 else f"a{k}_{i}"
        fibers[label] = range(k)
    return signature_from_fibers(fibers, name=name or "arity" + "".join(map(str, arities)))
