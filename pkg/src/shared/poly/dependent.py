"""Dependent polynomials C <-h- B -f-> A -g-> C."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass

from ..budget import check_size
from ..fincat import FinSet
from ..render import render
from .signature import PolySignature, SignatureError, build_signature

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DepPolySignature:
    """A signature whose children are typed by h and whose roots are typed by g."""

    sorts: FinSet
    signature: PolySignature
    h: Mapping[tuple[Hashable, Hashable], Hashable]  # (a, b) -> sort of child b
    g: Mapping[Hashable, Hashable]  # label -> sort of the node
    name: str = ""

    def labels_over(self, c: Hashable) -> list:
        return [a for a in self.signature.labels if self.g[a] == c]


def build_dep_signature(
    C: Iterable[Hashable],
    A: Iterable[Hashable],
    B: Iterable[Hashable],
    f: Mapping[Hashable, Hashable],
    h: Mapping[Hashable, Hashable],
    g: Mapping[Hashable, Hashable],
    *,
    name: str = "",
) -> DepPolySignature:
    """Validate the three functions of a dependent polynomial."""
    C = FinSet.of(C)
    B = list(B)
    sig = build_signature(A, B, f, name=name)
    for b in B:
        if b not in h or h[b] not in C:
            raise SignatureError(f"h is not a function B -> C at {render(b)}")
    for a in sig.labels:
        if a not in g or g[a] not in C:
            raise SignatureError(f"g is not a function A -> C at {render(a)}")
    typed = {(f[b], b): h[b] for b in B}
    return DepPolySignature(sorts=C, signature=sig, h=typed, g=dict(g), name=name)


def apply_dep_poly(
    sig: DepPolySignature, X: Mapping[Hashable, FinSet], *, budget: int | None = None
) -> dict[Hashable, FinSet]:
    """D_f(X)_c = sum over a in g^-1(c) of the product over b in B_a of X_h(b)."""
    for c in sig.sorts:
        if c not in X:
            raise SignatureError(f"Family has no set for sort {render(c)}")
    size = sum(
        math.prod(len(X[sig.h[(a, b)]]) for b in sig.signature.fibers[a])
        for a in sig.signature.labels
    )
    check_size(size, budget, f"applying {sig.name or 'D_f'}")
    out: dict[Hashable, FinSet] = {}
    for c in sig.sorts:
        elems = []
        for a in sig.labels_over(c):
            bs = sig.signature.fibers[a]
            pools = [X[sig.h[(a, b)]].elements for b in bs]
            for xs in itertools.product(*pools):
                elems.append((a, tuple(zip(bs, xs, strict=True))))
        out[c] = FinSet(tuple(elems))
    return out