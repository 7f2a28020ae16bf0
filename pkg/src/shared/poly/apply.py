"""The polynomial functor P_f(X) = sum over a of X^(B_a)."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Hashable, Mapping

from ..budget import check_size
from ..fincat import FinSet
from ..render import render
from .signature import PolySignature, SignatureError

log = logging.getLogger(__name__)

# (a, ((b, x), ...)) with the b's in fibre order
PolyElement = tuple[Hashable, tuple[tuple[Hashable, Hashable], ...]]


def poly_size(sig: PolySignature, n: int) -> int:
    """|P_f(X)| for |X| = n."""
    return sum(n ** len(sig.fibers[a]) for a in sig.labels)


def apply_poly(sig: PolySignature, X: FinSet, *, budget: int | None = None) -> FinSet:
    """Enumerate P_f(X) label by label, children in lexicographic order.

    Raises ``SizeLimitExceeded`` before enumerating when the result would
    be larger than *budget*.
    """
    check_size(poly_size(sig, len(X)), budget, f"applying {sig.name or 'P_f'} to {len(X)} elements")
    out: list[PolyElement] = []
    for a in sig.labels:
        bs = sig.fibers[a]
        for xs in itertools.product(X.elements, repeat=len(bs)):
            out.append((a, tuple(zip(bs, xs, strict=True))))
    return FinSet(tuple(out))


def apply_poly_map(sig: PolySignature, u: Mapping[Hashable, Hashable]) -> dict:
    """P_f(u): P_f(X) -> P_f(Y) for u: X -> Y, keyed by the elements of P_f(X)."""
    X = FinSet(tuple(u))
    return {
        (a, t): (a, tuple((b, u[x]) for b, x in t))
        for a, t in apply_poly(sig, X)
    }


def check_poly_element(sig: PolySignature, value: PolyElement, X: FinSet) -> None:
    """Raise ``SignatureError`` unless *value* lies in P_f(X)."""
    a, t = value
    bs = sig.fiber(a)
    if tuple(b for b, _ in t) != bs:
        raise SignatureError(
            f"Children of {render(a)} must be indexed by {[render(b) for b in bs]}, "
            f"got {[render(b) for b, _ in t]}"
        )
    for b, x in t:
        if x not in X:
            raise SignatureError(
                f"Child {render(b)} of {render(a)} is not in the carrier: {render(x)}"
            )
