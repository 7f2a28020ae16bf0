"""Built-in categories.

Morphisms of the concrete categories (simplex, Fin, pointed Fin) are maps
between finite ordinals and are named ``"m>n:v0v1..."``, listing the image
of each element of the domain. Sizes are bounded so every value is one digit.
"""

from __future__ import annotations

import functools
import itertools

from .category import CategoryError, FinCategory, build_fincategory, concrete_category


class SizeOutOfRange(CategoryError):
    """A built-in whose map values would not fit in single digits."""

    def __init__(self, kind: str, size: int, high: int):
        self.kind = kind
        self.size = size
        self.high = high
        super().__init__(f"{kind} size must be in 0..{high}, got {size}")


def map_id(m: int, n: int, values: tuple[int, ...]) -> str:
    return f"{m}>{n}:" + "".join(str(v) for v in values)


def map_values(mid: str) -> tuple[int, ...]:
    """Values of a concrete map named ``"m>n:digits"``."""
    _, digits = mid.split(":", 1)
    return tuple(int(c) for c in digits)


def map_ends(mid: str) -> tuple[int, int]:
    head, _ = mid.split(":", 1)
    m, n = head.split(">")
    return int(m), int(n)


def _concrete(
    names: dict[int, str],
    maps: dict[tuple[int, int], list[tuple[int, ...]]],
    identity_values: dict[int, tuple[int, ...]],
    name: str,
) -> FinCategory:
    morphisms = []
    for (m, n), value_list in maps.items():
        for values in value_list:
            morphisms.append((map_id(m, n, values), names[m], names[n]))
    identities = {names[m]: map_id(m, m, identity_values[m]) for m in names}

    def compose(g: str, f: str) -> str:
        m, _ = map_ends(f)
        _, n = map_ends(g)
        gv, fv = map_values(g), map_values(f)
        return map_id(m, n, tuple(gv[i] for i in fv))

    return concrete_category(names.values(), morphisms, compose, identities, name=name)


def terminal_category() -> FinCategory:
    return build_fincategory(["*"], [], name="terminal")


def walking_arrow() -> FinCategory:
    """C0 --u--> C1."""
    return build_fincategory(["C0", "C1"], [("u", "C0", "C1")], name="two")


def cospan_category() -> FinCategory:
    """C0 --u--> C1 <--v-- C2."""
    return build_fincategory(
        ["C0", "C1", "C2"], [("u", "C0", "C1"), ("v", "C2", "C1")], name="cospan"
    )


def span_category() -> FinCategory:
    """L <--l-- A --m--> R, the shape of a pushout."""
    return build_fincategory(["A", "L", "R"], [("l", "A", "L"), ("m", "A", "R")], name="span")


def poset_category(m: int) -> FinCategory:
    """The chain 0 <= 1 <= ... <= m."""
    objs = [str(i) for i in range(m + 1)]
    morphisms = [(f"{i}<={j}", str(i), str(j)) for i in range(m + 1) for j in range(i, m + 1)]
    identities = {str(i): f"{i}<={i}" for i in range(m + 1)}

    def compose(g: str, f: str) -> str:
        i = f.split("<=")[0]
        k = g.split("<=")[1]
        return f"{i}<={k}"

    return concrete_category(objs, morphisms, compose, identities, name=f"N<={m}")


@functools.cache
def simplex_category(N: int) -> FinCategory:
    """Monotone maps between [0], ..., [N]; objects are named ``"[n]"``."""
    if not 0 <= N <= 9:
        raise SizeOutOfRange("simplex", N, 9)
    names = {n: f"[{n}]" for n in range(N + 1)}
    maps = {
        (m, n): list(itertools.combinations_with_replacement(range(n + 1), m + 1))
        for m in range(N + 1)
        for n in range(N + 1)
    }
    ident = {m: tuple(range(m + 1)) for m in names}
    return _concrete(names, maps, ident, f"Delta<={N}")


@functools.cache
def fin_category(k: int) -> FinCategory:
    """All functions between {0..m-1} for m <= k; objects are ``"0"``..``"k"``."""
    if not 0 <= k <= 10:
        raise SizeOutOfRange("fin", k, 10)
    names = {n: str(n) for n in range(k + 1)}
    maps = {
        (m, n): list(itertools.product(range(n), repeat=m))
        for m in range(k + 1)
        for n in range(k + 1)
    }
    ident = {m: tuple(range(m)) for m in names}
    return _concrete(names, maps, ident, f"Fin<={k}")


@functools.cache
def fin_pointed_category(k: int) -> FinCategory:
    """Basepoint-preserving maps {0..m} -> {0..n}; objects ``"<0>"``..``"<k>"``."""
    if not 0 <= k <= 9:
        raise SizeOutOfRange("fin_pointed", k, 9)
    names = {n: f"<{n}>" for n in range(k + 1)}
    maps = {
        (m, n): [(0, *rest) for rest in itertools.product(range(n + 1), repeat=m)]
        for m in range(k + 1)
        for n in range(k + 1)
    }
    ident = {m: tuple(range(m + 1)) for m in names}
    return _concrete(names, maps, ident, f"Fin*<={k}")


def product_object(c: str, d: str) -> str:
    return f"{c}|{d}"


def product_category(C: FinCategory, D: FinCategory) -> FinCategory:
    """C x D with objects ``"c|d"`` and morphisms ``"g|h"``."""
    objs = [product_object(c, d) for c in C.objects for d in D.objects]
    morphisms = []
    parts: dict[str, tuple[str, str]] = {}
    for g in C.morphisms:
        for h in D.morphisms:
            mid = f"{g}|{h}"
            parts[mid] = (g, h)
            morphisms.append(
                (mid, product_object(C.src(g), D.src(h)), product_object(C.dst(g), D.dst(h)))
            )
    identities = {
        product_object(c, d): f"{C.identity(c)}|{D.identity(d)}"
        for c in C.objects
        for d in D.objects
    }

    def compose(g: str, f: str) -> str:
        g1, g2 = parts[g]
        f1, f2 = parts[f]
        return f"{C.compose(g1, f1)}|{D.compose(g2, f2)}"

    return concrete_category(
        objs, morphisms, compose, identities, name=f"{C.name}x{D.name}", validate=False
    )
