"""Backtracking search for natural maps between presheaves.

Natural families, horn maps, lifting-problem fillers and sections of
dependent products are all natural maps satisfying extra pointwise
constraints, so they share this one engine.

Source elements are assigned in order of increasing object "height"
(number of morphisms into the object), so restrictions of an element are
usually assigned before it. Whenever an element whose restriction is the
current element is already assigned, the current value is forced.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Hashable, Iterator, Mapping
from dataclasses import dataclass

from ..budget import SearchCounter
from ..render import sort_key
from .presheaf import Presheaf, PshMap

log = logging.getLogger(__name__)

Allowed = Callable[[str, Hashable, Hashable], bool]

_UNSET = object()


@dataclass
class _Plan:
    keys: list[tuple[str, Hashable]]
    # down[i]: (alpha, j) with element j == element i . alpha
    down: list[list[tuple[str, int]]]
    # up[i]: (alpha, k) with element i == element k . alpha
    up: list[list[tuple[str, int]]]


def _plan(source: Presheaf) -> _Plan:
    cat = source.category
    height = {obj: (len(cat.into(obj)), n) for n, obj in enumerate(cat.objects)}
    keys = sorted(source.elements(), key=lambda e: (height[e[0]], sort_key(e[1])))
    index = {key: i for i, key in enumerate(keys)}
    down: list[list[tuple[str, int]]] = [[] for _ in keys]
    up: list[list[tuple[str, int]]] = [[] for _ in keys]
    for i, (obj, x) in enumerate(keys):
        for alpha in cat.into(obj):
            if cat.is_identity(alpha):
                continue
            j = index[(cat.src(alpha), source.act(x, alpha))]
            down[i].append((alpha, j))
            if j != i:
                up[j].append((alpha, i))
    return _Plan(keys=keys, down=down, up=up)


def natural_maps(
    source: Presheaf,
    target: Presheaf,
    *,
    fixed: Mapping[tuple[str, Hashable], Hashable] | None = None,
    allowed: Allowed | None = None,
    budget: int | None = None,
) -> Iterator[dict[str, dict]]:
    """Enumerate natural maps source -> target as component dicts.

    *fixed* pins the value of ``(obj, x)``; *allowed(obj, x, y)* filters the
    value y of x. Maps are produced in a deterministic order. Raises
    ``BudgetExceeded`` when more than *budget* candidate values are tried.
    """
    if source.category is not target.category:
        raise ValueError("natural_maps needs presheaves over the same category")
    fixed = fixed or {}
    plan = _plan(source)
    keys, down, up = plan.keys, plan.down, plan.up
    counter = SearchCounter(budget, f"searching maps {source.name or '?'} -> {target.name or '?'}")
    n = len(keys)
    values: list = [_UNSET] * n
    pending: list[Iterator | None] = [None] * n

    def candidates(i: int) -> Iterator:
        obj, x = keys[i]
        forced = _UNSET
        for alpha, k in up[i]:
            if values[k] is not _UNSET:
                forced = target.act(values[k], alpha)
                break
        if (obj, x) in fixed:
            pinned = fixed[(obj, x)]
            if forced is not _UNSET and forced != pinned:
                return iter(())
            forced = pinned
        pool = (forced,) if forced is not _UNSET else target(obj).elements
        if forced is not _UNSET and forced not in target(obj):
            return iter(())
        if allowed is None:
            return iter(pool)
        return (y for y in pool if allowed(obj, x, y))

    def consistent(i: int, y: Hashable) -> bool:
        for alpha, j in down[i]:
            yj = y if j == i else values[j]
            if yj is not _UNSET and target.act(y, alpha) != yj:
                return False
        for alpha, k in up[i]:
            if values[k] is not _UNSET and target.act(values[k], alpha) != y:
                return False
        return True

    def assemble() -> dict[str, dict]:
        comps: dict[str, dict] = {obj: {} for obj in source.category.objects}
        for (obj, x), y in zip(keys, values, strict=True):
            comps[obj][x] = y
        return comps

    if n == 0:
        yield assemble()
        return

    found = 0
    i = 0
    while i >= 0:
        if i == n:
            found += 1
            yield assemble()
            i -= 1
            continue
        if pending[i] is None:
            pending[i] = candidates(i)
        advanced = False
        for y in pending[i]:
            counter.tick()
            if consistent(i, y):
                values[i] = y
                advanced = True
                break
        if advanced:
            i += 1
        else:
            pending[i] = None
            values[i] = _UNSET
            i -= 1
    log.debug("natural map search: %d maps, %d nodes", found, counter.nodes)


def first_natural_map(
    source: Presheaf,
    target: Presheaf,
    *,
    fixed: Mapping[tuple[str, Hashable], Hashable] | None = None,
    allowed: Allowed | None = None,
    budget: int | None = None,
) -> PshMap | None:
    """First natural map of ``natural_maps``, or ``None`` when there is none."""
    for comps in natural_maps(source, target, fixed=fixed, allowed=allowed, budget=budget):
        return PshMap(source, target, comps)
    return None


def count_natural_maps(source: Presheaf, target: Presheaf, *, budget: int | None = None,
                       allowed: Allowed | None = None) -> int:
    return sum(1 for _ in natural_maps(source, target, allowed=allowed, budget=budget))
