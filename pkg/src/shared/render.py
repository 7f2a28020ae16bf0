"""Canonical rendering of elements.

Elements of finite sets are strings, ints, tuples, frozensets or objects
with a ``render()`` method (trees, cut markers). Every canonical order in
the toolkit is the order of ``sort_key``.
"""

from __future__ import annotations

from collections.abc import Hashable, Iterable


def render(value: object) -> str:
    """Deterministic text form of an element."""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    renderer = getattr(value, "render", None)
    if callable(renderer):
        return renderer()
    if isinstance(value, tuple):
        return "(" + ",".join(render(v) for v in value) + ")"
    if isinstance(value, frozenset):
        return "{" + ",".join(sorted(render(v) for v in value)) + "}"
    raise TypeError(f"Cannot render element of type {type(value).__name__}: {value!r}")


def sort_key(value: object) -> tuple[str, str]:
    # repr breaks ties between distinct values with the same rendering
    return render(value), repr(value)


def canonical(values: Iterable[Hashable]) -> tuple:
    """Distinct *values* in canonical order."""
    return tuple(sorted(set(values), key=sort_key))


def to_jsonable(value: object) -> object:
    """Convert an element into plain JSON data (strings, lists, dicts)."""
    as_json = getattr(value, "to_json", None)
    if callable(as_json):
        return as_json()
    if isinstance(value, (str, int)):
        return value
    if isinstance(value, tuple):
        return [to_jsonable(v) for v in value]
    if isinstance(value, frozenset):
        return [to_jsonable(v) for v in sorted(value, key=sort_key)]
    if isinstance(value, dict):
        items = sorted(value.items(), key=lambda kv: sort_key(kv[0]))
        return {render(k): to_jsonable(v) for k, v in items}
    return render(value)
