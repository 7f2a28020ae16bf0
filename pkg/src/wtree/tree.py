"""Well-founded trees over a polynomial signature."""

from __future__ import annotations

from collections.abc import Hashable, Iterator, Mapping
from dataclasses import dataclass
from functools import cached_property

from shared.poly import PolySignature
from shared.render import render, to_jsonable


class TreeError(ValueError):
    """Base class for malformed trees and tree operations."""


class FiberMismatch(TreeError):
    def __init__(self, label: Hashable, missing: list, extra: list):
        self.label = label
        self.missing = missing
        self.extra = extra
        parts = []
        if missing:
            parts.append(f"missing {[render(b) for b in missing]}")
        if extra:
            parts.append(f"unexpected {[render(b) for b in extra]}")
        super().__init__(f"Children of {render(label)} do not match its fibre: {', '.join(parts)}")


@dataclass(frozen=True)
class WTree:
    """A node labelled *label* with one child per position of the label's fibre.

    ``children`` is a tuple of ``(b, subtree)`` pairs in fibre order.
    """

    label: Hashable
    children: tuple[tuple[Hashable, WTree], ...] = ()

    @cached_property
    def _rendered(self) -> str:
        inner = ",".join(f"{render(b)}:{c.render()}" for b, c in self.children)
        return f"{render(self.label)}[{inner}]"

    def render(self) -> str:
        return self._rendered

    @cached_property
    def _hash(self) -> int:
        return hash((self.label, self.children))

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"WTree({self._rendered})"

    @cached_property
    def rank(self) -> int:
        """0 for a leaf, otherwise one more than the largest child rank."""
        return 1 + max((c.rank for _, c in self.children), default=-1)

    @cached_property
    def size(self) -> int:
        return 1 + sum(c.size for _, c in self.children)

    def child(self, b: Hashable) -> WTree:
        for key, c in self.children:
            if key == b:
                return c
        raise TreeError(f"{render(self.label)} has no child at {render(b)}")

    def child_map(self) -> dict[Hashable, WTree]:
        return dict(self.children)

    def to_json(self) -> dict:
        return {
            "label": to_jsonable(self.label),
            "children": {render(b): c.to_json() for b, c in self.children},
        }


def sup(sig: PolySignature, a: Hashable, children: Mapping[Hashable, WTree]) -> WTree:
    """Build the node a with the given children.

    Raises ``FiberMismatch`` unless *children* is keyed by exactly B_a.
    """
    fiber = sig.fiber(a)
    missing = [b for b in fiber if b not in children]
    extra = [b for b in children if b not in set(fiber)]
    if missing or extra:
        raise FiberMismatch(a, missing, extra)
    return WTree(a, tuple((b, children[b]) for b in fiber))


def rank(w: WTree) -> int:
    return w.rank


def subtrees(w: WTree) -> Iterator[WTree]:
    """Distinct subtrees of *w*, *w* first."""
    seen: set[WTree] = set()
    stack = [w]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        yield node
        stack.extend(c for _, c in reversed(node.children))


def check_tree(sig: PolySignature, w: WTree) -> None:
    """Raise ``FiberMismatch`` unless every node of *w* fits *sig*."""
    for node in subtrees(w):
        sup(sig, node.label, node.child_map())


def tree_from_json(sig: PolySignature, data: Mapping) -> WTree:
    """Inverse of ``WTree.to_json``, validated against *sig*.

    Labels and positions are matched by their rendering.
    """
    labels = {render(a): a for a in sig.labels}
    try:
        label = labels[render(_untuple(data["label"]))]
    except KeyError:
        raise TreeError(f"Unknown label in tree: {data.get('label')!r}") from None
    positions = {render(b): b for b in sig.fiber(label)}
    children = {}
    raw = data.get("children", {})
    items = raw.items() if isinstance(raw, Mapping) else raw
    for key, sub in items:
        name = render(_untuple(key))
        if name not in positions:
            raise FiberMismatch(label, [], [name])
        children[positions[name]] = tree_from_json(sig, sub)
    return sup(sig, label, children)


def _untuple(value):
    if isinstance(value, list):
        return tuple(_untuple(v) for v in value)
    return value
