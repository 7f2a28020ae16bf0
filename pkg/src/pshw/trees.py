"""Restriction and naturality of trees over f^."""

from __future__ import annotations

from typing import Literal

from shared.render import render
from wtree import TreeError, WTree, subtrees

from .hat import HatSignature

NaturalityStatus = Literal[
    "not-composable",
    "composable-not-natural",
    "natural-not-hereditarily",
    "hereditarily-natural",
]


class TargetMismatch(TreeError):
    def __init__(self, obj: str, alpha: str, target: str):
        self.obj = obj
        self.alpha = alpha
        super().__init__(f"Cannot restrict a tree over {obj} along {alpha}, which ends at {target}")


def tree_object(w: WTree) -> str:
    return w.label[0]


def restrict_tree(hat: HatSignature, w: WTree, alpha: str) -> WTree:
    """w . alpha for alpha: D -> C and w over C.

    The node becomes (D, a . alpha) and its child at (beta, b) is the old
    child at (alpha . beta, b). Children are reindexed, not restricted.
    """
    cat, A = hat.f.category, hat.f.target
    obj, a = w.label
    if cat.dst(alpha) != obj:
        raise TargetMismatch(obj, alpha, cat.dst(alpha))
    d = cat.src(alpha)
    label = (d, A.act(a, alpha))
    old = w.child_map()
    children = tuple(
        ((beta, b), old[(cat.compose(alpha, beta), b)]) for beta, b in hat.fiber(label)
    )
    return WTree(label, children)


def is_composable(hat: HatSignature, w: WTree) -> bool:
    """Each child at (alpha, b) lives over dom(alpha)."""
    cat = hat.f.category
    return all(tree_object(child) == cat.src(alpha) for (alpha, _), child in w.children)


def is_natural(hat: HatSignature, w: WTree) -> bool:
    """Composable, and t(alpha . beta, b . beta) = t(alpha, b) . beta for every beta."""
    if not is_composable(hat, w):
        return False
    cat, B = hat.f.category, hat.f.source
    children = w.child_map()
    for (alpha, b), child in w.children:
        for beta in cat.into(cat.src(alpha)):
            if cat.is_identity(beta):
                continue
            key = (cat.compose(alpha, beta), B.act(b, beta))
            if children[key] != restrict_tree(hat, child, beta):
                return False
    return True


def naturality_status(hat: HatSignature, w: WTree) -> NaturalityStatus:
    """Classify *w*: the root is checked first, then every proper subtree."""
    if not is_composable(hat, w):
        return "not-composable"
    if not is_natural(hat, w):
        return "composable-not-natural"
    if all(is_natural(hat, s) for s in subtrees(w)):
        return "hereditarily-natural"
    return "natural-not-hereditarily"


def is_hereditarily_natural(hat: HatSignature, w: WTree) -> bool:
    return naturality_status(hat, w) == "hereditarily-natural"


def psh_rank(w: WTree) -> int:
    return w.rank


def check_psh_tree(hat: HatSignature, w: WTree) -> None:
    """Raise ``TreeError`` unless every node of *w* carries a label of f^ and its full fibre."""
    for node in subtrees(w):
        if node.label not in hat.labels:
            raise TreeError(f"{render(node.label)} is not a label of {hat.signature.name}")
        keys = tuple(k for k, _ in node.children)
        if keys != hat.fiber(node.label):
            raise TreeError(f"Children of {render(node.label)} do not match its fibre")
