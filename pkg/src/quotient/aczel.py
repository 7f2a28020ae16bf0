"""The Aczel construction at desk scale: W-trees read as set formers.

A tree sup_a(t) stands for the set {t(b) : b in B_a}. Two trees are
bisimilar when every child of one is bisimilar to some child of the other,
and conversely. Labels themselves carry no content.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed

from shared.budget import resolve_budget
from shared.fincat import FinSet, build_psh_map, presheaf_from_action, terminal_category
from shared.poly import PolySignature
from wtree import WTree, check_tree, enumerate_stage

from .eqrel import EqClassMap, PseudoEqRel, check_pseudo_eqrel, composable_pairs

log = logging.getLogger(__name__)


class AczelMatcher:
    """Memoized bisimilarity and proof counting between trees.

    One matcher per task; the memo tables are not shared across threads.
    """

    def __init__(self, proof_cap: int = 4):
        if proof_cap < 1:
            raise ValueError(f"proof_cap must be >= 1, got {proof_cap}")
        self.proof_cap = proof_cap
        self._bisim: dict[tuple[WTree, WTree], bool] = {}
        self._proofs: dict[tuple[WTree, WTree], int] = {}

    def bisimilar(self, w1: WTree, w2: WTree) -> bool:
        if w1 == w2:
            return True
        key = (w1, w2)
        if key not in self._bisim:
            kids1 = [c for _, c in w1.children]
            kids2 = [c for _, c in w2.children]
            self._bisim[key] = all(
                any(self.bisimilar(c, d) for d in kids2) for c in kids1
            ) and all(any(self.bisimilar(c, d) for c in kids1) for d in kids2)
        return self._bisim[key]

    def proofs(self, w1: WTree, w2: WTree) -> int:
        """Number of elements of the initial Phi-algebra over (w1, w2), capped.

        Phi(X) at (sup_u t, sup_u' t') is
        prod_e sum_e' X(t e, t' e')  x  prod_e' sum_e X(t e, t' e').
        Counts saturate at ``proof_cap``; zero exactly when not bisimilar.
        """
        key = (w1, w2)
        if key not in self._proofs:
            kids1 = [c for _, c in w1.children]
            kids2 = [c for _, c in w2.children]
            total = 1
            for c in kids1:
                total = min(self.proof_cap, total * sum(self.proofs(c, d) for d in kids2))
            for d in kids2:
                total = min(self.proof_cap, total * sum(self.proofs(c, d) for c in kids1))
            self._proofs[key] = total
        return self._proofs[key]


def aczel_bisimilar(sig: PolySignature, w1: WTree, w2: WTree) -> bool:
    check_tree(sig, w1)
    check_tree(sig, w2)
    return AczelMatcher().bisimilar(w1, w2)


def count_bisimulation_proofs(w1: WTree, w2: WTree, *, proof_cap: int = 4) -> int:
    return AczelMatcher(proof_cap).proofs(w1, w2)


def _first_match(trees: tuple[WTree, ...], i: int) -> int:
    matcher = AczelMatcher()
    return next(j for j in range(i + 1) if matcher.bisimilar(trees[j], trees[i]))


def extensional_quotient(
    sig: PolySignature,
    n: int,
    *,
    budget: int | None = None,
    max_workers: int = 1,
) -> EqClassMap:
    """Classes of Aczel bisimilarity on W_{<n}, named by least trees.

    Each tree is matched against the trees before it in canonical order; the
    first match is the least member of its class. With ``max_workers > 1``
    the per-tree matches run in a thread pool and are merged by index.
    """
    trees = enumerate_stage(sig, n, budget=resolve_budget(budget)).top().elements
    first: dict[int, int] = {}
    if max_workers > 1 and len(trees) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            futures = {pool.submit(_first_match, trees, i): i for i in range(len(trees))}
            for future in as_completed(futures):
                first[futures[future]] = future.result()
    else:
        matcher = AczelMatcher()
        for i in range(len(trees)):
            first[i] = next(j for j in range(i + 1) if matcher.bisimilar(trees[j], trees[i]))
    class_of = {trees[i]: trees[first[i]] for i in range(len(trees))}
    quotient = EqClassMap(carrier=FinSet.of(set(class_of.values())), class_of=class_of)
    log.info(
        "W<%d of %s: %d trees, %d classes", n, sig.name or "?", len(trees), len(quotient.carrier)
    )
    return quotient


def bisimulation_relation(
    sig: PolySignature, n: int, *, proof_cap: int = 4, budget: int | None = None
) -> PseudoEqRel:
    """The proof-relevant bisimilarity relation on W_{<n} as a pseudo-equivalence.

    R has one element (w1, w2, k) per proof k of bisimilarity (capped), so
    R -> Y x Y is not monic in general. Presheaves live over the terminal
    category.
    """
    cat = terminal_category()
    trees = enumerate_stage(sig, n, budget=budget).top()
    matcher = AczelMatcher(proof_cap)
    counts = {(w1, w2): matcher.proofs(w1, w2) for w1 in trees for w2 in trees}
    Y = presheaf_from_action(cat, {"*": trees}, lambda x, m: x, name=f"W<{n}")
    R = presheaf_from_action(
        cat,
        {"*": FinSet.of((w1, w2, k) for (w1, w2), c in counts.items() for k in range(c))},
        lambda x, m: x,
        name="Bisim",
    )
    s = {"*": {r: r[0] for r in R("*")}}
    t = {"*": {r: r[1] for r in R("*")}}
    s_map = build_psh_map(R, Y, s, name="s")
    t_map = build_psh_map(R, Y, t, name="t")
    rho = {"*": {w: (w, w, 0) for w in trees}}
    sigma = {"*": {(w1, w2, k): (w2, w1, k % counts[(w2, w1)]) for w1, w2, k in R("*")}}
    P, _, _ = composable_pairs(s_map, t_map)
    tau = {"*": {(r1, r2): (r1[0], r2[1], 0) for r1, r2 in P("*")}}
    return check_pseudo_eqrel(s_map, t_map, rho, sigma, tau)
