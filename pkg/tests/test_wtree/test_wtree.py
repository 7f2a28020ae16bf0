"""Tests for wtree: sup, rank, stage enumeration and initiality."""

import itertools

import pytest

from shared.budget import SizeLimitExceeded
from shared.fincat import FinSet
from shared.poly import arity_signature, build_dep_signature, signature_from_fibers
from wtree import (
    FiberMismatch,
    WTree,
    algebra_from_function,
    dep_compatible,
    enumerate_dep_stage,
    enumerate_stage,
    fold,
    is_algebra_morphism,
    rank,
    sort_of,
    subtrees,
    sup,
    tree_from_json,
)

NAT = signature_from_fibers({"z": [], "s": ["p"]}, name="nat")


def numeral(k: int) -> WTree:
    w = sup(NAT, "z", {})
    for _ in range(k):
        w = sup(NAT, "s", {"p": w})
    return w


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------


class TestSupAndRank:
    def test_leaf(self):
        leaf = sup(NAT, "z", {})
        assert leaf.children == ()
        assert rank(leaf) == 0

    def test_numeral_one(self):
        one = sup(NAT, "s", {"p": sup(NAT, "z", {})})
        assert one == numeral(1)
        assert one.render() == "s[p:z[]]"

    def test_rank_two(self):
        assert rank(numeral(2)) == 2

    def test_rank_is_max_plus_one(self):
        sig = arity_signature(0, 2)
        leaf = sup(sig, "a0", {})
        deep = leaf
        for _ in range(3):
            deep = sup(sig, "a2", {0: deep, 1: leaf})
        assert rank(sup(sig, "a2", {0: leaf, 1: deep})) == 4

    def test_missing_child(self):
        with pytest.raises(FiberMismatch) as exc:
            sup(NAT, "s", {})
        assert exc.value.missing == ["p"]

    def test_extra_child(self):
        with pytest.raises(FiberMismatch):
            sup(NAT, "z", {"p": numeral(0)})

    def test_json_round_trip(self):
        sig = arity_signature(0, 1, 2)
        leaf = sup(sig, "a0", {})
        w = sup(sig, "a2", {0: sup(sig, "a1", {0: leaf}), 1: leaf})
        assert tree_from_json(sig, w.to_json()) == w

    def test_subtrees_are_shared(self):
        sig = arity_signature(0, 2)
        leaf = sup(sig, "a0", {})
        w = sup(sig, "a2", {0: leaf, 1: leaf})
        assert list(subtrees(w)) == [w, leaf]


# ---------------------------------------------------------------------------
# Stages
# ---------------------------------------------------------------------------


class TestEnumerateStage:
    """W_{<k} is exactly the set of trees of rank < k."""

    def test_binary_tree_sizes(self):
        chain = enumerate_stage(arity_signature(0, 2), 4)
        assert chain.sizes() == [0, 1, 2, 5, 26]
        assert not chain.stabilized

    def test_no_base_case_is_empty(self):
        chain = enumerate_stage(signature_from_fibers({"a": ["x"]}), 3)
        assert chain.sizes() == [0, 0, 0, 0]
        assert chain.stabilized_at == 0
        assert chain.limit == FinSet(())

    def test_leaves_only_stabilizes_at_one(self):
        chain = enumerate_stage(signature_from_fibers({"a": [], "b": [], "c": []}), 3)
        assert chain.stabilized_at == 1
        assert len(chain.limit) == 3
        assert chain.sizes() == [0, 3, 3, 3]

    @pytest.mark.parametrize("n, expected", [(3, 13), (4, 183)])
    def test_arity_012_sizes(self, n, expected):
        assert len(enumerate_stage(arity_signature(0, 1, 2), n).top()) == expected

    def test_monotone_and_ranked(self):
        chain = enumerate_stage(arity_signature(0, 1, 2), 4)
        for k in range(4):
            assert chain.stages[k].members <= chain.stages[k + 1].members
        for k, stage in enumerate(chain.stages):
            assert all(rank(w) < k for w in stage)

    def test_size_limit(self):
        with pytest.raises(SizeLimitExceeded):
            enumerate_stage(arity_signature(0, 2), 5, budget=100)


# ---------------------------------------------------------------------------
# Initiality
# ---------------------------------------------------------------------------


def _parity(a, children):
    if a == "z":
        return "even"
    return "odd" if children["p"] == "even" else "even"


class TestFold:
    def test_parity(self):
        alg = algebra_from_function(NAT, ["even", "odd"], _parity)
        assert fold(alg, numeral(2)) == "even"
        assert fold(alg, numeral(3)) == "odd"

    def test_constant_algebra(self):
        sig = arity_signature(0, 1, 2)
        alg = algebra_from_function(sig, ["*"], lambda a, ch: "*")
        assert {fold(alg, w) for w in enumerate_stage(sig, 3).top()} == {"*"}

    def test_fold_is_an_algebra_morphism(self):
        sig = arity_signature(0, 1, 2)
        alg = algebra_from_function(sig, [0, 1, 2], lambda a, ch: (sum(ch.values()) + 1) % 3)
        trees = enumerate_stage(sig, 4).top()
        memo: dict = {}
        h = {w: fold(alg, w, memo) for w in trees}
        assert is_algebra_morphism(alg, trees, h)

    def test_uniqueness_by_brute_force(self, rng):
        checked = 0
        while checked < 5:
            arities = [rng.randint(0, 2) for _ in range(rng.randint(1, 3))]
            if 0 not in arities:
                arities.append(0)
            sig = arity_signature(*arities)
            stage = enumerate_stage(sig, 3).top()
            if len(stage) > 8:
                continue
            carrier = list(range(rng.randint(1, 3)))
            table = {}
            alg = algebra_from_function(
                sig, carrier,
                lambda a, ch, table=table: table.setdefault(
                    (a, tuple(sorted(ch.items()))), rng.choice(carrier)
                ),
            )
            trees = list(stage)
            morphisms = []
            for values in itertools.product(carrier, repeat=len(trees)):
                h = dict(zip(trees, values, strict=True))
                if is_algebra_morphism(alg, trees, h):
                    morphisms.append(h)
            assert morphisms == [{w: fold(alg, w) for w in trees}]
            checked += 1


# ---------------------------------------------------------------------------
# Dependent polynomials
# ---------------------------------------------------------------------------

NAT_LIST = build_dep_signature(
    C=["nat", "list"],
    A=["zero", "succ", "nil", "cons"],
    B=["p", "head", "tail"],
    f={"p": "succ", "head": "cons", "tail": "cons"},
    h={"p": "nat", "head": "nat", "tail": "list"},
    g={"zero": "nat", "succ": "nat", "nil": "list", "cons": "list"},
)


class TestDependentStages:
    def test_sizes(self):
        stages = enumerate_dep_stage(NAT_LIST, 3)
        assert [len(s["nat"]) for s in stages] == [0, 1, 2, 3]
        assert [len(s["list"]) for s in stages] == [0, 1, 2, 5]

    def test_agrees_with_filtered_stage(self):
        plain = enumerate_stage(NAT_LIST.signature, 3)
        dep = enumerate_dep_stage(NAT_LIST, 3)
        for k in range(4):
            for c in NAT_LIST.sorts:
                filtered = {
                    w for w in plain.stages[k]
                    if dep_compatible(NAT_LIST, w) and sort_of(NAT_LIST, w) == c
                }
                assert filtered == set(dep[k][c])

    def test_unsatisfiable_children_leave_only_leaves(self):
        dsig = build_dep_signature(
            C=["c", "d"], A=["leaf", "node"], B=["x"],
            f={"x": "node"}, h={"x": "d"}, g={"leaf": "c", "node": "c"},
        )
        top = enumerate_dep_stage(dsig, 3)[-1]
        assert [w.label for w in top["c"]] == ["leaf"]
        assert len(top["d"]) == 0

    def test_single_sort_matches_plain_stage(self):
        sig = arity_signature(0, 1, 2)
        dsig = build_dep_signature(
            C=["*"], A=sig.labels, B=["a1.0", "a2.0", "a2.1"],
            f={"a1.0": "a1", "a2.0": "a2", "a2.1": "a2"},
            h={"a1.0": "*", "a2.0": "*", "a2.1": "*"},
            g={a: "*" for a in sig.labels},
        )
        assert len(enumerate_dep_stage(dsig, 3)[3]["*"]) == 13
