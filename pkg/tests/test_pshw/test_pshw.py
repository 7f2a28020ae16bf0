"""Tests for pshw: the f^ signature, restriction, naturality and stages."""

import pytest

from pshw import (
    TargetMismatch,
    enumerate_psh_stage,
    hat_construction,
    hat_stage_trees,
    hereditarily_natural_part,
    is_hereditarily_natural,
    naturality_status,
    psh_rank,
    restrict_tree,
    stage_isomorphism,
)
from shared.fincat import (
    build_presheaf,
    build_psh_map,
    cospan_category,
    terminal_category,
    terminal_presheaf,
    walking_arrow,
)
from shared.poly import signature_from_fibers
from wtree import WTree, enumerate_stage

Z = WTree(("C0", "z"))


def _c_over(child: WTree) -> WTree:
    return WTree(("C1", "c"), ((("u", "b"), child),))


@pytest.fixture
def arrow_with_leaves():
    """Over C0 -u-> C1 with a fibre that has a non-identity reindexing.

    A(C0) = {*, z}, A(C1) = {*, y}, y.u = z; B(C0) = {b0, b1}, B(C1) = {e},
    e.u = b0; f sends everything to *.
    """
    cat = walking_arrow()
    A = build_presheaf(cat, {"C0": ["*", "z"], "C1": ["*", "y"]}, {"u": {"*": "*", "y": "z"}})
    B = build_presheaf(cat, {"C0": ["b0", "b1"], "C1": ["e"]}, {"u": {"e": "b0"}})
    return build_psh_map(
        B, A, {"C0": {"b0": "*", "b1": "*"}, "C1": {"e": "*"}}, name="g"
    )


# ---------------------------------------------------------------------------
# Hat signature
# ---------------------------------------------------------------------------


class TestHatConstruction:
    def test_terminal_base_fibres(self, two):
        A = terminal_presheaf(two)
        B = build_presheaf(two, {"C0": ["b"], "C1": []}, {"u": {}})
        f = build_psh_map(B, A, {"C0": {"b": "*"}, "C1": {}})
        hat = hat_construction(f)
        assert hat.fiber(("C1", "*")) == (("u", "b"),)
        assert hat.fiber(("C0", "*")) == (("id_C0", "b"),)

    def test_over_terminal_category(self):
        cat = terminal_category()
        A = build_presheaf(cat, {"*": ["leaf", "node"]}, {})
        B = build_presheaf(cat, {"*": ["l", "r"]}, {})
        f = build_psh_map(B, A, {"*": {"l": "node", "r": "node"}})
        hat = hat_construction(f)
        assert len(hat.labels) == 2
        assert [len(hat.fiber(lab)) for lab in hat.labels] == [0, 2]

    def test_empty_b(self, two):
        A = build_presheaf(two, {"C0": ["p", "q"], "C1": ["r"]}, {"u": {"r": "p"}})
        B = build_presheaf(two, {"C0": [], "C1": []}, {"u": {}})
        hat = hat_construction(build_psh_map(B, A, {}))
        assert all(hat.fiber(lab) == () for lab in hat.labels)


# ---------------------------------------------------------------------------
# Restriction and rank
# ---------------------------------------------------------------------------


class TestRestrictTree:
    def test_identity(self, running_example):
        hat = hat_construction(running_example)
        w = _c_over(Z)
        assert restrict_tree(hat, w, "id_C1") == w

    def test_running_example_formula(self, running_example):
        hat = hat_construction(running_example)
        w2 = _c_over(Z)
        assert restrict_tree(hat, w2, "u") == WTree(("C0", "s"), ((("id_C0", "b"), Z),))
        assert psh_rank(w2) == 1
        assert psh_rank(restrict_tree(hat, w2, "u")) == 1

    def test_target_mismatch(self, running_example):
        hat = hat_construction(running_example)
        with pytest.raises(TargetMismatch):
            restrict_tree(hat, Z, "u")

    def test_strict_rank_drop(self):
        # C0 -u-> C1 <-v- C2; the node over C1 only has a child along v
        cat = cospan_category()
        A = build_presheaf(
            cat, {"C0": ["*"], "C1": ["c"], "C2": ["s", "z"]},
            {"u": {"c": "*"}, "v": {"c": "s"}},
        )
        B = build_presheaf(cat, {"C0": [], "C1": [], "C2": ["b"]}, {"u": {}, "v": {}})
        f = build_psh_map(B, A, {"C2": {"b": "s"}})
        hat = hat_construction(f)
        w = WTree(("C1", "c"), ((("v", "b"), WTree(("C2", "z"))),))
        assert is_hereditarily_natural(hat, w)
        restricted = restrict_tree(hat, w, "u")
        assert restricted == WTree(("C0", "*"))
        assert psh_rank(restricted) < psh_rank(w)


# ---------------------------------------------------------------------------
# Naturality classification
# ---------------------------------------------------------------------------


class TestNaturalityStatus:
    def test_leaf(self, running_example):
        assert naturality_status(hat_construction(running_example), Z) == "hereditarily-natural"

    def test_child_over_wrong_object(self, running_example):
        hat = hat_construction(running_example)
        w = _c_over(_c_over(Z))
        assert naturality_status(hat, w) == "not-composable"

    def test_root_not_natural(self, arrow_with_leaves):
        hat = hat_construction(arrow_with_leaves)
        y, z = WTree(("C1", "y")), WTree(("C0", "z"))
        n0 = WTree(("C0", "*"), ((("id_C0", "b0"), z), (("id_C0", "b1"), z)))
        assert naturality_status(hat, n0) == "hereditarily-natural"
        bad = WTree(("C1", "*"), ((("id_C1", "e"), y), (("u", "b0"), n0), (("u", "b1"), z)))
        assert naturality_status(hat, bad) == "composable-not-natural"

    def test_natural_but_not_hereditarily(self, arrow_with_leaves):
        hat = hat_construction(arrow_with_leaves)
        y, z = WTree(("C1", "y")), WTree(("C0", "z"))
        n0 = WTree(("C0", "*"), ((("id_C0", "b0"), z), (("id_C0", "b1"), z)))
        bad = WTree(("C1", "*"), ((("id_C1", "e"), y), (("u", "b0"), n0), (("u", "b1"), z)))
        bad_u = restrict_tree(hat, bad, "u")
        assert bad_u == WTree(("C0", "*"), ((("id_C0", "b0"), n0), (("id_C0", "b1"), z)))
        root = WTree(
            ("C1", "*"), ((("id_C1", "e"), bad), (("u", "b0"), bad_u), (("u", "b1"), z))
        )
        assert naturality_status(hat, root) == "natural-not-hereditarily"


# ---------------------------------------------------------------------------
# Stages
# ---------------------------------------------------------------------------


class TestEnumeratePshStage:
    def test_running_example_sizes(self, running_example):
        chain = enumerate_psh_stage(running_example, 4)
        assert [s["C0"] for s in chain.sizes()] == [0, 1, 2, 3, 4]
        assert [s["C1"] for s in chain.sizes()] == [0, 0, 1, 2, 3]

    def test_stages_are_closed_and_natural(self, running_example):
        chain = enumerate_psh_stage(running_example, 4)
        hat = chain.hat
        top = chain.top()
        for obj, w in top.elements():
            assert is_hereditarily_natural(hat, w)
            for alpha in running_example.category.into(obj):
                r = restrict_tree(hat, w, alpha)
                assert r in top(running_example.category.src(alpha))
                assert psh_rank(r) <= psh_rank(w)

    def test_stage_equation(self, running_example):
        chain = enumerate_psh_stage(running_example, 3)
        for k in range(3):
            sup_map, unfold_map = stage_isomorphism(
                running_example, chain.stages[k], chain.stages[k + 1]
            )
            assert sup_map.target is chain.stages[k + 1]
            assert unfold_map.source is chain.stages[k + 1]

    def test_leaves_only(self, two):
        A = build_presheaf(two, {"C0": ["p", "q"], "C1": ["r"]}, {"u": {"r": "p"}})
        B = build_presheaf(two, {"C0": [], "C1": []}, {"u": {}})
        chain = enumerate_psh_stage(build_psh_map(B, A, {}), 3)
        assert chain.stabilized_at == 1
        assert chain.top().sizes() == {"C0": 2, "C1": 1}

    def test_terminal_category_matches_set_level(self):
        cat = terminal_category()
        A = build_presheaf(cat, {"*": ["a0", "a1", "a2"]}, {})
        B = build_presheaf(cat, {"*": ["m", "l", "r"]}, {})
        f = build_psh_map(B, A, {"*": {"m": "a1", "l": "a2", "r": "a2"}})
        sig = signature_from_fibers({"a0": [], "a1": ["m"], "a2": ["l", "r"]})
        psh = enumerate_psh_stage(f, 3)
        plain = enumerate_stage(sig, 3)
        assert [s["*"] for s in psh.sizes()] == plain.sizes()

    def test_bounded_hat_search_agrees(self, running_example):
        hat = hat_construction(running_example)
        everything = hat_stage_trees(hat, 3)
        assert len(everything) == 7
        natural = hereditarily_natural_part(hat, everything)
        stage = enumerate_psh_stage(running_example, 3).top()
        assert natural == {obj: stage(obj) for obj in ("C0", "C1")}
