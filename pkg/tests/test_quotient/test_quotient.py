"""Tests for quotient: pseudo-equivalence relations, Aczel quotients and the HF oracle."""

import pytest

from mtype import bisimilar, build_coalgebra
from quotient import (
    ConditionFailed,
    aczel_bisimilar,
    afa_classes,
    bisimulation_relation,
    check_pseudo_eqrel,
    count_bisimulation_proofs,
    denotation,
    extensional_quotient,
    hf_sets,
    mediating_map,
    quotient_by_pseudo_eqrel,
    render_hf,
    witnesses_by_search,
)
from shared.fincat import (
    PshMap,
    build_presheaf,
    build_psh_map,
    compose_maps,
    identity_map,
    maps_equal,
    natural_maps,
    product,
    terminal_category,
)
from shared.poly import arity_signature, signature_from_fibers
from wtree import WTree, enumerate_stage, sup

ARITY012 = arity_signature(0, 1, 2, name="arity012")
ARITY0123 = arity_signature(0, 1, 2, 3, name="arity0123")
LEAF = WTree("a0")


@pytest.fixture
def point():
    return terminal_category()


@pytest.fixture
def abc(point):
    return build_presheaf(point, {"*": ["a", "b", "c"]}, {}, name="Y")


def relation(Y, pairs, name="R"):
    """A span R -> Y given by elements (x, y, tag) with s = x and t = y."""
    R = build_presheaf(Y.category, {"*": list(pairs)}, {}, name=name)
    s = build_psh_map(R, Y, {"*": {r: r[0] for r in pairs}}, name="s")
    t = build_psh_map(R, Y, {"*": {r: r[1] for r in pairs}}, name="t")
    return s, t


# ---------------------------------------------------------------------------
# Pseudo-equivalence relations
# ---------------------------------------------------------------------------


class TestCheckPseudoEqRel:
    def test_diagonal(self, abc):
        diag = [(y, y, 0) for y in "abc"]
        s, t = relation(abc, diag)
        rel = check_pseudo_eqrel(
            s, t,
            {"*": {y: (y, y, 0) for y in "abc"}},
            identity_map(s.source),
            {"*": {(r, r): r for r in diag}},
        )
        classes, q = quotient_by_pseudo_eqrel(rel)
        assert len(classes["*"].carrier) == 3
        assert q.target.sizes() == {"*": 3}

    def test_total_relation(self, abc):
        YY, p1, p2 = product(abc, abc)
        rel = check_pseudo_eqrel(
            p1, p2,
            {"*": {y: (y, y) for y in "abc"}},
            {"*": {(x, y): (y, x) for x, y in YY("*")}},
            {"*": {((x, y), (y2, z)): (x, z) for (x, y) in YY("*") for (y2, z) in YY("*")
                   if y == y2}},
        )
        classes, _ = quotient_by_pseudo_eqrel(rel)
        assert classes["*"].classes() == [["a", "b", "c"]]

    def test_missing_symmetry(self, abc):
        pairs = [(y, y, 0) for y in "abc"] + [("a", "b", 0)]
        s, t = relation(abc, pairs)
        with pytest.raises(ConditionFailed) as exc:
            check_pseudo_eqrel(
                s, t,
                {"*": {y: (y, y, 0) for y in "abc"}},
                identity_map(s.source),
                {"*": {}},
            )
        assert exc.value.condition == 2
        with pytest.raises(ConditionFailed) as exc:
            witnesses_by_search(s, t)
        assert exc.value.condition == 2

    def test_bad_reflexivity_witness(self, abc):
        diag = [(y, y, 0) for y in "abc"]
        s, t = relation(abc, diag)
        with pytest.raises(ConditionFailed) as exc:
            check_pseudo_eqrel(
                s, t,
                {"*": {"a": ("b", "b", 0), "b": ("b", "b", 0), "c": ("c", "c", 0)}},
                identity_map(s.source),
                {"*": {(r, r): r for r in diag}},
            )
        assert exc.value.condition == 1


class TestQuotient:
    def test_one_pair_with_duplicate_proofs(self, abc):
        pairs = [(y, y, 0) for y in "abc"] + [
            ("a", "b", 0), ("a", "b", 1), ("b", "a", 0),
        ]
        s, t = relation(abc, pairs)
        rel = witnesses_by_search(s, t)
        classes, q = quotient_by_pseudo_eqrel(rel)
        assert classes["*"].classes() == [["a", "b"], ["c"]]
        assert q("*", "b") == "a"
        assert classes["*"].to_json() == {
            "classes": [["a", "b"], ["c"]],
            "representatives": ["a", "c"],
        }

    def test_total_relation_on_connected_presheaf(self, two):
        Y = build_presheaf(two, {"C0": ["s", "z"], "C1": ["c"]}, {"u": {"c": "s"}}, name="A")
        _, p1, p2 = product(Y, Y)
        rel = witnesses_by_search(p1, p2)
        _, q = quotient_by_pseudo_eqrel(rel)
        assert q.target.sizes() == {"C0": 1, "C1": 1}

    def test_restriction_descends(self, two):
        Y = build_presheaf(
            two, {"C0": ["p", "q", "r"], "C1": ["x", "y"]}, {"u": {"x": "p", "y": "q"}}
        )
        # relate x ~ y, hence p ~ q must follow below
        R = build_presheaf(
            two,
            {"C0": [(v, v) for v in "pqr"] + [("p", "q"), ("q", "p")],
             "C1": [(v, v) for v in "xy"] + [("x", "y"), ("y", "x")]},
            {"u": {("x", "x"): ("p", "p"), ("y", "y"): ("q", "q"),
                   ("x", "y"): ("p", "q"), ("y", "x"): ("q", "p")}},
        )
        s = build_psh_map(R, Y, {o: {r: r[0] for r in R(o)} for o in ("C0", "C1")})
        t = build_psh_map(R, Y, {o: {r: r[1] for r in R(o)} for o in ("C0", "C1")})
        _, q = quotient_by_pseudo_eqrel(witnesses_by_search(s, t))
        assert q.target.sizes() == {"C0": 2, "C1": 1}
        assert q.target.act(q("C1", "y"), "u") == q("C0", "q")

    def test_coequalizer_property(self, abc, point):
        pairs = [(y, y, 0) for y in "abc"] + [("a", "b", 0), ("b", "a", 0)]
        s, t = relation(abc, pairs)
        rel = witnesses_by_search(s, t)
        _, q = quotient_by_pseudo_eqrel(rel)
        Z = build_presheaf(point, {"*": [0, 1]}, {})
        for comps in natural_maps(abc, Z):
            h = PshMap(abc, Z, comps)
            k = mediating_map(rel, q, h)
            coequalizes = comps["*"]["a"] == comps["*"]["b"]
            assert (k is not None) == coequalizes
            if k is not None:
                assert maps_equal(compose_maps(k, q), h)


# ---------------------------------------------------------------------------
# Aczel bisimilarity
# ---------------------------------------------------------------------------


class TestAczelBisimilar:
    def test_reflexive(self):
        w = sup(ARITY012, "a2", {0: LEAF, 1: LEAF})
        assert aczel_bisimilar(ARITY012, w, w)

    def test_arity_is_irrelevant(self):
        pair = sup(ARITY012, "a2", {0: LEAF, 1: LEAF})
        single = sup(ARITY012, "a1", {0: LEAF})
        assert aczel_bisimilar(ARITY012, pair, single)
        assert count_bisimulation_proofs(pair, single) == 2

    def test_leaf_vs_node(self):
        assert not aczel_bisimilar(ARITY012, LEAF, sup(ARITY012, "a1", {0: LEAF}))
        assert count_bisimulation_proofs(LEAF, sup(ARITY012, "a1", {0: LEAF})) == 0

    def test_equivalence_and_congruence(self):
        stage = enumerate_stage(ARITY012, 3).top().elements
        bis = {(x, y): aczel_bisimilar(ARITY012, x, y) for x in stage for y in stage}
        for x in stage:
            assert bis[(x, x)]
            for y in stage:
                assert bis[(x, y)] == bis[(y, x)]
                for z in stage:
                    if bis[(x, y)] and bis[(y, z)]:
                        assert bis[(x, z)]
        for x in stage:
            for y in stage:
                if bis[(x, y)]:
                    assert aczel_bisimilar(
                        ARITY012,
                        sup(ARITY012, "a2", {0: x, 1: LEAF}),
                        sup(ARITY012, "a2", {0: y, 1: LEAF}),
                    )

    def test_proof_cap(self):
        wide = sup(ARITY0123, "a3", {0: LEAF, 1: LEAF, 2: LEAF})
        single = sup(ARITY0123, "a1", {0: LEAF})
        assert count_bisimulation_proofs(wide, single, proof_cap=2) == 2
        assert count_bisimulation_proofs(wide, single, proof_cap=10) == 3


# ---------------------------------------------------------------------------
# Extensional quotient against the HF oracle
# ---------------------------------------------------------------------------


class TestExtensionalQuotient:
    def test_hf_oracle(self):
        assert {render_hf(x) for x in hf_sets(3, [0, 1, 2])} == {
            "{}", "{{}}", "{{{}}}", "{{{}},{}}",
        }
        assert len(hf_sets(4, [0, 1, 2])) == 11

    @pytest.mark.parametrize(
        "sig, n, trees, classes",
        [
            (ARITY012, 3, 13, 4),
            (ARITY012, 4, 183, 11),
            (ARITY0123, 3, 85, 4),
        ],
    )
    def test_counts_match_oracle(self, sig, n, trees, classes):
        quotient = extensional_quotient(sig, n)
        arities = [len(sig.fiber(a)) for a in sig.labels]
        assert len(quotient.class_of) == trees
        assert len(quotient.carrier) == classes == len(hf_sets(n, arities))

    def test_classes_are_denotations(self):
        quotient = extensional_quotient(ARITY012, 3)
        meanings = {}
        for cls in quotient.classes():
            values = {denotation(w) for w in cls}
            assert len(values) == 1
            meanings[cls[0]] = values.pop()
        assert len(set(meanings.values())) == 4

    def test_stage_zero(self):
        assert len(extensional_quotient(ARITY012, 0).carrier) == 0

    def test_leaves_only(self):
        sig = signature_from_fibers({"p": [], "q": []})
        assert len(extensional_quotient(sig, 2).carrier) == 1

    def test_parallel_matches_sequential(self):
        assert (
            extensional_quotient(ARITY012, 4, max_workers=4).class_of
            == extensional_quotient(ARITY012, 4).class_of
        )


class TestBisimulationRelation:
    def test_pseudo_relation_is_not_monic(self):
        rel = bisimulation_relation(ARITY012, 3)
        assert len(rel.R("*")) > len({(rel.s("*", r), rel.t("*", r)) for r in rel.R("*")})
        classes, _ = quotient_by_pseudo_eqrel(rel)
        assert len(classes["*"].carrier) == 4
        assert classes["*"].class_of == extensional_quotient(ARITY012, 3).class_of


# ---------------------------------------------------------------------------
# Anti-foundation classes
# ---------------------------------------------------------------------------


class TestAfaClasses:
    def test_self_membered_sets_collapse(self):
        sig = signature_from_fibers({"one": ["x"], "two": ["l", "r"], "e": []})
        c = build_coalgebra(
            sig,
            ["x", "y", "p", "e", "q"],
            {
                "x": ("one", {"x": "x"}),
                "y": ("two", {"l": "y", "r": "y"}),
                "p": ("two", {"l": "x", "r": "y"}),
                "e": ("e", {}),
                "q": ("one", {"x": "e"}),
            },
        )
        quotient = afa_classes(c)
        assert quotient.classes() == [["e"], ["p", "x", "y"], ["q"]]
        assert not bisimilar(c, "x", c, "y")
