"""Tests for poly: signatures, P_f, D_f and the presheaf polynomial functor."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shared.budget import SizeLimitExceeded
from shared.fincat import (
    FinSet,
    build_presheaf,
    build_psh_map,
    empty_presheaf,
    terminal_category,
    terminal_presheaf,
)
from shared.poly import (
    SignatureError,
    apply_dep_poly,
    apply_poly,
    apply_poly_map,
    arity_signature,
    build_dep_signature,
    build_signature,
    hat_fiber,
    presheaf_poly,
)

# ---------------------------------------------------------------------------
# Signatures
# ---------------------------------------------------------------------------


class TestSignature:
    def test_fibres_from_function(self):
        sig = build_signature(["leaf", "node"], ["l", "r"], {"l": "node", "r": "node"})
        assert sig.fiber("leaf") == ()
        assert sig.fiber("node") == ("l", "r")

    def test_function_must_be_total(self):
        with pytest.raises(SignatureError, match="not total"):
            build_signature(["node"], ["l", "r"], {"l": "node"})

    def test_value_outside_labels(self):
        with pytest.raises(SignatureError):
            build_signature(["node"], ["l"], {"l": "leaf"})

    def test_arity_signature(self):
        sig = arity_signature(0, 1, 2)
        assert [sig.arity(a) for a in sig.labels] == [0, 1, 2]


# ---------------------------------------------------------------------------
# P_f on sets
# ---------------------------------------------------------------------------


class TestApplyPoly:
    """P_f(X) has size sum |X|^|B_a| and is functorial."""

    def test_size(self):
        sig = arity_signature(0, 1, 2)
        assert len(apply_poly(sig, FinSet(("x", "y")))) == 1 + 2 + 4

    def test_size_limit(self):
        sig = arity_signature(0, 1, 2)
        with pytest.raises(SizeLimitExceeded):
            apply_poly(sig, FinSet(("x", "y")), budget=5)

    def test_map_collapses_children(self):
        sig = arity_signature(2)
        image = apply_poly_map(sig, {"x": "a", "y": "a"})
        assert set(image.values()) == {("a2", ((0, "a"), (1, "a")))}

    @given(
        u=st.lists(st.integers(0, 2), min_size=1, max_size=3),
        v=st.lists(st.integers(0, 1), min_size=3, max_size=3),
    )
    def test_functor_laws(self, u, v):
        sig = arity_signature(0, 1, 2)
        fu = dict(enumerate(u))
        fv = dict(enumerate(v))
        ident = apply_poly_map(sig, {x: x for x in fu})
        assert all(k == w for k, w in ident.items())
        composite = apply_poly_map(sig, {x: fv[y] for x, y in fu.items()})
        pu = apply_poly_map(sig, fu)
        pv = apply_poly_map(sig, fv)
        assert all(composite[e] == pv[pu[e]] for e in composite)


class TestDependentPoly:
    """D_f(X)_c only contains labels over c, with children from X_h(b)."""

    def test_typed_children(self):
        dsig = build_dep_signature(
            C=["c1", "c2"],
            A=["leaf", "node"],
            B=["x"],
            f={"x": "node"},
            h={"x": "c1"},
            g={"leaf": "c1", "node": "c2"},
        )
        out = apply_dep_poly(dsig, {"c1": FinSet(("p", "q")), "c2": FinSet(("r",))})
        assert len(out["c1"]) == 1
        assert len(out["c2"]) == 2
        assert ("node", (("x", "p"),)) in out["c2"]

    def test_g_must_be_total(self):
        with pytest.raises(SignatureError):
            build_dep_signature(["c"], ["a"], [], {}, {}, {})


# ---------------------------------------------------------------------------
# P_f on presheaves
# ---------------------------------------------------------------------------


class TestPresheafPoly:
    def test_agrees_with_sets_over_terminal_category(self):
        cat = terminal_category()
        A = build_presheaf(cat, {"*": ["leaf", "node"]}, {})
        B = build_presheaf(cat, {"*": ["l", "r"]}, {})
        f = build_psh_map(B, A, {"*": {"l": "node", "r": "node"}})
        X = build_presheaf(cat, {"*": ["x", "y"]}, {})
        sig = build_signature(["leaf", "node"], ["l", "r"], {"l": "node", "r": "node"})
        assert presheaf_poly(f, X).sizes() == {"*": len(apply_poly(sig, FinSet(("x", "y"))))}

    def test_running_example_fibres(self, running_example):
        assert hat_fiber(running_example, "C0", "z") == ()
        assert hat_fiber(running_example, "C0", "s") == (("id_C0", "b"),)
        assert hat_fiber(running_example, "C1", "c") == (("u", "b"),)

    def test_running_example_on_empty_and_terminal(self, running_example, two):
        assert presheaf_poly(running_example, empty_presheaf(two)).sizes() == {"C0": 1, "C1": 0}
        P = presheaf_poly(running_example, terminal_presheaf(two))
        assert P.sizes() == {"C0": 2, "C1": 1}
        node = ("c", ((("u", "b"), "*"),))
        assert P.act(node, "u") == ("s", ((("id_C0", "b"), "*"),))

    def test_running_example_result_is_a_presheaf(self, running_example, two):
        X = build_presheaf(two, {"C0": ["x", "y"], "C1": ["w"]}, {"u": {"w": "x"}})
        for Y in (X, terminal_presheaf(two), empty_presheaf(two)):
            P = presheaf_poly(running_example, Y)
            rebuilt = build_presheaf(P.category, P.at, P.restrict)
            assert rebuilt.sizes() == P.sizes()

    def test_random_signature_result_is_a_presheaf(self, two, rng):
        X = build_presheaf(two, {"C0": ["x", "y"], "C1": ["w"]}, {"u": {"w": "x"}})
        for _ in range(6):
            A0 = [f"a{i}" for i in range(rng.randint(1, 3))]
            A1 = [f"c{j}" for j in range(rng.randint(0, 2))]
            A = build_presheaf(
                two, {"C0": A0, "C1": A1}, {"u": {c: rng.choice(A0) for c in A1}}
            )
            f0 = {f"b{i}": rng.choice(A0) for i in range(rng.randint(0, 2))}
            f1, Bu = {}, {}
            for j in range(rng.randint(0, 2) if A1 else 0):
                c = rng.choice(A1)
                f1[f"e{j}"] = c
                # e.u lies over c.u
                f0[f"be{j}"] = A.act(c, "u")
                Bu[f"e{j}"] = f"be{j}"
            B = build_presheaf(two, {"C0": list(f0), "C1": list(f1)}, {"u": Bu})
            f = build_psh_map(B, A, {"C0": f0, "C1": f1})
            P = presheaf_poly(f, X)
            rebuilt = build_presheaf(P.category, P.at, P.restrict)
            assert rebuilt.sizes() == P.sizes()
            assert P.sizes()["C0"] >= len(A0)
