"""Tests for sset: cells, lifting problems, Kan checks, transport and dependent products."""

import pytest

from pshw import enumerate_psh_stage
from shared.fincat import (
    FinSet,
    PshMap,
    build_psh_map,
    coproduct,
    identity_map,
    maps_equal,
    natural_maps,
    presheaf_from_action,
    product,
)
from sset import (
    DimensionOutOfRange,
    SimplicialError,
    SquareNotCommuting,
    TransportFailed,
    adjunction_counts,
    build_lifting_problem,
    chain_union_map,
    dependent_product,
    dim_of,
    discrete_sset,
    epi_triangle,
    eqrel_data,
    filler_transport,
    generate_cell,
    global_sections,
    horn_squares,
    indiscrete_nerve,
    kan_check_upto,
    kernel_pair,
    nondegenerate,
    solve_lifting,
    stage_map,
    standard_simplex,
    transport_kan_check,
    verify_filler,
    yoneda_filler,
    yoneda_map,
)


def to_point(X, point):
    """The unique map X -> Delta[0]."""
    return build_psh_map(
        X, point, {obj: {x: (0,) * (dim_of(obj) + 1) for x in X(obj)} for obj in X.category.objects}
    )


def vertex_map(source, target, values):
    """The simplicial map induced by a vertex function, on simplices of source."""
    return PshMap(
        source, target,
        {obj: {a: tuple(values[i] for i in a) for a in source(obj)}
         for obj in source.category.objects},
    )


def nondegenerate_count(X, N):
    return sum(len(nondegenerate(X, n)) for n in range(N + 1))


# ---------------------------------------------------------------------------
# Cells
# ---------------------------------------------------------------------------


class TestGenerateCell:
    def test_point(self):
        cell = generate_cell("simplex", 0, N=2)
        assert cell.cell.sizes() == {"[0]": 1, "[1]": 1, "[2]": 1}
        assert nondegenerate_count(cell.cell, 2) == 1

    def test_horn_has_five_nondegenerate_simplices(self):
        cell = generate_cell("horn", 2, 1, N=2)
        assert sorted(nondegenerate(cell.cell, 0)) == [(0,), (1,), (2,)]
        assert sorted(nondegenerate(cell.cell, 1)) == [(0, 1), (1, 2)]
        assert nondegenerate_count(cell.cell, 2) == 5

    def test_boundary_of_interval_is_two_points(self):
        cell = generate_cell("boundary", 1, N=2)
        two_points, _, _ = coproduct(standard_simplex(2, 0), standard_simplex(2, 0))
        assert cell.cell.sizes() == two_points.sizes()
        assert nondegenerate(cell.cell, 1) == []

    def test_vertex_map(self):
        cell = generate_cell("horn", 2, 0, N=2)
        assert cell.vertex("[0]", (0,)) == (0,)
        assert cell.vertex("[1]", (0, 0)) == (0, 0)

    @pytest.mark.parametrize(
        "kind, n, k, N",
        [("simplex", 4, None, 3), ("horn", 2, 3, 3), ("boundary", 3, None, 2)],
    )
    def test_out_of_range(self, kind, n, k, N):
        with pytest.raises(DimensionOutOfRange):
            generate_cell(kind, n, k, N=N)

    def test_horn_needs_k(self):
        with pytest.raises(SimplicialError, match="needs k"):
            generate_cell("horn", 2, N=2)


# ---------------------------------------------------------------------------
# Lifting problems
# ---------------------------------------------------------------------------


class TestSolveLifting:
    def test_identity_inclusion(self):
        point = standard_simplex(2, 0)
        Y = standard_simplex(2, 1)
        cell = generate_cell("simplex", 1, N=2)
        top = vertex_map(cell.cell, Y, (0, 1))
        problem = build_lifting_problem(
            cell.inclusion, to_point(Y, point), top, to_point(cell.ambient, point)
        )
        filler = solve_lifting(problem)
        assert filler is not None
        assert filler.d("[1]", (0, 1)) == (0, 1)

    def test_horn_into_simplex_fills_with_identity(self):
        point = standard_simplex(2, 0)
        Y = standard_simplex(2, 2)
        cell = generate_cell("horn", 2, 1, N=2)
        top = vertex_map(cell.cell, Y, (0, 1, 2))
        problem = build_lifting_problem(
            cell.inclusion, to_point(Y, point), top, to_point(cell.ambient, point)
        )
        filler = solve_lifting(problem)
        assert filler is not None
        assert filler.d("[2]", (0, 1, 2)) == (0, 1, 2)

    def test_interval_has_no_reversal(self):
        point = standard_simplex(2, 0)
        Y = standard_simplex(2, 1)
        cell = generate_cell("horn", 2, 0, N=2)
        # edge 01 to the edge, edge 02 to the degenerate edge on vertex 0
        top = vertex_map(cell.cell, Y, (0, 1, 0))
        problem = build_lifting_problem(
            cell.inclusion, to_point(Y, point), top, to_point(cell.ambient, point)
        )
        assert solve_lifting(problem) is None

    def test_square_must_commute(self):
        Y = standard_simplex(2, 2)
        cell = generate_cell("horn", 2, 1, N=2)
        top = vertex_map(cell.cell, Y, (0, 1, 2))
        bottom = vertex_map(cell.ambient, Y, (0, 0, 0))
        with pytest.raises(SquareNotCommuting):
            build_lifting_problem(cell.inclusion, identity_map(Y), top, bottom)

    @pytest.mark.parametrize("k, tops, unfillable", [(0, 5, 1), (1, 4, 0), (2, 5, 1)])
    def test_agrees_with_brute_force(self, k, tops, unfillable):
        point = standard_simplex(2, 0)
        Y = standard_simplex(2, 1)
        p = to_point(Y, point)
        cell = generate_cell("horn", 2, k, N=2)
        bottom = to_point(cell.ambient, point)
        extensions = [PshMap(cell.ambient, Y, c) for c in natural_maps(cell.ambient, Y)]
        seen = missing = 0
        for comps in natural_maps(cell.cell, Y):
            top = PshMap(cell.cell, Y, comps)
            brute = any(
                all(d(obj, a) == top(obj, a) for obj in Y.category.objects for a in cell.cell(obj))
                for d in extensions
            )
            found = solve_lifting(build_lifting_problem(cell.inclusion, p, top, bottom))
            assert (found is not None) == brute
            seen += 1
            missing += found is None
        assert (seen, missing) == (tops, unfillable)


# ---------------------------------------------------------------------------
# Kan checks
# ---------------------------------------------------------------------------


class TestKanCheck:
    def test_discrete_is_fibration(self):
        K = discrete_sset(3, [0, 1])
        report = kan_check_upto(to_point(K, standard_simplex(3, 0)), 2)
        assert report.fibration
        assert report.squares == 10
        assert report.to_json()["counterexample"] is None

    def test_identity_is_fibration(self):
        assert kan_check_upto(identity_map(standard_simplex(3, 1)), 2).fibration

    def test_interval_is_not_a_fibration(self):
        Y = standard_simplex(3, 1)
        p = to_point(Y, standard_simplex(3, 0))
        assert kan_check_upto(p, 1).fibration
        report = kan_check_upto(p, 2)
        assert not report.fibration
        bad = report.counterexample
        assert (bad.n, bad.k) == (2, 0)
        data = report.to_json()
        assert data["fibration_up_to_dim"] is False
        assert data["counterexample"]["horn"] == {"n": 2, "k": 0}
        assert data["counterexample"]["bottom"] == [0, 0, 0]
        assert solve_lifting(bad.problem) is None
        assert "not a fibration up to dimension 2" in report.summary()

    def test_parallel_report_is_deterministic(self):
        Y = standard_simplex(3, 1)
        p = to_point(Y, standard_simplex(3, 0))
        assert kan_check_upto(p, 2, max_workers=3).to_json() == kan_check_upto(p, 2).to_json()

    def test_dim_must_leave_room_for_fillers(self):
        p = identity_map(standard_simplex(2, 0))
        with pytest.raises(DimensionOutOfRange):
            kan_check_upto(p, 2)

    def test_indiscrete_nerve_is_kan(self):
        J = indiscrete_nerve(3, "ab")
        p = to_point(J, standard_simplex(3, 0))
        report = kan_check_upto(p, 2)
        assert report.fibration
        assert report.squares == 28
        for square in horn_squares(p, 2, 1):
            assert solve_lifting(square.problem) is not None


class TestStageShadow:
    @pytest.fixture
    def projection(self):
        """F x {s} -> {z, s} with F the indiscrete nerve on two points."""
        A = discrete_sset(2, ["s", "z"], name="A")
        B, _, _ = product(discrete_sset(2, ["s"]), indiscrete_nerve(2, "ab"))
        return build_psh_map(B, A, {o: {b: b[0] for b in B(o)} for o in B.category.objects})

    def test_stage_maps_are_fibrations(self, projection):
        chain = enumerate_psh_stage(projection, 3)
        assert chain.top().sizes() == {"[0]": 3, "[1]": 3, "[2]": 3}
        for stage in chain.stages[1:]:
            assert kan_check_upto(stage_map(stage, projection.target), 1).fibration

    def test_union_of_chain_is_fibration(self, projection):
        stages = enumerate_psh_stage(projection, 3).stages[1:]
        inclusions = [
            build_psh_map(a, b, {o: {w: w for w in a(o)} for o in a.category.objects})
            for a, b in zip(stages, stages[1:], strict=False)
        ]
        over = [stage_map(s, projection.target) for s in stages]
        union = chain_union_map(inclusions, over)
        assert union.source.sizes() == stages[-1].sizes()
        assert kan_check_upto(union, 1).fibration

    def test_projection_without_leaves_has_empty_stages(self):
        A = discrete_sset(2, ["s", "z"], name="A")
        _, to_A, _ = product(A, indiscrete_nerve(2, "ab"))
        stage = enumerate_psh_stage(to_A, 2).top()
        assert stage.size() == 0
        assert kan_check_upto(stage_map(stage, A), 1).fibration


# ---------------------------------------------------------------------------
# Filler transport
# ---------------------------------------------------------------------------


class TestTransport:
    def test_epi_triangle_along_isomorphism(self):
        J = indiscrete_nerve(2, "ab")
        f = to_point(J, standard_simplex(2, 0))
        tri = epi_triangle(identity_map(J), f)
        for k in range(3):
            for square in horn_squares(f, 2, k):
                transported = filler_transport("epi-triangle", tri, square)
                assert maps_equal(transported.d, yoneda_filler(square).d)

    def test_epi_triangle_through_a_product(self):
        J = indiscrete_nerve(2, "ab")
        E, _, p = product(discrete_sset(2, [0, 1]), J)
        f = to_point(J, standard_simplex(2, 0))
        tri = epi_triangle(p, f)
        report = transport_kan_check("epi-triangle", tri, 1)
        assert report.fibration
        assert report.squares == kan_check_upto(f, 1).squares
        for square in horn_squares(f, 2, 0):
            assert filler_transport("epi-triangle", tri, square).d.source is square.cell.ambient

    def test_epi_triangle_needs_surjection(self):
        Y = standard_simplex(2, 1)
        vertex = yoneda_map(Y, 0, (0,))
        with pytest.raises(SimplicialError, match="surjective"):
            epi_triangle(vertex, to_point(Y, standard_simplex(2, 0)))

    def test_eqrel_diagonal_matches_direct_filler(self):
        J = indiscrete_nerve(2, "ab")
        q = identity_map(J)
        data = kernel_pair(q)
        for k in range(2):
            for square in horn_squares(q, 1, k):
                direct = solve_lifting(square.problem)
                assert maps_equal(filler_transport("eqrel", data, square).d, direct.d)

    def test_eqrel_two_element_fibres(self):
        J = indiscrete_nerve(2, "ab")
        _, _, q = product(discrete_sset(2, [0, 1]), J)
        data = kernel_pair(q)
        squares = list(horn_squares(q, 2, 1))
        assert len(squares) == 16
        for square in squares:
            filler_transport("eqrel", data, square)
            assert solve_lifting(square.problem) is not None
        assert transport_kan_check("eqrel", data, 1).squares == kan_check_upto(q, 1).squares

    def test_eqrel_with_elements_tagged_by_level(self):
        # the same related pair is a different element of R at each level
        Y = discrete_sset(2, [0, 1])
        cat = Y.category
        q = to_point(Y, standard_simplex(2, 0))
        R = presheaf_from_action(
            cat,
            {obj: FinSet(tuple((obj, a, b) for a in (0, 1) for b in (0, 1)))
             for obj in cat.objects},
            lambda r, m: (cat.src(m), r[1], r[2]),
        )
        pi1 = build_psh_map(R, Y, {obj: {r: r[1] for r in R(obj)} for obj in cat.objects})
        pi2 = build_psh_map(R, Y, {obj: {r: r[2] for r in R(obj)} for obj in cat.objects})
        data = eqrel_data(q, pi1, pi2)
        assert kan_check_upto(q, 1).fibration
        squares = list(horn_squares(q, 1, 0))
        assert squares
        for square in squares:
            filler = filler_transport("eqrel", data, square)
            assert verify_filler(square.problem, filler.d)
        assert transport_kan_check("eqrel", data, 1).squares == kan_check_upto(q, 1).squares

    def test_failed_stage_is_reported(self):
        Y = standard_simplex(3, 1)
        q = to_point(Y, standard_simplex(3, 0))
        square = kan_check_upto(q, 2).counterexample
        with pytest.raises(TransportFailed) as exc:
            filler_transport("eqrel", kernel_pair(q), square)
        assert exc.value.stage == "delta"

    def test_mode_must_match_data(self):
        J = indiscrete_nerve(2, "ab")
        q = identity_map(J)
        square = next(horn_squares(q, 1, 0))
        with pytest.raises(TypeError):
            filler_transport("epi-triangle", kernel_pair(q), square)


# ---------------------------------------------------------------------------
# Dependent products
# ---------------------------------------------------------------------------


class TestDependentProduct:
    def test_along_identity(self):
        A = standard_simplex(1, 1)
        Z, _, z = product(discrete_sset(1, [0, 1]), A)
        pi = dependent_product(identity_map(A), z)
        assert pi.source.sizes() == Z.sizes() == {"[0]": 4, "[1]": 6}

    def test_along_fold_is_fibrewise_product(self):
        point = standard_simplex(1, 0)
        B, _, _ = coproduct(point, point)
        fold = build_psh_map(B, point, {o: {e: e[1] for e in B(o)} for o in B.category.objects})
        Z, _, _ = coproduct(discrete_sset(1, [0, 1]), standard_simplex(1, 1))
        z = build_psh_map(
            Z, B,
            {o: {e: (e[0], (0,) * (dim_of(o) + 1)) for e in Z(o)} for o in Z.category.objects},
        )
        pi = dependent_product(fold, z)
        assert pi.source.sizes() == {"[0]": 4, "[1]": 6}

    def test_adjunction_counts(self):
        A = standard_simplex(1, 1)
        B, _, f = product(discrete_sset(1, ["x", "y"]), A)
        _, _, z = product(indiscrete_nerve(1, "ab"), B)
        left, right = adjunction_counts(f, z, identity_map(A))
        assert left == right == global_sections(z) == 16
        left, right = adjunction_counts(f, z, yoneda_map(A, 0, (1,)))
        assert left == right

    def test_preserves_fibrations(self):
        point = standard_simplex(2, 0)
        B = discrete_sset(2, [0, 1])
        f = to_point(B, point)
        _, z, _ = product(B, indiscrete_nerve(2, "ab"))
        assert kan_check_upto(f, 1).fibration
        assert kan_check_upto(z, 1).fibration
        pi = dependent_product(f, z)
        assert pi.source.sizes() == {"[0]": 4, "[1]": 16, "[2]": 64}
        assert kan_check_upto(pi, 1).fibration

    def test_needs_map_over_source(self):
        A = standard_simplex(1, 1)
        with pytest.raises(SimplicialError):
            dependent_product(identity_map(A), identity_map(standard_simplex(1, 1)))
