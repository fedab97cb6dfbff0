"""Curve combinatorics, incidence graphs, walks, supports, automorphisms."""

import pytest

from curvelink.braid import BraidWord, CYCLE, StrandLabeling, closure_components
from curvelink.curve import (
    Component,
    CurveCombinatorics,
    CycleRealization,
    CycleSpec,
    IncidenceGraph,
    SingularPoint,
    Walk,
    combinatorial_automorphisms,
    combinatorial_isomorphisms,
    incidence_graph,
    is_contractible,
    supports,
    validate_bezout,
)

from oracles import contractible_by_cycle_space


def tangent_cubic():
    return CurveCombinatorics(
        [Component("C", 3, 1), Component("T1", 1, 0), Component("T2", 1, 0)],
        [SingularPoint("Q1", ["C", "T1"], {("C", "T1"): 3}),
         SingularPoint("Q2", ["C", "T2"], {("C", "T2"): 3})],
    )


def c7():
    comps = [Component("C", 3, 1)] + [Component(f"L{k}", 1, 0) for k in range(7)]
    points = [SingularPoint(f"P{k}", ["C", f"L{k}"], {("C", f"L{k}"): 3})
              for k in range(7)]
    return CurveCombinatorics(comps, points)


def two_handled_pair():
    # Two components meeting in two points: the incidence graph is a 4-cycle.
    return CurveCombinatorics(
        [Component("A", 2, 0), Component("B", 2, 0)],
        [SingularPoint("P", ["A", "B"], {("A", "B"): 2}),
         SingularPoint("Q", ["A", "B"], {("A", "B"): 2})],
    )


def test_incidence_graph_tangent_cubic():
    g = incidence_graph(tangent_cubic())
    assert g.component_vertices == ("C", "T1", "T2")
    assert g.point_vertices == ("Q1", "Q2")
    assert len(g.edges) == 4


def test_incidence_graph_single_smooth_component():
    g = incidence_graph(CurveCombinatorics([Component("C", 3, 1)]))
    assert g.component_vertices == ("C",)
    assert g.point_vertices == ()
    assert len(g.edges) == 0


def test_incidence_graph_c7_counts():
    g = incidence_graph(c7())
    assert len(g.component_vertices) == 8
    assert len(g.point_vertices) == 7
    assert len(g.edges) == 14


def test_curve_validation():
    with pytest.raises(ValueError):
        CurveCombinatorics([Component("C", 3, 1), Component("C", 1, 0)])
    with pytest.raises(ValueError):
        CurveCombinatorics([Component("C", 3, 1)],
                           [SingularPoint("P", ["X"])])
    with pytest.raises(ValueError):
        Component("C", 0, 0)
    with pytest.raises(ValueError):
        SingularPoint("P", ["A", "B"], {("A", "B"): 0})


def test_single_vertex_walk_is_contractible():
    g = incidence_graph(tangent_cubic())
    assert is_contractible(Walk(["C"]), g)


def test_backtrack_walk_is_contractible():
    g = incidence_graph(tangent_cubic())
    assert is_contractible(Walk(["Q1", "C"]), g)
    assert is_contractible(Walk(["Q1", "C", "Q2", "C"]), g)


def test_graph_cycle_walk_is_not_contractible():
    g = incidence_graph(two_handled_pair())
    walk = Walk(["P", "A", "Q", "B"])
    assert not is_contractible(walk, g)
    assert not contractible_by_cycle_space(walk.vertices, g.edges)


def test_walk_validation():
    g = incidence_graph(tangent_cubic())
    with pytest.raises(ValueError):
        is_contractible(Walk(["C", "T1"]), g)       # not an edge
    with pytest.raises(ValueError):
        is_contractible(Walk(["Q1", "C", "Q2"]), g)  # odd closed walk
    with pytest.raises(ValueError):
        is_contractible(Walk(["nope"]), g)


def _random_bipartite(rng):
    n_left = rng.randint(2, 5)
    n_right = rng.randint(2, 5)
    comps = [Component(f"c{i}", 1, 0) for i in range(n_left)]
    points = []
    for j in range(n_right):
        incident = sorted({f"c{rng.randrange(n_left)}"
                           for _ in range(rng.randint(1, 3))})
        points.append(SingularPoint(f"p{j}", incident))
    return CurveCombinatorics(comps, points)


def _random_closed_walk(rng, graph, max_len):
    starts = [v for v in graph.point_vertices
              if any(graph.adjacent(v, c) for c in graph.component_vertices)]
    if not starts:
        return None
    all_vertices = graph.component_vertices + graph.point_vertices
    for _ in range(60):
        v0 = rng.choice(starts)
        walk = [v0]
        v = v0
        for _ in range(max_len - 1):
            neighbors = [u for u in all_vertices if graph.adjacent(v, u)]
            if not neighbors:
                break
            v = rng.choice(neighbors)
            walk.append(v)
        # keep it when it closes up: even length, last vertex adjacent to v0
        if len(walk) >= 2 and len(walk) % 2 == 0 and graph.adjacent(walk[-1], v0):
            return Walk(walk)
    return None


def test_contractibility_matches_cycle_space_oracle_on_short_walks(rng):
    # Homology and homotopy agree on walks of length <= 12 over graphs this
    # small: the shortest null-homologous non-contractible walk (a
    # commutator) needs length 16.
    agreements = 0
    while agreements < 120:
        curve = _random_bipartite(rng)
        graph = incidence_graph(curve)
        walk = _random_closed_walk(rng, graph, rng.choice([2, 4, 6, 8, 10, 12]))
        if walk is None:
            continue
        assert is_contractible(walk, graph) == \
            contractible_by_cycle_space(walk.vertices, graph.edges)
        agreements += 1


def test_walk_equality_up_to_rotation():
    assert Walk(["P", "A", "Q", "B"]) == Walk(["Q", "B", "P", "A"])
    assert Walk(["P", "A", "Q", "B"]) != Walk(["P", "B", "Q", "A"])


def _trivial_realizations(ids):
    braid = BraidWord(3)
    labeling = StrandLabeling(closure_components(braid),
                              {"s1": "T2", "s2": CYCLE, "s3": "T1"})
    return {i: CycleRealization(braid=braid, labeling=labeling) for i in ids}


def cubic_cycle(curve):
    return CycleSpec("gamma", Walk(["C"]), curve,
                     {"C": ("g1", "g2")}, _trivial_realizations(["g1", "g2"]))


def test_supports_tangent_cubic():
    curve = tangent_cubic()
    support, complement = supports(cubic_cycle(curve), curve)
    assert support == {"C"}
    assert complement == ("T1", "T2")


def test_supports_c7():
    curve = c7()
    support, complement = supports(cubic_cycle(curve), curve)
    assert support == {"C"}
    assert complement == tuple(f"L{k}" for k in range(7))


def test_supports_full_walk_has_empty_complement():
    curve = two_handled_pair()
    spec = CycleSpec("gamma", Walk(["P", "A", "Q", "B"]), curve, {}, {})
    support, complement = supports(spec, curve)
    assert support == {"A", "B"}
    assert complement == ()


def test_cycle_spec_validation():
    curve = tangent_cubic()
    with pytest.raises(ValueError):
        # wrong number of basis cycles for a genus-1 component
        CycleSpec("gamma", Walk(["C"]), curve, {"C": ("g1",)},
                  _trivial_realizations(["g1"]))
    with pytest.raises(ValueError):
        # declared support inconsistent with the walk
        CycleSpec("gamma", Walk(["C"]), curve, {"C": ("g1", "g2")},
                  _trivial_realizations(["g1", "g2"]),
                  declared_support=["C", "T1"])
    with pytest.raises(ValueError):
        # single genus-0 component cannot support a nontrivial cycle
        CycleSpec("gamma", Walk(["T1"]), curve, {}, {})
    with pytest.raises(ValueError):
        # basis cycle without realization
        CycleSpec("gamma", Walk(["C"]), curve, {"C": ("g1", "g2")},
                  _trivial_realizations(["g1"]))


def test_automorphisms_tangent_cubic():
    curve = tangent_cubic()
    autos = combinatorial_automorphisms(curve, fixed=["C"])
    assert len(autos) == 2
    swaps = [a for a in autos if a["T1"] == "T2"]
    assert len(swaps) == 1


def test_automorphisms_c56_is_s5():
    curve = c7().delete_components(["L5", "L6"])
    autos = combinatorial_automorphisms(curve, fixed=["C"])
    assert len(autos) == 120


def test_automorphisms_distinct_degrees_identity_only():
    curve = CurveCombinatorics(
        [Component("A", 1, 0), Component("B", 2, 0), Component("D", 3, 0)],
        [SingularPoint("P", ["A", "B"], {("A", "B"): 2}),
         SingularPoint("Q", ["B", "D"], {("B", "D"): 6}),
         SingularPoint("R", ["A", "D"], {("A", "D"): 3})],
    )
    autos = combinatorial_automorphisms(curve)
    assert autos == [{"A": "A", "B": "B", "D": "D"}]


def test_automorphisms_respect_local_linking():
    # Two lines tangent to the cubic with different local orders cannot swap.
    curve = CurveCombinatorics(
        [Component("C", 3, 1), Component("T1", 1, 0), Component("T2", 1, 0)],
        [SingularPoint("Q1", ["C", "T1"], {("C", "T1"): 3}),
         SingularPoint("Q2", ["C", "T2"], {("C", "T2"): 2}),
         SingularPoint("Q3", ["C", "T2"], {("C", "T2"): 1})],
    )
    autos = combinatorial_automorphisms(curve, fixed=["C"])
    assert autos == [{"C": "C", "T1": "T1", "T2": "T2"}]


def test_automorphisms_form_a_group(rng):
    curve = c7().delete_components(["L5", "L6"])
    autos = combinatorial_automorphisms(curve, fixed=["C"])
    as_set = {tuple(sorted(a.items())) for a in autos}
    for _ in range(30):
        f = rng.choice(autos)
        g = rng.choice(autos)
        composed = {k: g[f[k]] for k in f}
        assert tuple(sorted(composed.items())) in as_set
        inverse = {v: k for k, v in f.items()}
        assert tuple(sorted(inverse.items())) in as_set


def test_isomorphisms_between_different_deletions():
    a = c7().delete_components(["L5", "L6"])
    b = c7().delete_components(["L1", "L3"])
    isos = combinatorial_isomorphisms(a, b, {"C": "C"})
    assert len(isos) == 120
    assert all(m["C"] == "C" for m in isos)
    lines_b = {"L0", "L2", "L4", "L5", "L6"}
    assert all(set(m.values()) == lines_b | {"C"} for m in isos)


def test_bezout_validation():
    outcome = validate_bezout(tangent_cubic())
    assert ("C", "T1", 3) in outcome["checked"]
    assert ("T1", "T2") in outcome["skipped"]

    bad = CurveCombinatorics(
        [Component("C", 3, 1), Component("T1", 1, 0)],
        [SingularPoint("Q1", ["C", "T1"], {("C", "T1"): 2})],
    )
    with pytest.raises(ValueError):
        validate_bezout(bad)


def test_bezout_on_both_bundled_fixtures(tangent_cubic_doc, c7_doc):
    for doc in (tangent_cubic_doc, c7_doc):
        outcome = validate_bezout(doc.curve)
        for _, _, total in outcome["checked"]:
            assert total == 3


def test_delete_components():
    derived = c7().delete_components(["L5", "L6"])
    assert derived.component_names == ("C", "L0", "L1", "L2", "L3", "L4")
    assert len(derived.singular_points) == 5
    with pytest.raises(ValueError):
        c7().delete_components(["nope"])
