"""Characters of abelian groups and the inner-cyclic bridge for line
arrangements."""

import pytest

from curvelink.abelian import quotient
from curvelink.curve import (
    Component,
    CurveCombinatorics,
    CycleSpec,
    SingularPoint,
    Walk,
)
from curvelink.invariant import (
    Character,
    arrangement_homology,
    enumerate_characters,
    indeterminacy_subgroup,
    inner_cyclic_equivalence_check,
    is_inner_cyclic,
    lift_character,
    restrict_character,
)


def tangent_analogue():
    """Degree-1 stand-in for the tangent-cubic data: one line a carrying two
    order-3 contact points with lines D1, D2.  Not realizable by honest
    lines; used with intersection validation off."""
    return CurveCombinatorics(
        [Component("a", 1, 0), Component("D1", 1, 0), Component("D2", 1, 0)],
        [SingularPoint("Q1", ["a", "D1"], {("a", "D1"): 3}),
         SingularPoint("Q2", ["a", "D2"], {("a", "D2"): 3})],
    )


def triangle_arrangement(extra_points=()):
    comps = [Component("a", 1, 0), Component("b", 1, 0), Component("c", 1, 0)]
    points = [SingularPoint("P", ["a", "b"], {("a", "b"): 1}),
              SingularPoint("Q", ["b", "c"], {("b", "c"): 1}),
              SingularPoint("R", ["a", "c"], {("a", "c"): 1})]
    for name, host, order in extra_points:
        comps.append(Component(name, 1, 0))
        points.append(SingularPoint(f"S{name}", [host, name],
                                    {(host, name): order}))
    return CurveCombinatorics(comps, points)


TRIANGLE_WALK = Walk(["P", "a", "R", "c", "Q", "b"])


def triangle_cycle(arrangement):
    return CycleSpec("gamma", TRIANGLE_WALK, arrangement, {}, {})


def test_character_validation():
    g = quotient(2, [[1, 1]])
    Character(g, 3, [1, 2])
    with pytest.raises(ValueError):
        Character(g, 3, [1, 1])
    with pytest.raises(ValueError):
        Character(g, 3, [1])


def test_character_enumeration_of_finite_group():
    g = quotient(2, [[1, 1], [3, 0], [0, 3]])  # Z3
    chars = list(enumerate_characters(g))
    assert len(chars) == 3
    assert sum(1 for c in chars if c.is_trivial()) == 1
    assert len({c.values for c in chars}) == 3
    for c in chars:
        for row in g.relations.entries:
            assert sum(r * v for r, v in zip(row, c.values)) % c.modulus == 0


def test_character_enumeration_skips_free_factors_by_default():
    g = quotient(2, [[1, 1]])  # Z
    assert [c.is_trivial() for c in enumerate_characters(g)] == [True]
    richer = list(enumerate_characters(g, free_modulus=2))
    assert len(richer) == 2
    assert any(not c.is_trivial() for c in richer)


def test_character_evaluate_and_order():
    g = quotient(2, [[1, 1], [3, 0], [0, 3]])
    xi = Character(g, 3, [1, 2])
    assert xi.evaluate(g.element([1, 0])) == 1
    assert xi.evaluate(g.element([1, 1])) == 0
    assert xi.order() == 3


def test_trivial_character_is_inner_cyclic():
    arrangement = triangle_arrangement()
    xi = Character(arrangement_homology(arrangement), 1, [0, 0, 0])
    assert is_inner_cyclic(arrangement, xi, TRIANGLE_WALK)
    assert is_inner_cyclic(arrangement, xi, Walk(["a"]))


def test_character_nonzero_on_walk_line_fails():
    arrangement = tangent_analogue()
    h1 = arrangement_homology(arrangement)
    xi = Character(h1, 3, [1, 1, 1])   # nonzero on the support line a
    assert not is_inner_cyclic(arrangement, xi, Walk(["a"]))


def test_tangent_analogue_order3_character_is_inner_cyclic():
    # Quotient of the analogue data: <x1, x2 | x1+x2, 3x1, 3x2> = Z3.
    arrangement = tangent_analogue()
    q = quotient(2, [[1, 1], [3, 0], [0, 3]])
    assert q.decomposition() == "Z3"
    witness = next(c for c in enumerate_characters(q) if not c.is_trivial())
    assert witness.order() == 3
    lifted = Character(arrangement_homology(arrangement), witness.modulus,
                       [0, *witness.values])
    assert is_inner_cyclic(arrangement, lifted, Walk(["a"]))


def test_condition_two_kills_lines_through_visited_points():
    # A line through a visited point must vanish, whatever the quotient says.
    arrangement = CurveCombinatorics(
        [Component("a", 1, 0), Component("b", 1, 0), Component("c", 1, 0),
         Component("D", 1, 0), Component("E", 1, 0)],
        [SingularPoint("P", ["a", "b", "D"],
                       {("a", "b"): 1, ("a", "D"): 1, ("b", "D"): 1}),
         SingularPoint("Q", ["b", "c"], {("b", "c"): 1}),
         SingularPoint("R", ["a", "c"], {("a", "c"): 1}),
         SingularPoint("S", ["c", "E"], {("c", "E"): 3})],
    )
    h1 = arrangement_homology(arrangement)
    xi = Character(h1, 3, [0, 0, 0, 1, 2])   # zero on the walk lines a, b, c
    assert not is_inner_cyclic(arrangement, xi, TRIANGLE_WALK)


def test_inner_cyclic_rejects_non_arrangement(tangent_cubic_doc):
    doc = tangent_cubic_doc
    with pytest.raises(ValueError):
        arrangement_homology(doc.curve)
    with pytest.raises(ValueError):
        inner_cyclic_equivalence_check(doc.curve, doc.cycles["gamma"])


def test_equivalence_check_z3_quotient():
    # Triangle walk with two order-3 attachments: quotient Z3, and an
    # order-3 witness character must exist.
    arrangement = triangle_arrangement([("D1", "a", 3), ("D2", "b", 3)])
    cycle = triangle_cycle(arrangement)
    ctx = indeterminacy_subgroup(arrangement, cycle)
    assert ctx.quotient.decomposition() == "Z3"
    result = inner_cyclic_equivalence_check(arrangement, cycle)
    assert result.nontrivial_quotient
    assert result.witness is not None
    assert result.witness.order() == 3
    assert result.search_complete


def test_equivalence_check_trivial_quotient():
    arrangement = triangle_arrangement([("D1", "a", 1)])
    cycle = triangle_cycle(arrangement)
    ctx = indeterminacy_subgroup(arrangement, cycle)
    assert ctx.quotient.is_trivial()
    result = inner_cyclic_equivalence_check(arrangement, cycle)
    assert not result.nontrivial_quotient
    assert result.witness is None


def test_equivalence_check_z2_quotient():
    arrangement = triangle_arrangement([("D1", "a", 2), ("D2", "b", 4)])
    cycle = triangle_cycle(arrangement)
    ctx = indeterminacy_subgroup(arrangement, cycle)
    assert ctx.quotient.decomposition() == "Z2"
    result = inner_cyclic_equivalence_check(arrangement, cycle)
    assert result.nontrivial_quotient
    assert result.witness is not None
    assert result.witness.order() == 2


def test_equivalence_on_generated_small_arrangements(rng):
    """Random triangle-walk arrangements with off-walk lines attached at
    non-visited points: quotient nontriviality must coincide with the
    existence of a nontrivial inner-cyclic character (the check raises on
    any discrepancy)."""
    seen_nontrivial = 0
    seen_trivial = 0
    for _ in range(50):
        extras = []
        for k in range(rng.randint(0, 3)):
            extras.append((f"D{k}", rng.choice(["a", "b", "c"]),
                           rng.randint(1, 4)))
        arrangement = triangle_arrangement(extras)
        cycle = triangle_cycle(arrangement)
        result = inner_cyclic_equivalence_check(arrangement, cycle)
        if result.nontrivial_quotient:
            seen_nontrivial += 1
            if result.search_complete:
                assert result.witness is not None
        else:
            seen_trivial += 1
            assert result.witness is None
    assert seen_nontrivial > 0
    assert seen_trivial > 0


def test_lift_and_restrict_are_inverse():
    arrangement = triangle_arrangement([("D1", "a", 3), ("D2", "b", 3)])
    cycle = triangle_cycle(arrangement)
    ctx = indeterminacy_subgroup(arrangement, cycle)
    result = inner_cyclic_equivalence_check(arrangement, cycle)
    xi = result.witness
    xi_star = restrict_character(xi, ctx)
    assert lift_character(xi_star, ctx) == xi
    # the bridge value: the quotient character evaluated on a cycle class
    gamma_class = ctx.to_quotient(ctx.h1_complement.element([1, -1]))
    assert xi_star.evaluate(gamma_class) in (1, 2)


def test_restrict_rejects_character_nonzero_on_support():
    arrangement = triangle_arrangement([("D1", "a", 3), ("D2", "b", 3)])
    cycle = triangle_cycle(arrangement)
    ctx = indeterminacy_subgroup(arrangement, cycle)
    h1 = arrangement_homology(arrangement)
    xi = Character(h1, 3, [1, 2, 0, 0, 0])
    with pytest.raises(ValueError):
        restrict_character(xi, ctx)
