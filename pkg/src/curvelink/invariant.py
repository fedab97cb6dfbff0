"""The linking invariant: indeterminacy subgroup, homology quotient, linking
sets, conjugation, residue-count signatures, the distinguishing test, and the
inner-cyclic bridge for line arrangements.

The pipeline for one curve-with-cycle is:

1. split the curve into the cycle's support and its complement;
2. present the first homology of the complement's exterior on one meridian
   generator per complement component, with the single relation given by the
   component degrees;
3. quotient by the indeterminacy subgroup, whose generators collect, for
   each support component D and each singular point P on D, the local
   linking numbers of the off-support components through P;
4. push the cycle and its genus-basis classes through the meridian map and
   assemble the linking set, an offset-plus-subgroup subset of the quotient.

Two curves with the same combinatorics are then compared by transporting one
linking set onto the other through every combinatorics-preserving relabeling
of components.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .abelian import (
    FgAbelianGroup,
    GroupElement,
    Homomorphism,
    RowLattice,
    Subgroup,
    integer_kernel_basis,
)
from .curve import (
    CurveCombinatorics,
    CycleSpec,
    Walk,
    combinatorial_isomorphisms,
    incidence_graph,
    is_contractible,
    supports,
    validate_walk,
)
from .errors import (
    ContractibleProjectionError,
    InternalInvariantError,
    NotAHomomorphismError,
)


class QuotientContext:
    """Everything derived from (curve, cycle) up to the homology quotient."""

    __slots__ = ("curve", "cycle", "support", "complement", "h1_complement",
                 "indeterminacy", "indeterminacy_generators", "quotient")

    def __init__(self, curve: CurveCombinatorics, cycle: CycleSpec,
                 support, complement, h1_complement, indeterminacy,
                 indeterminacy_generators, quotient):
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "cycle", cycle)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "complement", complement)
        object.__setattr__(self, "h1_complement", h1_complement)
        object.__setattr__(self, "indeterminacy", indeterminacy)
        object.__setattr__(self, "indeterminacy_generators", indeterminacy_generators)
        object.__setattr__(self, "quotient", quotient)

    def __setattr__(self, name, value):
        raise AttributeError("QuotientContext is immutable")

    def meridian_index(self, component_name: str) -> int:
        return self.complement.index(component_name)

    def meridian(self, component_name: str) -> GroupElement:
        """Meridian generator of a complement component, in H1 coordinates."""
        return self.h1_complement.generator(self.meridian_index(component_name))

    def meridians(self) -> dict:
        return {name: self.meridian(name) for name in self.complement}

    def to_quotient(self, element: GroupElement) -> GroupElement:
        """Reinterpret an H1 class in the quotient (same generator order)."""
        if element.group != self.h1_complement:
            raise ValueError("element does not live in the complement homology")
        return self.quotient.element(element.coefficients)

    def __repr__(self):
        return (f"QuotientContext(support={list(self.support)}, "
                f"quotient={self.quotient.decomposition()})")


def indeterminacy_subgroup(curve: CurveCombinatorics, cycle: CycleSpec) -> QuotientContext:
    """Build the complement homology, the indeterminacy subgroup, and their
    quotient for the given cycle.

    One subgroup generator is emitted per (support component D, singular
    point P on D): the sum over off-support components C through P of the
    local linking number lk_P(C, D) times the meridian of C.
    """
    support, complement = supports(cycle, curve)
    n = len(complement)
    degrees = [curve.component(c).degree for c in complement]
    relations = [degrees] if n else []
    h1 = FgAbelianGroup(n, relations)
    index = {name: k for k, name in enumerate(complement)}

    generators = []
    provenance = []
    for d_name in curve.component_names:
        if d_name not in support:
            continue
        for point in curve.points_on(d_name):
            coeffs = [0] * n
            for c_name in point.components:
                if c_name in support:
                    continue
                coeffs[index[c_name]] += point.lk(c_name, d_name)
            if any(coeffs):
                generators.append(h1.element(coeffs))
                provenance.append((d_name, point.name, tuple(coeffs)))

    subgroup = Subgroup(h1, generators)
    quotient = h1.quotient_by(subgroup)
    return QuotientContext(curve, cycle, support, complement, h1, subgroup,
                           tuple(provenance), quotient)


class LinkingSet:
    """Offset-plus-subgroup subset of the quotient, with a zero-exclusion flag.

    Membership is ``(e - offset) in subgroup`` minus the zero class when
    ``zero_excluded`` is set.  Finite sets compare by enumeration; sets in an
    infinite ambient group compare structurally (equal subgroups, offsets in
    the same coset, equal flags).
    """

    __slots__ = ("ambient", "offset", "subgroup", "zero_excluded")

    def __init__(self, ambient: FgAbelianGroup, offset: GroupElement,
                 subgroup: Subgroup, zero_excluded: bool = False):
        if offset.group != ambient or subgroup.ambient != ambient:
            raise ValueError("offset/subgroup must live in the ambient group")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "offset", offset.canonicalize())
        object.__setattr__(self, "subgroup", subgroup)
        object.__setattr__(self, "zero_excluded", bool(zero_excluded))

    def __setattr__(self, name, value):
        raise AttributeError("LinkingSet is immutable")

    def contains(self, element: GroupElement) -> bool:
        if element.group != self.ambient:
            raise ValueError("element lives in a different group")
        if self.zero_excluded and element.is_zero():
            return False
        return self.subgroup.contains(element - self.offset)

    __contains__ = contains

    def enumerate(self) -> list:
        """All members, exactly once, sorted by canonical form (finite only)."""
        members = {}
        for s in self.subgroup.elements():
            e = (self.offset + s).canonicalize()
            if self.zero_excluded and e.is_zero():
                continue
            members[e.canonical_form] = e
        return [members[k] for k in sorted(members)]

    def conjugate(self) -> "LinkingSet":
        """Image under complex conjugation: every member negated."""
        return LinkingSet(self.ambient, -self.offset, self.subgroup,
                          self.zero_excluded)

    def transform(self, hom: Homomorphism) -> "LinkingSet":
        """Push the whole set through a homomorphism of ambient groups."""
        if hom.source != self.ambient:
            raise ValueError("homomorphism source does not match the ambient group")
        new_offset = hom.apply(self.offset)
        new_subgroup = Subgroup(hom.target,
                                [hom.apply(g) for g in self.subgroup.generators])
        return LinkingSet(hom.target, new_offset, new_subgroup, self.zero_excluded)

    def __eq__(self, other):
        if not isinstance(other, LinkingSet):
            return NotImplemented
        if self.ambient != other.ambient:
            return False
        if self.ambient.is_finite():
            mine = {e.canonical_form for e in self.enumerate()}
            theirs = {e.canonical_form for e in other.enumerate()}
            return mine == theirs
        return (self.subgroup == other.subgroup
                and self.subgroup.contains(self.offset - other.offset)
                and self.zero_excluded == other.zero_excluded)

    def __repr__(self):
        flag = ", zero excluded" if self.zero_excluded else ""
        return (f"LinkingSet(offset={list(self.offset.coefficients)}, "
                f"{len(self.subgroup.generators)} subgroup generators{flag})")


def linking_set(ctx: QuotientContext, gamma_hat: GroupElement | None,
                basis_images: Sequence[GroupElement]) -> LinkingSet:
    """Assemble the linking set from the cycle class and genus-basis images.

    Two shapes, by the cycle's internal support:

    * single component: the set of all nonzero integer combinations of the
      basis images; the zero class is excluded exactly when the coefficient
      tuple map is injective away from zero (decided by an integer kernel
      computation);
    * several components with a non-contractible projection: the coset of
      the basis-image subgroup through the cycle's own class.

    A multi-component cycle whose projection is contractible is rejected:
    such a cycle splits into single-component subcycles that each carry more
    information, so it should be decomposed by the caller.
    """
    for img in basis_images:
        if img.group != ctx.quotient:
            raise ValueError("basis images must live in the quotient")
    subgroup = Subgroup(ctx.quotient, tuple(basis_images))
    if len(ctx.support) == 1:
        n = ctx.quotient.rank_generators
        rows = [list(img.coefficients) for img in basis_images]
        rows += [list(r) for r in ctx.quotient.relations.entries]
        kernel = integer_kernel_basis(rows, n)
        k = len(basis_images)
        tuple_kernel_trivial = all(
            all(v == 0 for v in row[:k]) for row in kernel
        )
        return LinkingSet(ctx.quotient, ctx.quotient.zero(), subgroup,
                          zero_excluded=tuple_kernel_trivial)
    graph = incidence_graph(ctx.curve)
    if is_contractible(ctx.cycle.projection, graph):
        raise ContractibleProjectionError(
            "the projection of a multi-component cycle is contractible; "
            "decompose the cycle into single-component subcycles"
        )
    if gamma_hat is None:
        raise ValueError(
            "a non-contractible projection needs the cycle's own class"
        )
    if gamma_hat.group == ctx.h1_complement:
        gamma_hat = ctx.to_quotient(gamma_hat)
    elif gamma_hat.group != ctx.quotient:
        raise ValueError("cycle class must live in the quotient or in H1")
    return LinkingSet(ctx.quotient, gamma_hat, subgroup, zero_excluded=False)


def conjugate_linking_set(s: LinkingSet) -> LinkingSet:
    return s.conjugate()


class EpsilonSignature:
    """Counts of residues (0, 1, -1) of a class, up to cyclic rotation.

    Adding the all-ones vector to a representative shifts every residue by
    one, which cyclically permutes the three counts; equality and hashing
    therefore go through the lexicographically smallest rotation while the
    raw counts of the supplied representative are kept for display.
    """

    __slots__ = ("counts",)

    def __init__(self, zeros: int, ones: int, minus_ones: int):
        object.__setattr__(self, "counts", (int(zeros), int(ones), int(minus_ones)))

    def __setattr__(self, name, value):
        raise AttributeError("EpsilonSignature is immutable")

    def canonical(self) -> tuple:
        a, b, c = self.counts
        return min((a, b, c), (b, c, a), (c, a, b))

    def __eq__(self, other):
        if isinstance(other, EpsilonSignature):
            return self.canonical() == other.canonical()
        if isinstance(other, tuple) and len(other) == 3:
            return self == EpsilonSignature(*other)
        return NotImplemented

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"EpsilonSignature{self.counts}"


def _mod3_shape_lattices(group: FgAbelianGroup):
    n = group.rank_generators
    triple = [[3 * int(i == j) for j in range(n)] for i in range(n)]
    ones = [[1] * n]
    return (RowLattice([list(r) for r in group.relations.entries], n),
            RowLattice(triple + ones, n))


def has_epsilon_shape(group: FgAbelianGroup) -> bool:
    """True when the relation lattice is exactly <3 x_i for all i, sum x_i>."""
    if group.rank_generators == 0:
        return False
    actual, expected = _mod3_shape_lattices(group)
    n = group.rank_generators
    for row in actual.matrix.entries:
        if not expected.contains(row):
            return False
    for row in expected.matrix.entries:
        if not actual.contains(row):
            return False
    return True


def epsilon_signature(group: FgAbelianGroup, element: GroupElement) -> EpsilonSignature:
    """Residue-count signature of a class in a (Z3)^n / <sum of generators>
    quotient; raises ValueError when the group is not of that shape."""
    if element.group != group:
        raise ValueError("element lives in a different group")
    if not has_epsilon_shape(group):
        raise ValueError(
            "the signature needs relations exactly <3*x_i, sum x_i>; got "
            f"{group.decomposition()} with other relations"
        )
    residues = [c % 3 for c in element.coefficients]
    return EpsilonSignature(residues.count(0), residues.count(1), residues.count(2))


# ---------------------------------------------------------------------------
# The distinguishing test.


class SigmaOutcome:
    """Result of testing one component relabeling."""

    __slots__ = ("mapping", "oriented_equal", "conjugate_equal")

    def __init__(self, mapping: Mapping[str, str], oriented_equal: bool,
                 conjugate_equal: bool | None):
        object.__setattr__(self, "mapping", dict(mapping))
        object.__setattr__(self, "oriented_equal", oriented_equal)
        object.__setattr__(self, "conjugate_equal", conjugate_equal)

    def __setattr__(self, name, value):
        raise AttributeError("SigmaOutcome is immutable")

    @property
    def matches(self) -> bool:
        return self.oriented_equal or bool(self.conjugate_equal)

    def __repr__(self):
        return (f"SigmaOutcome({self.mapping!r}, oriented={self.oriented_equal}, "
                f"conjugate={self.conjugate_equal})")


class ZariskiVerdict:
    __slots__ = ("distinguished", "witness", "outcomes", "conjugate_tested")

    def __init__(self, distinguished, witness, outcomes, conjugate_tested):
        object.__setattr__(self, "distinguished", distinguished)
        object.__setattr__(self, "witness", witness)
        object.__setattr__(self, "outcomes", tuple(outcomes))
        object.__setattr__(self, "conjugate_tested", conjugate_tested)

    def __setattr__(self, name, value):
        raise AttributeError("ZariskiVerdict is immutable")

    def __repr__(self):
        word = "DISTINGUISHED" if self.distinguished else "NOT_DISTINGUISHED"
        return f"ZariskiVerdict({word}, {len(self.outcomes)} relabelings)"


def _walk_image(walk: Walk, mapping) -> Walk:
    return Walk([mapping.get(v, v) for v in walk.vertices])


def quotient_isomorphism(ctx_a: QuotientContext, ctx_b: QuotientContext,
                         mapping: Mapping[str, str]) -> Homomorphism:
    """The meridian-to-meridian map on quotients induced by a component
    relabeling."""
    images = []
    for name in ctx_a.complement:
        target_name = mapping[name]
        if target_name not in ctx_b.complement:
            raise ValueError(
                f"relabeling sends complement component {name} to "
                f"{target_name}, which is not in the other complement"
            )
        images.append(ctx_b.quotient.generator(ctx_b.meridian_index(target_name)))
    try:
        return Homomorphism(ctx_a.quotient, ctx_b.quotient, images)
    except NotAHomomorphismError as exc:
        raise InternalInvariantError(
            "a combinatorics-preserving relabeling failed to induce a "
            f"quotient homomorphism: {exc}"
        ) from exc


def zariski_test(a, b, automorphisms: Iterable[Mapping[str, str]],
                 oriented_only: bool = False) -> ZariskiVerdict:
    """Compare two linking sets over a list of component relabelings.

    ``a`` and ``b`` are (QuotientContext, LinkingSet) pairs.  For each
    relabeling that carries the first cycle's projection onto the second's,
    the first linking set is transported through the induced quotient map
    and compared with the second; when both cycles sit in a single component
    the comparison is also made against the conjugate set, which drops the
    orientation requirement.  DISTINGUISHED means every relabeling failed
    every comparison; otherwise the first matching relabeling (in the input
    order, which `combinatorial_isomorphisms` makes lexicographic) is the
    witness.
    """
    ctx_a, lks_a = a
    ctx_b, lks_b = b
    candidates = [m for m in automorphisms
                  if _walk_image(ctx_a.cycle.projection, m) == ctx_b.cycle.projection]
    if not candidates:
        raise ValueError(
            "no relabeling carries one cycle's projection to the other's: "
            "combinatorics mismatch or inequivalent cycles"
        )
    single_component = (len(ctx_a.support) == 1 and len(ctx_b.support) == 1)
    test_conjugate = single_component and not oriented_only
    conjugate_b = lks_b.conjugate() if test_conjugate else None

    outcomes = []
    witness = None
    for mapping in candidates:
        hom = quotient_isomorphism(ctx_a, ctx_b, mapping)
        transported = lks_a.transform(hom)
        oriented_equal = transported == lks_b
        conjugate_equal = (transported == conjugate_b) if test_conjugate else None
        outcome = SigmaOutcome(mapping, oriented_equal, conjugate_equal)
        outcomes.append(outcome)
        if witness is None and outcome.matches:
            witness = outcome
    return ZariskiVerdict(witness is None, witness, outcomes, test_conjugate)


def natural_isomorphism_candidates(curve_a: CurveCombinatorics, cycle_a: CycleSpec,
                                   curve_b: CurveCombinatorics, cycle_b: CycleSpec) -> list:
    """Combinatorics isomorphisms A -> B compatible with the two cycles.

    Support components are pinned to each other through the cycle
    projections: every rotation of the second walk that aligns component
    vertices with the first walk contributes one candidate pinning.  For
    single-vertex projections this is just support -> support.
    """
    walk_a, walk_b = cycle_a.projection.vertices, cycle_b.projection.vertices
    if len(walk_a) != len(walk_b):
        return []
    pinnings = []
    n = len(walk_b)
    graph_a = incidence_graph(curve_a)
    for r in range(n):
        rotated = walk_b[r:] + walk_b[:r]
        pin = {}
        ok = True
        for va, vb in zip(walk_a, rotated):
            if graph_a.is_component_vertex(va):
                if pin.get(va, vb) != vb:
                    ok = False
                    break
                pin[va] = vb
        if ok and pin not in pinnings:
            pinnings.append(pin)
    seen = []
    for pin in pinnings:
        try:
            isos = combinatorial_isomorphisms(curve_a, curve_b, pin)
        except ValueError:
            continue
        for iso in isos:
            if iso not in seen:
                seen.append(iso)
    seen.sort(key=lambda m: tuple(sorted(m.items())))
    return seen


# ---------------------------------------------------------------------------
# Characters and the inner-cyclic bridge for line arrangements.


class Character:
    """A character of a finitely generated abelian group, written additively.

    Values live in Z_m for a modulus m >= 2, or in Z when ``modulus`` is 0;
    multiplicatively this is the root-of-unity character sending a class e to
    exp(2*pi*i * evaluate(e) / m).  Construction checks that every relation
    of the group evaluates to zero.
    """

    __slots__ = ("group", "modulus", "values")

    def __init__(self, group: FgAbelianGroup, modulus: int, values: Sequence[int]):
        modulus = int(modulus)
        if modulus < 0:
            raise ValueError("modulus must be >= 0 (0 means integer-valued)")
        values = tuple(int(v) % modulus if modulus else int(v) for v in values)
        if len(values) != group.rank_generators:
            raise ValueError("need one value per generator")
        for row in group.relations.entries:
            total = sum(r * v for r, v in zip(row, values))
            if (total % modulus if modulus else total) != 0:
                raise ValueError(
                    f"character does not respect the relation {list(row)}"
                )
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("Character is immutable")

    def is_trivial(self) -> bool:
        return not any(self.values)

    def evaluate(self, element: GroupElement) -> int:
        if element.group != self.group:
            raise ValueError("element lives in a different group")
        total = sum(c * v for c, v in zip(element.coefficients, self.values))
        return total % self.modulus if self.modulus else total

    def order(self) -> int:
        """Multiplicative order of the character (0 when infinite)."""
        if self.modulus == 0:
            return 0 if any(self.values) else 1
        from math import gcd
        g = self.modulus
        for v in self.values:
            g = gcd(g, v)
        return self.modulus // g

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        return (self.group == other.group and self.modulus == other.modulus
                and self.values == other.values)

    def __hash__(self):
        return hash((self.group, self.modulus, self.values))

    def __repr__(self):
        return f"Character(mod {self.modulus}, {list(self.values)!r})"


def enumerate_characters(group: FgAbelianGroup, free_modulus: int = 0):
    """All characters with values in Z_m, m the exponent of the torsion part.

    Free factors are skipped (their value pinned to 0) unless a positive
    ``free_modulus`` is supplied, in which case the value modulus becomes
    lcm(exponent, free_modulus) and free coordinates range over the chosen
    modulus.  Deterministic order.
    """
    from math import lcm

    diag = group.snf_diagonal
    n = group.rank_generators
    m = group.exponent()
    if free_modulus and group.free_rank:
        m = lcm(m, free_modulus)
    if m == 1:
        yield Character(group, 1, [0] * n)
        return
    choice_ranges = []
    for d in diag:
        if d == 1:
            choice_ranges.append((0,))
        elif d > 1:
            choice_ranges.append(tuple(c * (m // d) for c in range(d)))
        elif free_modulus:
            choice_ranges.append(tuple(c * (m // free_modulus)
                                       for c in range(free_modulus)))
        else:
            choice_ranges.append((0,))
    v = group.snf_v.entries

    def rec(j, chosen):
        if j == n:
            values = [sum(v[i][jj] * chosen[jj] for jj in range(n)) % m
                      for i in range(n)]
            yield Character(group, m, values)
            return
        for w in choice_ranges[j]:
            yield from rec(j + 1, chosen + [w])

    yield from rec(0, [])


def _require_line_arrangement(curve: CurveCombinatorics):
    for c in curve.components:
        if c.degree != 1 or c.genus != 0:
            raise ValueError(
                f"component {c.name} has degree {c.degree}, genus {c.genus}: "
                "not a line arrangement"
            )


def arrangement_homology(curve: CurveCombinatorics) -> FgAbelianGroup:
    """H1 of the full arrangement exterior: one meridian per line, relation
    the sum of all meridians."""
    _require_line_arrangement(curve)
    n = len(curve.components)
    return FgAbelianGroup(n, [[1] * n] if n else [])


def is_inner_cyclic(arrangement: CurveCombinatorics, xi: Character,
                    sigma: Walk) -> bool:
    """The three vanishing conditions on a character against a graph cycle:

    1. the character kills the meridian of every line on the cycle;
    2. it kills the meridian of every line through a point of the cycle;
    3. at every singular point P on a line L of the cycle, the values of the
       lines through P, each weighted by its local linking number with L,
       sum to zero.

    For a genuine line arrangement every local linking number is 1 and
    condition 3 is the plain sum over the lines through P; the weights only
    matter for synthetic degree-1 data carrying higher local orders, where
    they keep the condition aligned with the indeterminacy-subgroup
    generators.  Nontriviality of the character is the caller's concern.
    """
    _require_line_arrangement(arrangement)
    expected = arrangement_homology(arrangement)
    if xi.group != expected:
        raise ValueError("character must live on the full arrangement homology")
    graph = incidence_graph(arrangement)
    validate_walk(sigma, graph)
    names = arrangement.component_names
    index = {name: k for k, name in enumerate(names)}

    def value(line):
        return xi.values[index[line]]

    def vanishes(total):
        return (total % xi.modulus if xi.modulus else total) == 0

    walk_lines = {v for v in sigma.vertices if graph.is_component_vertex(v)}
    walk_points = {v for v in sigma.vertices if not graph.is_component_vertex(v)}

    for line in walk_lines:
        if not vanishes(value(line)):
            return False
    for point_name in walk_points:
        for line in arrangement.point(point_name).components:
            if not vanishes(value(line)):
                return False
    for line in walk_lines:
        for point in arrangement.points_on(line):
            total = value(line)
            for other in point.components:
                if other != line:
                    total += point.lk(other, line) * value(other)
            if not vanishes(total):
                return False
    return True


def restrict_character(xi: Character, ctx: QuotientContext) -> Character:
    """Character induced on the quotient by one on the full arrangement
    homology; requires the original to vanish on the support lines."""
    names = ctx.curve.component_names
    index = {name: k for k, name in enumerate(names)}
    for name in ctx.support:
        v = xi.values[index[name]]
        if (v % xi.modulus if xi.modulus else v) != 0:
            raise ValueError(f"character is nonzero on support component {name}")
    values = [xi.values[index[name]] for name in ctx.complement]
    return Character(ctx.quotient, xi.modulus, values)


def lift_character(xi_star: Character, ctx: QuotientContext) -> Character:
    """Extend a quotient character to the full arrangement homology by zero
    on the support lines."""
    h1_full = arrangement_homology(ctx.curve)
    values = []
    for name in ctx.curve.component_names:
        if name in ctx.support:
            values.append(0)
        else:
            values.append(xi_star.values[ctx.meridian_index(name)])
    return Character(h1_full, xi_star.modulus, values)


class InnerCyclicResult:
    __slots__ = ("nontrivial_quotient", "witness", "search_complete")

    def __init__(self, nontrivial_quotient, witness, search_complete):
        object.__setattr__(self, "nontrivial_quotient", nontrivial_quotient)
        object.__setattr__(self, "witness", witness)
        object.__setattr__(self, "search_complete", search_complete)

    def __setattr__(self, name, value):
        raise AttributeError("InnerCyclicResult is immutable")

    def __bool__(self):
        return self.nontrivial_quotient


def inner_cyclic_equivalence_check(arrangement: CurveCombinatorics,
                                   cycle: CycleSpec,
                                   free_modulus: int = 0) -> InnerCyclicResult:
    """Whether the cycle's quotient is nontrivial, cross-checked against a
    search for a nontrivial character satisfying the inner-cyclic conditions.

    Every character satisfying the conditions kills the support meridians
    and the indeterminacy generators, so it is the zero-extension of a
    character of the quotient; the search therefore enumerates the
    quotient's characters and lifts each one.  Free factors of the quotient
    are searched at ``free_modulus`` when given and skipped otherwise (the
    search is then incomplete and no consistency error can be raised).
    A disagreement between a complete search and the quotient's
    nontriviality raises InternalInvariantError.

    The check is meaningful for cycles whose walk-visited points carry only
    support lines: a line through a visited point is forced to vanish by
    the conditions, but the declared-support quotient keeps its meridian.
    """
    _require_line_arrangement(arrangement)
    ctx = indeterminacy_subgroup(arrangement, cycle)
    nontrivial = not ctx.quotient.is_trivial()
    search_complete = ctx.quotient.is_finite() or free_modulus > 0

    witness = None
    for xi_star in enumerate_characters(ctx.quotient, free_modulus):
        if xi_star.is_trivial():
            continue
        xi = lift_character(xi_star, ctx)
        if is_inner_cyclic(arrangement, xi, cycle.projection):
            witness = xi
            break

    if witness is not None and not nontrivial:
        raise InternalInvariantError(
            "found a nontrivial inner-cyclic character although the quotient "
            "is trivial"
        )
    if witness is None and nontrivial and search_complete:
        raise InternalInvariantError(
            "the quotient is nontrivial but no inner-cyclic character exists "
            "at the search modulus"
        )
    return InnerCyclicResult(nontrivial, witness, search_complete)
