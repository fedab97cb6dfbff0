"""Curve combinatorics: components, singular points, incidence graph, walks,
cycle specifications, and combinatorial (iso/auto)morphism enumeration.

The combinatorial data kept per curve is exactly what the downstream
invariant consumes: component degrees and genera, and for each singular
point its incident components with a positive local linking number per
unordered incident pair.  Nothing here knows about defining polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from .braid import BraidWord, StrandLabeling


@dataclass(frozen=True)
class Component:
    name: str
    degree: int
    genus: int

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError(f"component {self.name}: degree must be >= 1")
        if self.genus < 0:
            raise ValueError(f"component {self.name}: genus must be >= 0")


class SingularPoint:
    """A singular point with its incident components and pairwise local data."""

    __slots__ = ("name", "components", "local_lk")

    def __init__(self, name: str, components: Sequence[str],
                 local_lk: Mapping[tuple, int] | None = None):
        components = tuple(components)
        if not components:
            raise ValueError(f"point {name}: must be incident to a component")
        if len(set(components)) != len(components):
            raise ValueError(f"point {name}: duplicate incident component")
        normalized = {}
        for pair, value in (local_lk or {}).items():
            a, b = sorted(pair)
            if a == b:
                raise ValueError(f"point {name}: local linking needs two distinct components")
            if a not in components or b not in components:
                raise ValueError(f"point {name}: linking pair ({a},{b}) not incident")
            if int(value) < 1:
                raise ValueError(f"point {name}: local linking numbers are positive")
            normalized[(a, b)] = int(value)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "local_lk", normalized)

    def __setattr__(self, name, value):
        raise AttributeError("SingularPoint is immutable")

    def lk(self, a: str, b: str) -> int:
        """Local linking number of two incident components (0 if undeclared)."""
        return self.local_lk.get(tuple(sorted((a, b))), 0)

    def __repr__(self):
        return f"SingularPoint({self.name!r}, {list(self.components)!r})"


class CurveCombinatorics:
    """Ordered components plus singular points with local linking data."""

    __slots__ = ("components", "singular_points", "_by_name", "_point_by_name")

    def __init__(self, components: Iterable[Component],
                 singular_points: Iterable[SingularPoint] = ()):
        components = tuple(components)
        points = tuple(singular_points)
        by_name = {}
        for c in components:
            if c.name in by_name:
                raise ValueError(f"duplicate component name {c.name!r}")
            by_name[c.name] = c
        point_by_name = {}
        for p in points:
            if p.name in point_by_name or p.name in by_name:
                raise ValueError(f"duplicate name {p.name!r}")
            point_by_name[p.name] = p
            for cname in p.components:
                if cname not in by_name:
                    raise ValueError(
                        f"point {p.name} references unknown component {cname!r}"
                    )
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "singular_points", points)
        object.__setattr__(self, "_by_name", by_name)
        object.__setattr__(self, "_point_by_name", point_by_name)

    def __setattr__(self, name, value):
        raise AttributeError("CurveCombinatorics is immutable")

    def component(self, name: str) -> Component:
        return self._by_name[name]

    def point(self, name: str) -> SingularPoint:
        return self._point_by_name[name]

    @property
    def component_names(self) -> tuple:
        return tuple(c.name for c in self.components)

    def points_on(self, component_name: str) -> tuple:
        return tuple(p for p in self.singular_points
                     if component_name in p.components)

    def delete_components(self, names: Iterable[str]) -> "CurveCombinatorics":
        """Subcurve obtained by removing whole components.

        Points left incident to fewer than two components are dropped: the
        pairwise local data they carried is gone, and with it any constraint
        they could contribute.
        """
        doomed = set(names)
        unknown = doomed - set(self.component_names)
        if unknown:
            raise ValueError(f"cannot delete unknown components {sorted(unknown)}")
        new_components = [c for c in self.components if c.name not in doomed]
        new_points = []
        for p in self.singular_points:
            kept = tuple(c for c in p.components if c not in doomed)
            if len(kept) < 2:
                continue
            lk = {pair: v for pair, v in p.local_lk.items()
                  if pair[0] in kept and pair[1] in kept}
            new_points.append(SingularPoint(p.name, kept, lk))
        return CurveCombinatorics(new_components, new_points)

    def __repr__(self):
        return (f"CurveCombinatorics({len(self.components)} components, "
                f"{len(self.singular_points)} singular points)")


def validate_bezout(curve: CurveCombinatorics) -> dict:
    """Check sum of local linking numbers against the product of degrees.

    Only pairs of components sharing at least one declared singular point are
    checked (a fixture may legitimately leave pairwise intersections that
    play no role undeclared).  Returns ``{"checked": [...], "skipped": [...]}``
    and raises ValueError on any violated pair.
    """
    checked, skipped = [], []
    for a, b in combinations(curve.components, 2):
        total = 0
        shared = False
        for p in curve.singular_points:
            if a.name in p.components and b.name in p.components:
                shared = True
                total += p.lk(a.name, b.name)
        if not shared:
            skipped.append((a.name, b.name))
            continue
        expected = a.degree * b.degree
        if total != expected:
            raise ValueError(
                f"intersection total of ({a.name},{b.name}) is {total}, "
                f"expected deg*deg = {expected}"
            )
        checked.append((a.name, b.name, total))
    return {"checked": checked, "skipped": skipped}


class IncidenceGraph:
    """Bipartite graph on component vertices and singular-point vertices."""

    __slots__ = ("component_vertices", "point_vertices", "edges", "_adjacent")

    def __init__(self, component_vertices: Sequence[str],
                 point_vertices: Sequence[str], edges: Iterable[tuple]):
        component_vertices = tuple(component_vertices)
        point_vertices = tuple(point_vertices)
        edge_set = set()
        adjacent = {v: set() for v in component_vertices + point_vertices}
        for c, p in edges:
            if c not in component_vertices or p not in point_vertices:
                raise ValueError(f"edge ({c},{p}) has a dangling endpoint")
            edge_set.add((c, p))
            adjacent[c].add(p)
            adjacent[p].add(c)
        object.__setattr__(self, "component_vertices", component_vertices)
        object.__setattr__(self, "point_vertices", point_vertices)
        object.__setattr__(self, "edges", frozenset(edge_set))
        object.__setattr__(self, "_adjacent", adjacent)

    def __setattr__(self, name, value):
        raise AttributeError("IncidenceGraph is immutable")

    def has_vertex(self, v: str) -> bool:
        return v in self._adjacent

    def adjacent(self, u: str, v: str) -> bool:
        return v in self._adjacent.get(u, ())

    def is_component_vertex(self, v: str) -> bool:
        return v in self.component_vertices

    def __repr__(self):
        return (f"IncidenceGraph({len(self.component_vertices)}+"
                f"{len(self.point_vertices)} vertices, {len(self.edges)} edges)")


def incidence_graph(curve: CurveCombinatorics) -> IncidenceGraph:
    """Component and point vertices in declaration order, one edge per
    incidence."""
    edges = [(c, p.name) for p in curve.singular_points for c in p.components]
    return IncidenceGraph(
        curve.component_names,
        tuple(p.name for p in curve.singular_points),
        edges,
    )


class Walk:
    """A closed walk on the incidence graph, up to cyclic rotation, or a
    single component vertex for cycles avoiding the singular locus.

    The stored vertex sequence does not repeat the starting vertex at the
    end; equality compares the lexicographically smallest rotation.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Sequence[str]):
        vertices = tuple(vertices)
        if not vertices:
            raise ValueError("a walk needs at least one vertex")
        object.__setattr__(self, "vertices", vertices)

    def __setattr__(self, name, value):
        raise AttributeError("Walk is immutable")

    @property
    def is_single_vertex(self) -> bool:
        return len(self.vertices) == 1

    def canonical_rotation(self) -> tuple:
        n = len(self.vertices)
        doubled = self.vertices * 2
        return min(tuple(doubled[i:i + n]) for i in range(n))

    def __eq__(self, other):
        if not isinstance(other, Walk):
            return NotImplemented
        return self.canonical_rotation() == other.canonical_rotation()

    def __hash__(self):
        return hash(self.canonical_rotation())

    def __repr__(self):
        return f"Walk({list(self.vertices)!r})"


def validate_walk(walk: Walk, graph: IncidenceGraph) -> None:
    """Raise ValueError unless the walk is a proper closed walk on the graph."""
    verts = walk.vertices
    for v in verts:
        if not graph.has_vertex(v):
            raise ValueError(f"walk visits unknown vertex {v!r}")
    if walk.is_single_vertex:
        if not graph.is_component_vertex(verts[0]):
            raise ValueError("a single-vertex walk must sit on a component vertex")
        return
    if len(verts) % 2:
        raise ValueError("a closed walk on a bipartite graph has even length")
    n = len(verts)
    for i in range(n):
        u, v = verts[i], verts[(i + 1) % n]
        if not graph.adjacent(u, v):
            raise ValueError(f"walk step ({u},{v}) is not an edge")


def is_contractible(walk: Walk, graph: IncidenceGraph) -> bool:
    """Whether the closed walk is null-homotopic in the graph.

    Iterated cancellation of immediate backtracks (cyclically) decides this
    because the fundamental group of a graph is free.
    """
    validate_walk(walk, graph)
    verts = list(walk.vertices)
    while len(verts) > 1:
        if len(verts) == 2:
            # (a, b) closes up as a -> b -> a: a pure backtrack.
            verts = [verts[0]]
            break
        n = len(verts)
        for i in range(n):
            if verts[i] == verts[(i + 2) % n]:
                rotated = verts[i:] + verts[:i]
                verts = [rotated[0]] + rotated[3:]
                break
        else:
            return False
    return True


class CycleRealization:
    """How a cycle class is computed: from a braid with a strand labeling, or
    from directly supplied meridian coefficients."""

    __slots__ = ("braid", "labeling", "coefficients")

    def __init__(self, braid: BraidWord | None = None,
                 labeling: StrandLabeling | None = None,
                 coefficients: Mapping[str, int] | None = None):
        if (braid is None) != (labeling is None):
            raise ValueError("a braid realization needs both word and labeling")
        if (braid is None) == (coefficients is None):
            raise ValueError("exactly one of braid data or coefficients required")
        object.__setattr__(self, "braid", braid)
        object.__setattr__(self, "labeling", labeling)
        object.__setattr__(self, "coefficients",
                           dict(coefficients) if coefficients is not None else None)

    def __setattr__(self, name, value):
        raise AttributeError("CycleRealization is immutable")

    @property
    def is_braid(self) -> bool:
        return self.braid is not None


class CycleSpec:
    """A declared minimal cycle: projection walk, genus basis, realizations.

    The internal support is the set of component vertices on the projection
    walk; when a ``declared_support`` is passed it is validated against that
    set.  Every internal-support component C of genus g contributes an
    ordered list of 2g basis-cycle identifiers, each with a realization.
    The cycle itself may also carry a realization (required later when the
    projection is non-contractible).
    """

    __slots__ = ("name", "projection", "internal_support", "genus_basis",
                 "realizations")

    def __init__(self, name: str, projection: Walk, curve: CurveCombinatorics,
                 genus_basis: Mapping[str, Sequence[str]],
                 realizations: Mapping[str, CycleRealization],
                 declared_support: Iterable[str] | None = None):
        graph = incidence_graph(curve)
        validate_walk(projection, graph)
        support = tuple(sorted(
            {v for v in projection.vertices if graph.is_component_vertex(v)}
        ))
        if declared_support is not None and set(declared_support) != set(support):
            raise ValueError(
                f"declared support {sorted(set(declared_support))} does not match "
                f"the projection walk's components {list(support)}"
            )
        genus_basis = {c: tuple(ids) for c, ids in genus_basis.items()}
        for cname in genus_basis:
            if cname not in support:
                raise ValueError(
                    f"genus basis declared for {cname!r} outside the internal support"
                )
        for cname in support:
            genus = curve.component(cname).genus
            declared = genus_basis.get(cname, ())
            if len(declared) != 2 * genus:
                raise ValueError(
                    f"component {cname} has genus {genus}: expected "
                    f"{2 * genus} basis cycles, got {len(declared)}"
                )
        if len(support) == 1 and curve.component(support[0]).genus == 0:
            raise ValueError(
                "a cycle supported in a single genus-0 component is trivial"
            )
        basis_ids = [b for ids in genus_basis.values() for b in ids]
        if len(set(basis_ids)) != len(basis_ids):
            raise ValueError("duplicate basis cycle identifier")
        realizations = dict(realizations)
        for key in realizations:
            if key != name and key not in basis_ids:
                raise ValueError(f"realization for unknown cycle {key!r}")
        for b in basis_ids:
            if b not in realizations:
                raise ValueError(f"basis cycle {b!r} has no realization")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "projection", projection)
        object.__setattr__(self, "internal_support", support)
        object.__setattr__(self, "genus_basis", genus_basis)
        object.__setattr__(self, "realizations", realizations)

    def __setattr__(self, name, value):
        raise AttributeError("CycleSpec is immutable")

    def basis_ids(self) -> tuple:
        """Basis-cycle identifiers in support order, then declaration order."""
        out = []
        for cname in self.internal_support:
            out.extend(self.genus_basis.get(cname, ()))
        return tuple(out)

    def __repr__(self):
        return f"CycleSpec({self.name!r}, support={list(self.internal_support)})"


def supports(spec: CycleSpec, curve: CurveCombinatorics) -> tuple:
    """(support, complement) of the cycle: the support is its declared
    internal support; the complement keeps the curve's component order."""
    support = frozenset(spec.internal_support)
    unknown = support - set(curve.component_names)
    if unknown:
        raise ValueError(f"cycle support references unknown components {sorted(unknown)}")
    complement = tuple(c for c in curve.component_names if c not in support)
    return support, complement


def _point_signature(point: SingularPoint, rename) -> tuple:
    comps = tuple(sorted(rename(c) for c in point.components))
    lk = tuple(sorted(
        (tuple(sorted((rename(a), rename(b)))), v)
        for (a, b), v in point.local_lk.items()
    ))
    return comps, lk


def combinatorial_isomorphisms(curve_a: CurveCombinatorics,
                               curve_b: CurveCombinatorics,
                               fixed: Mapping[str, str] | None = None) -> list:
    """All component bijections A -> B preserving degree, genus, and the
    multiset of singular-point incidence data.

    ``fixed`` pins chosen components of A to components of B.  Results are
    returned in lexicographic order of the induced mapping (sorted by the
    movable components of A), so the first entry is a deterministic witness.
    """
    fixed = dict(fixed or {})
    names_a = curve_a.component_names
    names_b = curve_b.component_names
    if len(names_a) != len(names_b):
        return []
    for a, b in fixed.items():
        if a not in names_a or b not in names_b:
            raise ValueError(f"fixed pair ({a},{b}) references unknown components")

    signature_b = sorted(_point_signature(p, lambda c: c)
                         for p in curve_b.singular_points)

    def type_of(curve, name):
        c = curve.component(name)
        return (c.degree, c.genus)

    movable = sorted(n for n in names_a if n not in fixed)
    used = set(fixed.values())
    candidates = {
        a: sorted(n for n in names_b if n not in used
                  and type_of(curve_b, n) == type_of(curve_a, a))
        for a in movable
    }
    for a, b in fixed.items():
        if type_of(curve_a, a) != type_of(curve_b, b):
            return []

    out = []
    targets = sorted(set(names_b) - used)
    for image in permutations(targets):
        mapping = dict(fixed)
        ok = True
        for a, b in zip(movable, image):
            if b not in candidates[a]:
                ok = False
                break
            mapping[a] = b
        if not ok:
            continue
        transported = sorted(
            _point_signature(p, lambda c: mapping[c])
            for p in curve_a.singular_points
        )
        if transported == signature_b:
            out.append(mapping)
    return out


def combinatorial_automorphisms(curve: CurveCombinatorics,
                                fixed: Iterable[str] = ()) -> list:
    """Self-equivalences of the combinatorics fixing the given components."""
    return combinatorial_isomorphisms(curve, curve, {c: c for c in fixed})
