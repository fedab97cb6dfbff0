"""Exact arithmetic for finitely generated abelian groups.

A group is presented as Z^n modulo the lattice spanned by the rows of an
integer relation matrix.  All computations go through the Smith normal form
of that matrix, so every question here (equality of classes, subgroup
membership, homomorphism checks) reduces to divisibility conditions that are
decided exactly over Python's arbitrary-precision integers.

Coordinate conventions, fixed once for the whole package:

* elements are integer row vectors of coefficients over the n generators;
* for a relation matrix R with Smith decomposition U * R * V = D, the "SNF
  coordinates" of an element x are y = x * V, and the canonical form of a
  class reduces y[j] into [0, d_j) for each nonzero invariant factor d_j
  (free coordinates are kept as-is, factor-1 coordinates collapse to 0);
* the canonical *representative* handed back to callers is y_reduced * V^-1,
  i.e. it lives in the original generator coordinates.

Two elements are equal in the group iff their canonical forms are identical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotAHomomorphismError


class IntMatrix:
    """Immutable rectangular integer matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable[int]], cols: int | None = None):
        rows = tuple(tuple(int(v) for v in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise ValueError("matrix rows must all have the same length")
            if cols is not None and cols != width:
                raise ValueError("declared column count does not match rows")
        else:
            width = 0 if cols is None else cols
        if width < 0:
            raise ValueError("column count must be nonnegative")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries \
            and self.cols == other.cols

    def __hash__(self):
        return hash((self.entries, self.cols))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]!r})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        cols = range(other.cols)
        return IntMatrix(
            [[sum(a * other.entries[k][j] for k, a in enumerate(row)) for j in cols]
             for row in self.entries],
            cols=other.cols,
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def determinant(self) -> int:
        """Exact determinant by fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(r) for r in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                pivot = next((i for i in range(k + 1, n) if m[i][k]), None)
                if pivot is None:
                    return 0
                m[k], m[pivot] = m[pivot], m[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.determinant()) == 1

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse of an integer matrix with determinant +-1."""
        n = self.rows
        if n != self.cols:
            raise ValueError("only square matrices can be inverted")
        aug = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
               for i, row in enumerate(self.entries)]
        for col in range(n):
            pivot = next((i for i in range(col, n) if aug[i][col]), None)
            if pivot is None:
                raise ValueError("matrix is singular")
            aug[col], aug[pivot] = aug[pivot], aug[col]
            factor = aug[col][col]
            aug[col] = [v / factor for v in aug[col]]
            for i in range(n):
                if i != col and aug[i][col]:
                    scale = aug[i][col]
                    aug[i] = [a - scale * b for a, b in zip(aug[i], aug[col])]
        out = []
        for row in aug:
            tail = row[n:]
            if any(v.denominator != 1 for v in tail):
                raise ValueError("matrix is not unimodular")
            out.append([int(v) for v in tail])
        return IntMatrix(out, cols=n)


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form with transforms: returns (U, D, V) with U*m*V = D.

    U and V are unimodular, D is diagonal with nonnegative entries in a
    divisibility chain.  Pivots are chosen by smallest absolute value, ties
    broken by lowest (row, column) index, so the output is deterministic.
    """
    nr, nc = m.rows, m.cols
    d = [list(row) for row in m.entries]
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, k):
        d[i], d[k] = d[k], d[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in d:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        d[dst] = [a + q * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a + q * b for a, b in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    while t < min(nr, nc):
        candidates = [
            (abs(d[i][j]), i, j)
            for i in range(t, nr)
            for j in range(t, nc)
            if d[i][j]
        ]
        if not candidates:
            break
        _, pi, pj = min(candidates)
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        while True:
            pivot = d[t][t]
            moved = False
            for i in range(t + 1, nr):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // pivot))
                    if d[i][t]:
                        swap_rows(t, i)
                        moved = True
                        break
            if moved:
                continue
            for j in range(t + 1, nc):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // pivot))
                    if d[t][j]:
                        swap_cols(t, j)
                        moved = True
                        break
            if moved:
                continue
            # Row and column are clear; enforce pivot | every later entry so
            # the final diagonal satisfies the divisibility chain.
            offender = None
            for i in range(t + 1, nr):
                if any(v % pivot for v in d[i][t + 1:]):
                    offender = i
                    break
            if offender is None:
                break
            add_row(t, offender, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return IntMatrix(u, cols=nr), IntMatrix(d, cols=nc), IntMatrix(v, cols=nc)


class GroupElement:
    """Element of an :class:`FgAbelianGroup`, stored in generator coordinates.

    Equality and hashing go through the canonical (SNF-coordinate) form, so
    two different coefficient vectors representing the same class compare
    equal.
    """

    __slots__ = ("group", "coefficients", "_canonical")

    def __init__(self, group: "FgAbelianGroup", coefficients: Sequence[int]):
        coefficients = tuple(int(c) for c in coefficients)
        if len(coefficients) != group.rank_generators:
            raise ValueError(
                f"expected {group.rank_generators} coefficients, got {len(coefficients)}"
            )
        self.group = group
        self.coefficients = coefficients
        self._canonical = None

    @property
    def canonical_form(self) -> tuple:
        """Reduced SNF coordinates; identical tuples <=> equal classes."""
        if self._canonical is None:
            self._canonical = self.group._reduce(self.coefficients)
        return self._canonical

    def canonicalize(self) -> "GroupElement":
        """Canonical representative, back in generator coordinates."""
        rep = self.group._transport_back(self.canonical_form)
        element = GroupElement(self.group, rep)
        element._canonical = self.canonical_form
        return element

    def is_zero(self) -> bool:
        return not any(self.canonical_form)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check_same_group(other)
        return GroupElement(self.group, [a + b for a, b in zip(self.coefficients, other.coefficients)])

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check_same_group(other)
        return GroupElement(self.group, [a - b for a, b in zip(self.coefficients, other.coefficients)])

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, [-a for a in self.coefficients])

    def __rmul__(self, k: int) -> "GroupElement":
        return GroupElement(self.group, [k * a for a in self.coefficients])

    def _check_same_group(self, other):
        if self.group != other.group:
            raise ValueError("elements belong to different groups")

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group == other.group and self.canonical_form == other.canonical_form

    def __hash__(self):
        return hash((self.group, self.canonical_form))

    def __repr__(self):
        return f"GroupElement({list(self.coefficients)!r})"


class FgAbelianGroup:
    """Z^n modulo the row lattice of an integer relation matrix.

    The Smith decomposition of the relation matrix is computed eagerly at
    construction; instances are immutable afterwards and safe to share.
    """

    __slots__ = ("rank_generators", "relations", "snf_u", "snf_d", "snf_v",
                 "_v_inv", "_diag")

    def __init__(self, rank_generators: int, relations: Iterable[Sequence[int]] | IntMatrix):
        n = int(rank_generators)
        if n < 0:
            raise ValueError("generator count must be nonnegative")
        if not isinstance(relations, IntMatrix):
            relations = IntMatrix(relations, cols=n)
        if relations.cols != n:
            raise ValueError("relation matrix must have one column per generator")
        object.__setattr__(self, "rank_generators", n)
        object.__setattr__(self, "relations", relations)
        u, d, v = smith_normal_form(relations)
        object.__setattr__(self, "snf_u", u)
        object.__setattr__(self, "snf_d", d)
        object.__setattr__(self, "snf_v", v)
        object.__setattr__(self, "_v_inv", v.inverse_unimodular())
        diag = [d.entries[j][j] if j < d.rows else 0 for j in range(n)]
        object.__setattr__(self, "_diag", tuple(diag))

    def __setattr__(self, name, value):
        raise AttributeError("FgAbelianGroup is immutable")

    # -- structure ---------------------------------------------------------

    @property
    def snf_diagonal(self) -> tuple:
        """Diagonal of the Smith form, one entry per generator (0 = free)."""
        return self._diag

    @property
    def torsion_factors(self) -> tuple:
        return tuple(d for d in self._diag if d > 1)

    @property
    def free_rank(self) -> int:
        return sum(1 for d in self._diag if d == 0)

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_factors

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        if not self.is_finite():
            return None
        out = 1
        for d in self.torsion_factors:
            out *= d
        return out

    def exponent(self) -> int:
        """Exponent of the torsion part (1 when torsion-free)."""
        return self.torsion_factors[-1] if self.torsion_factors else 1

    def decomposition(self) -> str:
        """Human-readable invariant factor decomposition, e.g. ``Z^2 x Z3``."""
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        for d in self.torsion_factors:
            parts.append(f"Z{d}")
        return " x ".join(parts) if parts else "0"

    def __eq__(self, other):
        if not isinstance(other, FgAbelianGroup):
            return NotImplemented
        return (self.rank_generators == other.rank_generators
                and self.relations == other.relations)

    def __hash__(self):
        return hash((self.rank_generators, self.relations))

    def __repr__(self):
        return f"FgAbelianGroup(n={self.rank_generators}, {self.decomposition()})"

    # -- elements ----------------------------------------------------------

    def element(self, coefficients: Sequence[int]) -> GroupElement:
        return GroupElement(self, coefficients)

    def zero(self) -> GroupElement:
        return GroupElement(self, [0] * self.rank_generators)

    def generator(self, i: int) -> GroupElement:
        return GroupElement(self, [int(j == i) for j in range(self.rank_generators)])

    def generators(self) -> list:
        return [self.generator(i) for i in range(self.rank_generators)]

    def _to_snf(self, coefficients) -> tuple:
        v = self.snf_v.entries
        n = self.rank_generators
        return tuple(
            sum(coefficients[i] * v[i][j] for i in range(n)) for j in range(n)
        )

    def _reduce(self, coefficients) -> tuple:
        return tuple(
            y % d if d else y for y, d in zip(self._to_snf(coefficients), self._diag)
        )

    def _transport_back(self, snf_coords) -> tuple:
        vi = self._v_inv.entries
        n = self.rank_generators
        return tuple(
            sum(snf_coords[i] * vi[i][j] for i in range(n)) for j in range(n)
        )

    def elements(self):
        """All elements of a finite group, canonical representatives, in a
        fixed lexicographic order over SNF coordinates."""
        if not self.is_finite():
            raise ValueError("cannot enumerate an infinite group")

        def rec(j, prefix):
            if j == self.rank_generators:
                yield tuple(prefix)
                return
            for y in range(max(self._diag[j], 1)):
                yield from rec(j + 1, prefix + [y])

        for coords in rec(0, []):
            element = GroupElement(self, self._transport_back(coords))
            element._canonical = coords
            yield element

    def quotient_by(self, subgroup: "Subgroup") -> "FgAbelianGroup":
        """Same generators, relations extended by the subgroup's generators."""
        if subgroup.ambient != self:
            raise ValueError("subgroup lives in a different group")
        rows = [list(r) for r in self.relations.entries]
        rows.extend(list(g.coefficients) for g in subgroup.generators)
        return FgAbelianGroup(self.rank_generators, rows)


def quotient(n: int, relations: Iterable[Sequence[int]] | IntMatrix) -> FgAbelianGroup:
    """The abelian group on n generators modulo the given relation rows."""
    return FgAbelianGroup(n, relations)


def canonicalize(group: FgAbelianGroup, element: GroupElement) -> GroupElement:
    if element.group != group:
        raise ValueError("element does not belong to the given group")
    return element.canonicalize()


class RowLattice:
    """Row lattice of an integer matrix with an SNF-backed membership test."""

    __slots__ = ("matrix", "_d", "_v", "_diag")

    def __init__(self, rows, cols):
        self.matrix = IntMatrix(rows, cols=cols)
        _, d, v = smith_normal_form(self.matrix)
        self._d = d
        self._v = v
        self._diag = [d.entries[j][j] if j < d.rows else 0 for j in range(cols)]

    def contains(self, vector) -> bool:
        v = self._v.entries
        n = self.matrix.cols
        for j in range(n):
            y = sum(vector[i] * v[i][j] for i in range(n))
            d = self._diag[j]
            if d == 0:
                if y != 0:
                    return False
            elif y % d:
                return False
        return True


class Subgroup:
    """Subgroup of an FgAbelianGroup given by a finite generating set."""

    __slots__ = ("ambient", "generators", "_lattice")

    def __init__(self, ambient: FgAbelianGroup, generators: Iterable[GroupElement]):
        generators = tuple(generators)
        for g in generators:
            if g.group != ambient:
                raise ValueError("subgroup generator lies outside the ambient group")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "generators", generators)
        rows = [list(r) for r in ambient.relations.entries]
        rows.extend(list(g.coefficients) for g in generators)
        object.__setattr__(self, "_lattice", RowLattice(rows, ambient.rank_generators))

    def __setattr__(self, name, value):
        raise AttributeError("Subgroup is immutable")

    def contains(self, element: GroupElement) -> bool:
        if element.group != self.ambient:
            raise ValueError("element does not belong to the ambient group")
        return self._lattice.contains(element.coefficients)

    __contains__ = contains

    def is_trivial(self) -> bool:
        return all(g.is_zero() for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        if self.ambient != other.ambient:
            return False
        return (all(other.contains(g) for g in self.generators)
                and all(self.contains(g) for g in other.generators))

    def __repr__(self):
        return f"Subgroup({len(self.generators)} generators of {self.ambient!r})"

    def elements(self):
        """All subgroup elements (finite ambient group only), sorted by
        canonical form."""
        if not self.ambient.is_finite():
            raise ValueError("cannot enumerate a subgroup of an infinite group")
        zero = self.ambient.zero()
        seen = {zero.canonical_form: zero}
        frontier = [zero]
        while frontier:
            current = frontier.pop()
            for g in self.generators:
                nxt = (current + g).canonicalize()
                if nxt.canonical_form not in seen:
                    seen[nxt.canonical_form] = nxt
                    frontier.append(nxt)
        return [seen[k] for k in sorted(seen)]


def subgroup_membership(s: Subgroup, e: GroupElement) -> bool:
    return s.contains(e)


class Homomorphism:
    """Group homomorphism given by generator images; checked on construction."""

    __slots__ = ("source", "target", "images")

    def __init__(self, source: FgAbelianGroup, target: FgAbelianGroup,
                 images: Sequence[GroupElement]):
        images = tuple(images)
        if len(images) != source.rank_generators:
            raise ValueError("need exactly one image per source generator")
        for img in images:
            if img.group != target:
                raise ValueError("image lies outside the target group")
        for row in source.relations.entries:
            if not _combine(target, images, row).is_zero():
                raise NotAHomomorphismError(
                    f"relation {list(row)} is not sent to zero by the proposed images"
                )
        self.source = source
        self.target = target
        self.images = images

    def apply(self, element: GroupElement) -> GroupElement:
        if element.group != self.source:
            raise ValueError("element does not belong to the source group")
        return _combine(self.target, self.images, element.coefficients).canonicalize()

    def __call__(self, element: GroupElement) -> GroupElement:
        return self.apply(element)


def _combine(target, images, coefficients) -> GroupElement:
    acc = [0] * target.rank_generators
    for c, img in zip(coefficients, images):
        if c:
            for k, v in enumerate(img.coefficients):
                acc[k] += c * v
    return GroupElement(target, acc)


def apply_hom(source: FgAbelianGroup, images: Sequence[GroupElement],
              e: GroupElement) -> GroupElement:
    """Linear extension of generator images, canonicalized in the target.

    Raises :class:`NotAHomomorphismError` when the images do not kill the
    source relations.
    """
    target = images[0].group if images else e.group
    return Homomorphism(source, target, images).apply(e)


def integer_kernel_basis(rows: Sequence[Sequence[int]], cols: int) -> list:
    """Basis of { y : y * M = 0 } for the integer matrix M with given rows."""
    m = IntMatrix(rows, cols=cols)
    u, d, _ = smith_normal_form(m)
    basis = []
    for j in range(m.rows):
        diag = d.entries[j][j] if j < min(d.rows, d.cols) else 0
        if diag == 0:
            basis.append(u.entries[j])
    return basis
