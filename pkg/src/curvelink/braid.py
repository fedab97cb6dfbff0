"""Braid words, closure components, and linking numbers of closure components.

A braid word on d strands is a sequence of signed generator indices: the
letter ``+i`` crosses the strands currently at positions i and i+1 with a
positive crossing, ``-i`` with a negative one.  Words are read left to right
and all closure strands are oriented the same way, so the linking number of
two closure components is half the signed count of crossings between them.

Sign convention: a positive letter contributes +1 to the signed crossing
count.  This is the usual convention for braid closures and is the one under
which the bundled fixtures reproduce their documented homology classes.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .abelian import FgAbelianGroup, GroupElement
from .errors import InternalInvariantError

CYCLE = "CYCLE"
DROPPED = "DROPPED"


class BraidWord:
    """A word in the Artin generators of the braid group on d strands."""

    __slots__ = ("strand_count", "letters")

    def __init__(self, strand_count: int, letters: Sequence[int] = ()):
        strand_count = int(strand_count)
        if strand_count < 1:
            raise ValueError("a braid needs at least one strand")
        letters = tuple(int(x) for x in letters)
        for letter in letters:
            if letter == 0 or abs(letter) >= strand_count:
                raise ValueError(
                    f"letter {letter} is not a generator index of B_{strand_count}"
                )
        object.__setattr__(self, "strand_count", strand_count)
        object.__setattr__(self, "letters", letters)

    def __setattr__(self, name, value):
        raise AttributeError("BraidWord is immutable")

    @classmethod
    def from_text(cls, strand_count: int, text: str) -> "BraidWord":
        """Parse the whitespace-separated signed-integer serialization."""
        return cls(strand_count, [int(tok) for tok in text.split()])

    def to_text(self) -> str:
        return " ".join(str(x) for x in self.letters)

    def __eq__(self, other):
        return (isinstance(other, BraidWord)
                and self.strand_count == other.strand_count
                and self.letters == other.letters)

    def __hash__(self):
        return hash((self.strand_count, self.letters))

    def __repr__(self):
        return f"BraidWord({self.strand_count}, {list(self.letters)!r})"

    def crossings(self):
        """Yield (strand_a, strand_b, sign) per letter, strands named by their
        start position (1-based)."""
        at_position = list(range(self.strand_count + 1))  # position -> strand
        for letter in self.letters:
            i = abs(letter)
            sign = 1 if letter > 0 else -1
            a, b = at_position[i], at_position[i + 1]
            yield a, b, sign
            at_position[i], at_position[i + 1] = b, a

    def permutation(self) -> tuple:
        """end[s] = final position of the strand that starts at position s."""
        at_position = list(range(self.strand_count + 1))
        for letter in self.letters:
            i = abs(letter)
            at_position[i], at_position[i + 1] = at_position[i + 1], at_position[i]
        end = [0] * (self.strand_count + 1)
        for position in range(1, self.strand_count + 1):
            end[at_position[position]] = position
        return tuple(end[1:])


class ClosurePartition:
    """Cycle decomposition of a braid's underlying permutation.

    Components are named ``s<k>`` where k is the smallest start position in
    the component, matching the usual left-edge labels of braid diagrams.
    """

    __slots__ = ("permutation", "components")

    def __init__(self, permutation: Sequence[int]):
        permutation = tuple(permutation)
        d = len(permutation)
        if sorted(permutation) != list(range(1, d + 1)):
            raise ValueError("not a permutation of strand positions")
        seen = set()
        components = []
        for start in range(1, d + 1):
            if start in seen:
                continue
            cycle = []
            current = start
            while current not in seen:
                seen.add(current)
                cycle.append(current)
                current = permutation[current - 1]
            components.append(frozenset(cycle))
        object.__setattr__(self, "permutation", permutation)
        object.__setattr__(self, "components", tuple(components))

    def __setattr__(self, name, value):
        raise AttributeError("ClosurePartition is immutable")

    @property
    def component_names(self) -> tuple:
        return tuple(f"s{min(c)}" for c in self.components)

    def component(self, name: str) -> frozenset:
        for c in self.components:
            if f"s{min(c)}" == name:
                return c
        raise KeyError(name)

    def component_of(self, start_position: int) -> str:
        for c in self.components:
            if start_position in c:
                return f"s{min(c)}"
        raise KeyError(start_position)

    def __eq__(self, other):
        return (isinstance(other, ClosurePartition)
                and self.permutation == other.permutation)

    def __repr__(self):
        sets = [sorted(c) for c in self.components]
        return f"ClosurePartition({sets!r})"


def closure_components(b: BraidWord) -> ClosurePartition:
    """Closure components of a braid: cycles of its strand permutation."""
    return ClosurePartition(b.permutation())


class StrandLabeling:
    """Assignment of closure components to curve components or markers.

    Exactly one component carries the CYCLE marker; DROPPED components are
    ignored by the meridian map (their meridians go to zero).
    """

    __slots__ = ("partition", "assignment")

    def __init__(self, partition: ClosurePartition, assignment: Mapping[str, str]):
        assignment = dict(assignment)
        names = set(partition.component_names)
        if set(assignment) != names:
            missing = sorted(names - set(assignment))
            extra = sorted(set(assignment) - names)
            raise ValueError(
                f"labeling does not match closure components"
                f" (missing {missing}, unexpected {extra})"
            )
        cycles = [n for n, label in assignment.items() if label == CYCLE]
        if len(cycles) != 1:
            raise ValueError("exactly one closure component must be labeled CYCLE")
        object.__setattr__(self, "partition", partition)
        object.__setattr__(self, "assignment", dict(assignment))

    def __setattr__(self, name, value):
        raise AttributeError("StrandLabeling is immutable")

    @property
    def cycle_component(self) -> str:
        for name, label in self.assignment.items():
            if label == CYCLE:
                return name
        raise InternalInvariantError("labeling lost its CYCLE marker")

    def label(self, component_name: str) -> str:
        return self.assignment[component_name]

    def with_dropped(self, curve_components) -> "StrandLabeling":
        """Relabel as DROPPED every component assigned to one of the given
        curve components (used when restricting to a subcurve)."""
        dropped = set(curve_components)
        new = {
            name: (DROPPED if label in dropped else label)
            for name, label in self.assignment.items()
        }
        return StrandLabeling(self.partition, new)

    def __repr__(self):
        return f"StrandLabeling({self.assignment!r})"


def linking_matrix(b: BraidWord, p: ClosurePartition) -> dict:
    """Pairwise linking numbers of the closure components of b.

    Returns a dict keyed by unordered component-name pairs (name_a, name_b)
    with name order fixed by start position.
    """
    if p != closure_components(b):
        raise ValueError("partition does not belong to this braid word")
    comp_of = {}
    for c in p.components:
        name = f"s{min(c)}"
        for position in c:
            comp_of[position] = name
    doubled = {}
    for a, c, sign in b.crossings():
        ca, cc = comp_of[a], comp_of[c]
        if ca == cc:
            continue
        key = (ca, cc) if min(p.component(ca)) < min(p.component(cc)) else (cc, ca)
        doubled[key] = doubled.get(key, 0) + sign
    out = {}
    for key, value in doubled.items():
        if value % 2:
            raise InternalInvariantError(
                f"odd signed crossing count {value} between components {key}"
            )
        out[key] = value // 2
    return out


def linking_number(b: BraidWord, p: ClosurePartition, a: str, c: str) -> int:
    """Linking number of two distinct closure components of b."""
    if a == c:
        raise ValueError("linking number needs two distinct components")
    pa, pc = p.component(a), p.component(c)
    key = (a, c) if min(pa) < min(pc) else (c, a)
    return linking_matrix(b, p).get(key, 0)


def gamma_dot(b: BraidWord, labeling: StrandLabeling) -> dict:
    """Class of the cycle in the homology of the closure complement: the
    linking numbers of the CYCLE component with every other retained
    component, keyed by component name.  DROPPED components are omitted.
    """
    p = labeling.partition
    matrix = linking_matrix(b, p)
    cycle = labeling.cycle_component
    out = {}
    for name in p.component_names:
        if name == cycle or labeling.label(name) == DROPPED:
            continue
        pa, pc = p.component(cycle), p.component(name)
        key = (cycle, name) if min(pa) < min(pc) else (name, cycle)
        out[name] = matrix.get(key, 0)
    return out


def hat_gamma(b: BraidWord, labeling: StrandLabeling, target: FgAbelianGroup,
              meridians: Mapping[str, GroupElement]) -> GroupElement:
    """Image of the cycle class under the meridian map: the sum of
    lk(cycle, component) times the meridian of the curve component the
    closure component is labeled with, canonicalized in the target group.
    """
    coefficients = [0] * target.rank_generators
    for name, lk in gamma_dot(b, labeling).items():
        label = labeling.label(name)
        if label == CYCLE or label == DROPPED:
            continue
        if label not in meridians:
            raise ValueError(f"no meridian image for curve component {label!r}")
        meridian = meridians[label]
        if meridian.group != target:
            raise ValueError("meridian image lies outside the target group")
        for k, v in enumerate(meridian.coefficients):
            coefficients[k] += lk * v
    return GroupElement(target, coefficients).canonicalize()
