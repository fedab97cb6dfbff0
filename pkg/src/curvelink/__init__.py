"""Linking invariant of algebraic plane curves.

Computes, from combinatorial and braid-word input: the indeterminacy
subgroup of a cycle, the homology quotient of the off-support complement,
the linking set of the cycle, and the distinguishing test for pairs of
curves with the same combinatorics.
"""

from .abelian import (
    FgAbelianGroup,
    GroupElement,
    Homomorphism,
    IntMatrix,
    Subgroup,
    apply_hom,
    canonicalize,
    quotient,
    smith_normal_form,
    subgroup_membership,
)
from .braid import (
    CYCLE,
    DROPPED,
    BraidWord,
    ClosurePartition,
    StrandLabeling,
    closure_components,
    gamma_dot,
    hat_gamma,
    linking_matrix,
    linking_number,
)
from .curve import (
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
from .errors import (
    ContractibleProjectionError,
    CurvelinkError,
    FixtureError,
    InternalInvariantError,
    NotAHomomorphismError,
)
from .fixture import FixtureDocument, parse_fixture, serialize_fixture
from .invariant import (
    Character,
    EpsilonSignature,
    LinkingSet,
    QuotientContext,
    ZariskiVerdict,
    arrangement_homology,
    conjugate_linking_set,
    enumerate_characters,
    epsilon_signature,
    indeterminacy_subgroup,
    inner_cyclic_equivalence_check,
    is_inner_cyclic,
    lift_character,
    linking_set,
    natural_isomorphism_candidates,
    restrict_character,
    zariski_test,
)
from .pipeline import Report, compare, format_combination, run_pipeline

__version__ = "0.1.0"


def bundled_fixture_path(name: str):
    """Path to one of the fixtures shipped with the package
    (``tangent_cubic.curve`` or ``c7.curve``)."""
    from importlib.resources import files

    return files("curvelink").joinpath("data", name)


def load_bundled_fixture(name: str) -> FixtureDocument:
    return parse_fixture(bundled_fixture_path(name).read_text())
