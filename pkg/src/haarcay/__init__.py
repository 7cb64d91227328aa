"""Haar graphs over finite groups: constructions, Cayley-type decision
procedures, and batch scans."""

from .errors import (
    HaarcayError,
    InvalidConnectionSetError,
    InvalidParameterError,
    InvalidPresentationError,
    InvalidWitnessError,
    NotBipartiteError,
    ResourceLimitError,
    VerificationError,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    automorphisms,
    build_cyclic,
    build_dihedral,
    build_direct_product,
    build_generalized_dihedral,
    build_metacyclic,
    build_quaternion,
    find_group_isomorphism,
    group_from_table_text,
    groups_are_isomorphic,
    has_complement,
    inner_automorphism,
    is_characteristic,
    quotient,
    subgroup_as_group,
    subgroup_generated,
)
from .perms import PermGroup, SearchOutcome, find_regular_subgroup
from .graphs import (
    Graph,
    automorphism_group,
    bipartition,
    connected_components,
    from_graph6,
    is_connected,
    is_isomorphic,
    to_dot,
    to_graph6,
)
from .haar import (
    AlgCayleyWitness,
    CayleyOutcome,
    HaarSpec,
    SigmaMap,
    alg_cayley_witness,
    build_sigma,
    cayley_graph,
    connectivity_criterion,
    difference_multiset,
    find_nonsplit_metacyclic,
    haar_from_bipartite_cayley,
    haar_graph,
    is_cayley,
    is_nonsplit_metacyclic,
    is_vertex_transitive,
    nonsplit_family_graph,
    quasi_cayley_family,
    right_translations,
    translate,
    verify_nonsplit_example,
    verify_witness,
)
from .survey import (
    ScanReport,
    all_haar_alg_cayley,
    closure_check,
    dihedral_pattern_scan,
    dihedral_rigidity_scan,
    gendih_valency_check,
)

__version__ = "0.1.0"
