"""Finite lattices as up-set lattices.

Posets, lattices and their meet-irreducibles; the representation of finite
distributive lattices as lattices of up-sets; lattice-valued fuzzy up-sets;
quotients by monotonic operators and the embeddings they induce; and the
lattice of operator classes.
"""

from __future__ import annotations

from types import ModuleType as _ModuleType

from .birkhoff import (
    Representation,
    UpSetFamily,
    birkhoff_map,
    m_poset_iso_criterion,
    represents,
    upset_family,
    upset_lattice,
)
from .classes import ClassLattice, OperatorClass, are_equivalent, class_lattice, classes_over
from .errors import (
    CapExceeded,
    CarrierMismatch,
    CutMismatch,
    CycleDetected,
    DuplicateName,
    InternalDisagreement,
    LatticeError,
    MissingFullSet,
    NotALattice,
    NotAnUpSet,
    NotIntersectionClosed,
    NotMonotone,
    ParseError,
    PreconditionFailed,
    UnknownElement,
    VerificationFailed,
)
from .fuzzy import (
    CutFamily,
    FuzzyUpSet,
    canonical_fuzzy,
    cut,
    cut_family,
    cuts_are_all_upsets,
    image_in_m,
    l_mu,
)
from .lattice import (
    Check,
    Lattice,
    chain_lattice,
    diamond_m3,
    graded_chain_check,
    has_dp,
    is_atomic_boolean,
    is_distributive,
    is_sublattice,
    lattice_from_poset,
    lattice_isomorphism,
    m_poset,
    meet_irreducibles,
    pentagon_n5,
    powerset_lattice,
    satisfies_m,
)
from .poset import (
    Poset,
    UpSet,
    all_upsets,
    enumerate_posets,
    maximal_chains,
    poset_isomorphism,
    principal_upset,
    validate_poset,
)
from .quotient import (
    EmbeddingVerdict,
    EmbeddingWitness,
    MonotonicOperator,
    boolean_embedding_operator,
    canonical_operator,
    complete_sublattices,
    decide_embedding,
    embedded_family,
    quotient,
)

__version__ = "0.1.0"

__all__ = sorted(
    name
    for name, value in dict(globals()).items()
    if not name.startswith("_") and name != "annotations" and not isinstance(value, _ModuleType)
)
