"""Classes of monotonic operators on M(L) and the lattice they form.

Two operators are equivalent when they produce the same family ``S_G``; the
classes are ordered by inclusion of those families.  Every {∅, M(L)}-sublattice
of ``F_{M(L)}`` is the family of its canonical operator, so the classes are in
bijection with those sublattices and each class is keyed by its family.
Meet is intersection of families; join is the sublattice generated by the
union.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .birkhoff import UpSetFamily
from .errors import CarrierMismatch, InternalDisagreement, PreconditionFailed
from .lattice import Lattice, is_distributive, lattice_from_poset, m_poset
from .poset import MASK_LIMIT, Poset, bits, upset_masks
from .quotient import (
    DEFAULT_FAMILY_CAP,
    MonotonicOperator,
    canonical_operator,
    complete_sublattices,
    embedded_family,
)

__all__ = [
    "ClassLattice",
    "OperatorClass",
    "are_equivalent",
    "canonical_operator",
    "class_lattice",
    "classes_over",
]


def are_equivalent(G1: MonotonicOperator, G2: MonotonicOperator) -> bool:
    if G1.carrier != G2.carrier:
        raise CarrierMismatch("operators live on different posets")
    return embedded_family(G1, MASK_LIMIT).image.masks == embedded_family(G2, MASK_LIMIT).image.masks


@dataclass(frozen=True)
class OperatorClass:
    representative: MonotonicOperator
    family: UpSetFamily

    def __len__(self) -> int:
        return len(self.family)

    def contains(self, G: MonotonicOperator) -> bool:
        return embedded_family(G, MASK_LIMIT).image.masks == self.family.masks


@dataclass
class ClassLattice:
    """The ordered set of operator classes with constructive meet and join tables."""

    base: Poset
    classes: list[OperatorClass]
    lattice: Lattice
    meet_table: np.ndarray
    join_table: np.ndarray

    def __len__(self) -> int:
        return len(self.classes)

    def index_of(self, family: UpSetFamily | MonotonicOperator) -> int:
        if isinstance(family, MonotonicOperator):
            family = embedded_family(family, MASK_LIMIT).image
        for i, c in enumerate(self.classes):
            if c.family.masks == family.masks:
                return i
        raise KeyError("no class with this family")

    def meet(self, i: int, j: int) -> OperatorClass:
        return self.classes[self.meet_table[i, j]]

    def join(self, i: int, j: int) -> OperatorClass:
        return self.classes[self.join_table[i, j]]

    @property
    def top(self) -> OperatorClass:
        return self.classes[self.lattice.top]

    @property
    def bottom(self) -> OperatorClass:
        return self.classes[self.lattice.bottom]


def classes_over(base: Poset, cap: int = DEFAULT_FAMILY_CAP) -> ClassLattice:
    """The class lattice for operators on ``base`` (playing the role of M(L))."""
    masks = upset_masks(base, MASK_LIMIT)
    fams = complete_sublattices(base, cap)
    pos = {int(m): i for i, m in enumerate(masks)}
    codes = np.array(
        [sum(1 << pos[m] for m in f.masks) for f in fams], dtype=np.int64
    )
    classes = [OperatorClass(canonical_operator(f), f) for f in fams]
    n = len(classes)
    leq = (codes[:, None] & ~codes[None, :]) == 0
    names = [f"S{i}" for i in range(n)]
    order = Poset(names, leq, f"H({base.name})" if base.name else None, validate=False)
    lat = lattice_from_poset(order)

    lookup = {int(c): i for i, c in enumerate(codes)}
    union_tab = np.searchsorted(masks, masks[:, None] | masks[None, :]).astype(np.int64)
    inter_tab = np.searchsorted(masks, masks[:, None] & masks[None, :]).astype(np.int64)
    meet = np.empty((n, n), dtype=np.int64)
    join = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            a, b = int(codes[i]), int(codes[j])
            meet[i, j] = meet[j, i] = lookup[a & b]
            join[i, j] = join[j, i] = lookup[kernels.close_family(a | b, union_tab, inter_tab)]
    if not (np.array_equal(meet, lat.meet_table) and np.array_equal(join, lat.join_table)):
        raise InternalDisagreement("class lattice: constructive meet/join differ from glb/lub")
    return ClassLattice(base, classes, lat, meet, join)


def class_lattice(L: Lattice, cap: int = DEFAULT_FAMILY_CAP, force: bool = False) -> ClassLattice:
    """Operator classes on M(L) for a finite distributive lattice ``L``.

    ``force`` skips the distributivity requirement; the result is then an
    experiment, not a claim.
    """
    if L.n < 2:
        raise PreconditionFailed("the lattice must be non-trivial")
    if not force:
        verdict = is_distributive(L)
        if not verdict:
            raise PreconditionFailed(f"lattice is not distributive: witness {verdict.witness}")
    return classes_over(m_poset(L), cap)


def family_codes(cl: ClassLattice) -> list[list[str]]:
    """Each class family as a list of braced labels (for reports)."""
    return [c.family.labels() for c in cl.classes]


def members_of(family: UpSetFamily) -> list[frozenset[str]]:
    X = family.carrier
    return [frozenset(X.names[i] for i in bits(m)) for m in family.masks]
