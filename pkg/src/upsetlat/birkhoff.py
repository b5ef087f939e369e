"""Up-set lattices F_X and the representation ``L ≅ F_{M(L)}``.

Families of up-sets are ordered by reverse inclusion, so in ``F_X`` the meet
is union, the join is intersection, the bottom is ``X`` and the top is ``∅``.
The representation map sends ``p`` to ``{x ∈ M(L) | x >= p}``; its inverse
takes the meet of a set of meet-irreducibles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .errors import InternalDisagreement, PreconditionFailed
from .lattice import (
    Check,
    Lattice,
    has_dp,
    is_distributive,
    lattice_from_poset,
    m_poset,
    meet_irreducible_indices,
    satisfies_m,
)
from .poset import DEFAULT_SIZE_CAP, Poset, UpSet, index_isomorphism, is_upset, poset_isomorphism, upset_masks


class UpSetFamily:
    """A set of up-sets of ``carrier``, kept as sorted bitmasks."""

    def __init__(self, carrier: Poset, masks: Iterable[int], name: str | None = None):
        self.carrier = carrier
        self.masks = tuple(sorted({int(m) for m in masks}))
        self.name = name

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[UpSet]:
        return (UpSet(self.carrier, m) for m in self.masks)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, UpSet):
            return item.carrier == self.carrier and item.mask in self._mask_set
        return item in self._mask_set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UpSetFamily):
            return NotImplemented
        return self.carrier == other.carrier and self.masks == other.masks

    def __hash__(self) -> int:
        return hash((self.carrier, self.masks))

    def __repr__(self) -> str:
        return "UpSetFamily(" + ", ".join(self.labels()) + ")"

    @cached_property
    def _mask_set(self) -> frozenset[int]:
        return frozenset(self.masks)

    def labels(self) -> list[str]:
        return [self.carrier.label(m) for m in self.masks]

    def member_sets(self) -> set[frozenset[str]]:
        return {frozenset(self.carrier.names_of(m)) for m in self.masks}

    def all_upsets(self) -> bool:
        return all(is_upset(self.carrier, m) for m in self.masks)

    def has_bounds(self) -> bool:
        return 0 in self._mask_set and self.carrier.full_mask in self._mask_set

    def is_union_closed(self) -> bool:
        s = self._mask_set
        return all(a | b in s for a in self.masks for b in self.masks)

    def is_intersection_closed(self) -> bool:
        s = self._mask_set
        return all(a & b in s for a in self.masks for b in self.masks)

    def is_complete_sublattice(self) -> bool:
        """Contains ∅ and the carrier and is closed under union and intersection."""
        return self.has_bounds() and self.is_union_closed() and self.is_intersection_closed()

    @cached_property
    def lattice(self) -> Lattice:
        """``(family, ⊇)`` as a :class:`Lattice`; elements are named by braced labels."""
        leq = np.array([[(b & ~a) == 0 for b in self.masks] for a in self.masks], dtype=bool)
        order = Poset(self.labels(), leq, self.name, validate=False)
        return lattice_from_poset(order)


def upset_family(X: Poset, cap: int = DEFAULT_SIZE_CAP) -> UpSetFamily:
    return UpSetFamily(X, upset_masks(X, cap).tolist(), f"F({X.name})" if X.name else None)


def upset_lattice(X: Poset, cap: int = DEFAULT_SIZE_CAP) -> Lattice:
    """``F_X``: all up-sets of ``X`` under reverse inclusion.

    Checks that the result is distributive with meet = union and
    join = intersection; a failure is a counterexample certificate.
    """
    fam = upset_family(X, cap)
    L = fam.lattice
    m = np.array(fam.masks, dtype=np.int64)
    pos = {int(v): i for i, v in enumerate(m)}
    union = np.vectorize(pos.__getitem__)(m[:, None] | m[None, :])
    inter = np.vectorize(pos.__getitem__)(m[:, None] & m[None, :])
    if not (np.array_equal(union, L.meet_table) and np.array_equal(inter, L.join_table)):
        raise InternalDisagreement("up-set lattice: meet/join differ from union/intersection")
    verdict = is_distributive(L)
    if not verdict:
        raise InternalDisagreement("up-set lattice is not distributive", witness=verdict.witness)
    return L


@dataclass
class BirkhoffMap:
    """The map ``p ↦ {x ∈ M(L) | x >= p}`` and the family of its values."""

    lattice: Lattice
    base: Poset
    images: dict[str, UpSet]

    @property
    def family(self) -> UpSetFamily:
        return UpSetFamily(self.base, {u.mask for u in self.images.values()})

    def is_injective(self) -> bool:
        return len({u.mask for u in self.images.values()}) == len(self.images)

    def __getitem__(self, p: str) -> UpSet:
        return self.images[p]


def birkhoff_map(L: Lattice) -> BirkhoffMap:
    mi = meet_irreducible_indices(L)
    base = m_poset(L)
    images = {}
    for r in range(L.n):
        mask = 0
        for pos, x in enumerate(mi):
            if L.leq[r, x]:
                mask |= 1 << pos
        images[L.names[r]] = UpSet(base, mask)
    return BirkhoffMap(L, base, images)


@dataclass
class Representation:
    """Outcome of :func:`represents`.

    ``b3_leg`` is the predicate route (distributive, DP, condition (M));
    ``b1_leg`` is the structural route (an order isomorphism onto
    ``F_{M(L)}`` exists).  ``mapping`` is the canonical isomorphism when the
    lattice is representable.
    """

    lattice: Lattice
    representable: bool
    b1_leg: bool
    b3_leg: bool
    checks: dict[str, Check]
    base: Poset | None = None
    upset_lattice: Lattice | None = None
    mapping: dict[str, UpSet] = field(default_factory=dict)

    @property
    def reason(self) -> str:
        if self.representable:
            return f"isomorphic to the up-sets of M(L) ({len(self.base or ())} elements)"
        failed = [f"{k} (witness {v.witness})" for k, v in self.checks.items() if not v]
        return "fails " + ", ".join(failed)


def represents(L: Lattice, cap: int = DEFAULT_SIZE_CAP) -> Representation:
    """Decide whether ``L`` is (isomorphic to) the up-set lattice of a poset.

    Both legs are always computed and must agree; when they do and the
    answer is yes, the canonical map is verified to be an order isomorphism
    with ``⋀ f(r) = r``.
    """
    if L.n < 2:
        raise PreconditionFailed("representability is only defined for non-trivial lattices")
    checks = {"distributive": is_distributive(L), "DP": has_dp(L), "(M)": satisfies_m(L)}
    b3 = all(checks.values())
    base = m_poset(L)
    F = upset_lattice(base, cap)
    b1 = index_isomorphism(L.order, F.order) is not None
    if b1 != b3:
        raise InternalDisagreement(
            f"representability legs disagree for {L.name}: iso={b1}, predicates={b3}",
            b1=b1,
            b3=b3,
            checks=checks,
        )
    rep = Representation(L, b3, b1, b3, checks, base, F)
    if b3:
        bm = birkhoff_map(L)
        _verify_canonical_map(L, bm)
        rep.mapping = bm.images
    return rep


def _verify_canonical_map(L: Lattice, bm: BirkhoffMap) -> None:
    masks = [bm.images[nm].mask for nm in L.names]
    if not bm.is_injective() or set(masks) != set(upset_masks(bm.base, 62).tolist()):
        raise InternalDisagreement("canonical map is not a bijection onto F_{M(L)}")
    mi = meet_irreducible_indices(L)
    for p in range(L.n):
        for q in range(L.n):
            if bool(L.leq[p, q]) != ((masks[q] & ~masks[p]) == 0):
                raise InternalDisagreement("canonical map does not preserve/reflect order")
        if L.meet_all(mi[i] for i in range(len(mi)) if masks[p] >> i & 1) != p:
            raise InternalDisagreement("meet of f(r) differs from r")


def m_poset_iso_criterion(L1: Lattice, L2: Lattice) -> bool:
    """Decide ``L1 ≅ L2`` via ``(M(L1), <=) ≅ (M(L2), <=)``; cross-checked directly."""
    for L in (L1, L2):
        rep = represents(L)
        if not rep.representable:
            raise PreconditionFailed(f"{L.name or 'lattice'} is not representable: {rep.reason}")
    via_m = poset_isomorphism(m_poset(L1), m_poset(L2)) is not None
    direct = index_isomorphism(L1.order, L2.order) is not None
    if via_m != direct:
        raise InternalDisagreement("M-poset criterion disagrees with direct isomorphism")
    return via_m
