"""Monotonic operators, quotient posets and embeddings into up-set lattices.

A monotonic operator on ``X`` assigns to each element a subset of ``X`` so
that ``x <= y`` implies ``G(x) ⊇ G(y)``.  Elements with equal values form the
classes of the quotient ``X/G``, ordered by reverse inclusion of values.
For an up-set ``T`` of ``X/G`` the union of its classes ``S_T`` is an up-set
of ``X``; the family of all ``S_T`` is a {∅, X}-sublattice of ``F_X``
isomorphic to ``F_{X/G}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .birkhoff import UpSetFamily, represents, upset_family, upset_lattice
from .errors import (
    CapExceeded,
    CarrierMismatch,
    InternalDisagreement,
    NotMonotone,
    PreconditionFailed,
    VerificationFailed,
)
from .lattice import Lattice, is_atomic_boolean, m_poset, meet_irreducible_indices
from .poset import DEFAULT_SIZE_CAP, MASK_LIMIT, Poset, bits, index_isomorphism, is_upset, upset_masks

DEFAULT_FAMILY_CAP = 24


class MonotonicOperator:
    """``G: X -> subsets of X`` with ``x <= y ⇒ G(x) ⊇ G(y)``; values are bitmasks."""

    def __init__(self, carrier: Poset, assign: Sequence[int], name: str | None = None):
        assign = tuple(int(a) for a in assign)
        if len(assign) != carrier.n:
            raise ValueError("one value per element is required")
        full = carrier.full_mask
        for a in assign:
            if a & ~full:
                raise ValueError("operator values must be subsets of the carrier")
        for x, y in np.argwhere(carrier.lt):
            if assign[y] & ~assign[x]:
                raise NotMonotone(
                    f"{carrier.names[x]} <= {carrier.names[y]} but "
                    f"G({carrier.names[x]})={carrier.label(assign[x])} does not contain "
                    f"G({carrier.names[y]})={carrier.label(assign[y])}"
                )
        self.carrier = carrier
        self.assign = assign
        self.name = name

    @classmethod
    def from_mapping(
        cls, carrier: Poset, mapping: Mapping[str, Iterable[str]], name: str | None = None
    ) -> MonotonicOperator:
        missing = [x for x in carrier.names if x not in mapping]
        if missing:
            raise ValueError(f"no value given for {missing}")
        return cls(carrier, [carrier.mask_of(mapping[x]) for x in carrier.names], name)

    def __call__(self, x: str) -> frozenset[str]:
        return frozenset(self.carrier.names_of(self.assign[self.carrier.idx(x)]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonotonicOperator):
            return NotImplemented
        return self.carrier == other.carrier and self.assign == other.assign

    def __hash__(self) -> int:
        return hash((self.carrier, self.assign))

    def __repr__(self) -> str:
        body = ", ".join(f"{x}->{self.carrier.label(a)}" for x, a in zip(self.carrier.names, self.assign))
        return f"MonotonicOperator({body})"

    def as_dict(self) -> dict[str, frozenset[str]]:
        return {x: self(x) for x in self.carrier.names}


@dataclass
class QuotientPoset:
    """``X/G``: classes of equal ``G``-value ordered by reverse inclusion of values."""

    base: Poset
    operator: MonotonicOperator
    classes: tuple[int, ...]
    values: tuple[int, ...]
    class_of: tuple[int, ...]
    poset: Poset

    def class_names(self, mask: int) -> tuple[str, ...]:
        return self.poset.names_of(mask)

    def members(self, cls: str) -> frozenset[str]:
        return frozenset(self.base.names_of(self.classes[self.poset.idx(cls)]))

    def value_poset(self) -> Poset:
        """``(G(X), ⊇)`` with values named by braced labels."""
        vals = self.values
        leq = np.array([[(b & ~a) == 0 for b in vals] for a in vals], dtype=bool)
        return Poset([self.base.label(v) for v in vals], leq, validate=False)

    def union_of(self, class_mask: int) -> int:
        """``S_T``: the union of the classes in ``class_mask``."""
        out = 0
        for c in bits(class_mask):
            out |= self.classes[c]
        return out


def quotient(G: MonotonicOperator) -> QuotientPoset:
    """Partition by equal values; a class is named ``[r]`` after its least-index member."""
    X = G.carrier
    first: dict[int, int] = {}
    class_of = []
    for x, v in enumerate(G.assign):
        class_of.append(first.setdefault(v, len(first)))
    values = tuple(first)
    classes = tuple(sum(1 << x for x in range(X.n) if class_of[x] == c) for c in range(len(values)))
    names = [f"[{X.names[(m & -m).bit_length() - 1]}]" for m in classes]
    leq = np.array([[(b & ~a) == 0 for b in values] for a in values], dtype=bool)
    qname = f"{X.name}/{G.name}" if X.name and G.name else None
    poset = Poset(names, leq, qname, validate=False)
    return QuotientPoset(X, G, classes, values, tuple(class_of), poset)


@dataclass
class EmbeddingWitness:
    """``F_{X/G} ≅ (S_G, ⊇)`` with ``S_G`` a {∅, X}-sublattice of ``F_X``."""

    host: UpSetFamily
    image: UpSetFamily
    quotient: QuotientPoset
    iso: dict[int, int]

    @cached_property
    def quotient_lattice(self) -> Lattice:
        return upset_lattice(self.quotient.poset, cap=MASK_LIMIT)

    def image_of(self, classes: Iterable[str]) -> frozenset[str]:
        q = self.quotient
        return frozenset(self.host.carrier.names_of(self.iso[q.poset.mask_of(classes)]))


def embedded_family(G: MonotonicOperator, cap: int = DEFAULT_SIZE_CAP) -> EmbeddingWitness:
    """Build ``S_G`` and check every property of the embedding ``F_{X/G} -> F_X``."""
    X = G.carrier
    q = quotient(G)
    t_masks = upset_masks(q.poset, cap).tolist()
    iso = {t: q.union_of(t) for t in t_masks}
    host = upset_family(X, cap)
    image = UpSetFamily(X, iso.values(), f"S_{G.name}" if G.name else None)

    def fail(msg: str) -> None:
        raise InternalDisagreement(f"embedding of F_(X/G) into F_X: {msg}", operator=G)

    if len(image) != len(t_masks):
        fail("T -> S_T is not injective")
    if not image.has_bounds():
        fail("∅ or X missing from S_G")
    if not all(is_upset(X, s) for s in image.masks):
        fail("some S_T is not an up-set of X")
    if not (image.is_union_closed() and image.is_intersection_closed()):
        fail("S_G is not closed under union and intersection")
    for t1 in t_masks:
        for t2 in t_masks:
            s1, s2 = iso[t1], iso[t2]
            if ((t2 & ~t1) == 0) != ((s2 & ~s1) == 0):
                fail("order not preserved and reflected")
            if iso[t1 | t2] != s1 | s2 or iso[t1 & t2] != s1 & s2:
                fail("unions/intersections not preserved")
    return EmbeddingWitness(host, image, q, iso)


# -- sublattices of F_X ------------------------------------------------------

_CATALOGUE: dict[tuple[Poset, int], list[UpSetFamily]] = {}


def complete_sublattices(base: Poset, cap: int = DEFAULT_FAMILY_CAP) -> list[UpSetFamily]:
    """Every family of up-sets of ``base`` containing ∅ and ``base`` and closed
    under union and intersection, ordered by (size, sorted bitmask list).
    """
    masks = upset_masks(base, MASK_LIMIT)
    k = len(masks)
    if k > cap:
        raise CapExceeded("sublattice enumeration over F_X", k, cap)
    key = (base, k)
    if key not in _CATALOGUE:
        union_tab = np.searchsorted(masks, masks[:, None] | masks[None, :]).astype(np.int64)
        inter_tab = np.searchsorted(masks, masks[:, None] & masks[None, :]).astype(np.int64)
        seed = 1 | (1 << (k - 1))
        fams = kernels.closed_families(seed, union_tab, inter_tab)
        out = []
        for f in fams.tolist():
            out.append(UpSetFamily(base, [int(masks[i]) for i in bits(f)]))
        out.sort(key=lambda fam: (len(fam), fam.masks))
        if len(_CATALOGUE) > 512:
            _CATALOGUE.clear()
        _CATALOGUE[key] = out
    return _CATALOGUE[key]


def canonical_operator(S: UpSetFamily) -> MonotonicOperator:
    """``G(x) = ⋂ {p ∈ S | x ∈ p}``; verified to satisfy ``S_G = S``."""
    if not S.is_complete_sublattice():
        raise PreconditionFailed("family must contain ∅ and the carrier and be closed under ∪ and ∩")
    X = S.carrier
    assign = []
    for x in range(X.n):
        acc = X.full_mask
        for p in S.masks:
            if p >> x & 1:
                acc &= p
        assign.append(acc)
    G = MonotonicOperator(X, assign, "G")
    got = embedded_family(G, cap=MASK_LIMIT).image
    if got.masks != S.masks:
        raise VerificationFailed("S_G differs from the family it was built from", family=S, got=got)
    return G


# -- deciding L0 ∈ E(L) --------------------------------------------------------


def find_lattice_embedding(L0: Lattice, L: Lattice) -> dict[str, str] | None:
    """Search directly for an injective map preserving meets, joins, bottom and top."""
    n0 = L0.n
    if n0 > L.n:
        return None
    order = [L0.bottom] + ([L0.top] if L0.top != L0.bottom else [])
    order += [i for i in L0.order.linear_extension if i not in order]
    pos = {x: k for k, x in enumerate(order)}
    m0, j0, l0 = L0.meet_table.tolist(), L0.join_table.tolist(), L0.leq.tolist()
    m1, j1, l1 = L.meet_table.tolist(), L.join_table.tolist(), L.leq.tolist()
    # pairs of earlier elements whose meet or join is this element
    producers = [[] for _ in range(n0)]
    for a in range(n0):
        for b in range(a + 1, n0):
            for table, kind in ((m0, 0), (j0, 1)):
                c = table[a][b]
                if c not in (a, b) and pos[c] > max(pos[a], pos[b]):
                    producers[c].append((a, b, kind))
    img = [-1] * n0
    used = [False] * L.n
    fixed = {L0.bottom: L.bottom, L0.top: L.top}

    def candidates(x: int) -> list[int]:
        forced = fixed.get(x)
        for a, b, kind in producers[x]:
            v = (m1 if kind == 0 else j1)[img[a]][img[b]]
            if forced is None:
                forced = v
            elif forced != v:
                return []
        return [forced] if forced is not None else list(range(L.n))

    def fits(x: int, y: int) -> bool:
        for z in order[: pos[x]]:
            w = img[z]
            if l0[x][z] != l1[y][w] or l0[z][x] != l1[w][y]:
                return False
            mz, jz = img[m0[x][z]], img[j0[x][z]]
            if mz >= 0 and mz != m1[y][w]:
                return False
            if jz >= 0 and jz != j1[y][w]:
                return False
        return True

    def extend(k: int) -> bool:
        if k == n0:
            return True
        x = order[k]
        for y in candidates(x):
            if used[y] or not fits(x, y):
                continue
            img[x] = y
            used[y] = True
            if extend(k + 1):
                return True
            img[x] = -1
            used[y] = False
        return False

    if not extend(0):
        return None
    return {L0.names[x]: L.names[img[x]] for x in range(n0)}


@dataclass
class EmbeddingVerdict:
    """Outcome of :func:`decide_embedding`.

    When ``embeds`` is true, ``operator`` is a monotonic operator on M(L)
    with ``L0 ≅ F_{M(L)/G}``, ``family`` is its ``S_G`` and ``iso`` maps each
    element of ``L0`` to an up-set of the quotient (by label).
    """

    embeds: bool
    sublattice_leg: bool
    direct_leg: bool
    base: Poset
    operator: MonotonicOperator | None = None
    family: UpSetFamily | None = None
    iso: dict[str, str] = field(default_factory=dict)
    direct_map: dict[str, str] | None = None


def decide_embedding(L0: Lattice, L: Lattice, cap: int = DEFAULT_FAMILY_CAP) -> EmbeddingVerdict:
    """Decide whether ``L0`` embeds into ``L`` preserving all meets, joins, 0 and 1.

    Sublattice leg: walk the {∅, M(L)}-sublattices of ``F_{M(L)}`` in
    canonical order, build the canonical operator of each and test
    ``L0 ≅ F_{M(L)/G}``.  Direct leg: :func:`find_lattice_embedding`.
    Both legs must agree.
    """
    for lat, role in ((L0, "L0"), (L, "L")):
        if lat.n < 2 or not represents(lat).representable:
            raise PreconditionFailed(f"{role} must be a non-trivial representable lattice")
    base = m_poset(L)
    found = None
    for fam in complete_sublattices(base, cap):
        if len(fam) != L0.n:
            continue
        G = canonical_operator(fam)
        q = quotient(G)
        F = upset_lattice(q.poset, cap=MASK_LIMIT)
        image = index_isomorphism(L0.order, F.order)
        if image is not None:
            found = (G, fam, {L0.names[i]: F.names[j] for i, j in enumerate(image)})
            break
    direct = find_lattice_embedding(L0, L)
    sub_leg, dir_leg = found is not None, direct is not None
    if sub_leg != dir_leg:
        raise InternalDisagreement(
            f"embedding legs disagree: sublattice={sub_leg}, direct={dir_leg}",
            L0=L0,
            L=L,
        )
    verdict = EmbeddingVerdict(sub_leg, sub_leg, dir_leg, base, direct_map=direct)
    if found:
        verdict.operator, verdict.family, verdict.iso = found
    return verdict


def boolean_embedding_operator(L: Lattice, S: UpSetFamily) -> MonotonicOperator:
    """The operator built for a sublattice of an atomic boolean lattice.

    ``S`` is a family of subsets of M(L) closed under union and intersection
    (the image of ``L0``).  Its smallest member is removed from every member,
    the canonical fuzzy map is taken on the largest remaining member, and
    every other element of M(L) is sent to the value of the least-index
    element ``w`` of that largest member.  The result is verified to satisfy
    ``(S, ⊇) ≅ F_{M(L)/G}``.
    """
    if not is_atomic_boolean(L):
        raise PreconditionFailed("the host lattice must be atomic boolean")
    base = m_poset(L)
    if S.carrier != base:
        raise CarrierMismatch("the family must consist of subsets of M(L)")
    if len(S) < 2 or not (S.is_union_closed() and S.is_intersection_closed()):
        raise PreconditionFailed("the family must be a non-trivial sublattice")
    smallest = base.full_mask
    for m in S.masks:
        smallest &= m
    shifted = sorted({m & ~smallest for m in S.masks})
    largest = 0
    for m in shifted:
        largest |= m
    mu = {}
    for x in bits(largest):
        acc = largest
        for p in shifted:
            if p >> x & 1:
                acc &= p
        mu[x] = acc
    w = (largest & -largest).bit_length() - 1
    assign = [mu.get(x, mu[w]) for x in range(base.n)]
    G = MonotonicOperator(base, assign, "G")

    shifted_family = UpSetFamily(base, shifted)
    sub = shifted_family.lattice
    m_vals = {shifted_family.masks[i] for i in meet_irreducible_indices(sub)}
    if set(assign) != m_vals:
        raise VerificationFailed("G(M(L)) differs from M(S')", got=set(assign), want=m_vals)
    F = upset_lattice(quotient(G).poset, cap=MASK_LIMIT)
    if index_isomorphism(S.lattice.order, F.order) is None:
        raise VerificationFailed("F_(M(L)/G) is not isomorphic to the sublattice")
    return G
