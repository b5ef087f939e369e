"""Lattice-valued fuzzy up-sets and their cut families.

A fuzzy up-set is a monotone map ``mu: X -> L``.  Its ``p``-cut is
``{x | mu(x) >= p}``, which is always an up-set of ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import numpy as np

from .birkhoff import UpSetFamily
from .errors import (
    CutMismatch,
    InternalDisagreement,
    MissingFullSet,
    NotAnUpSet,
    NotIntersectionClosed,
    NotMonotone,
    PreconditionFailed,
)
from .lattice import Check, Lattice, lattice_from_poset, meet_irreducible_indices
from .poset import DEFAULT_SIZE_CAP, Poset, UpSet, bits, is_upset, upset_masks


class FuzzyUpSet:
    """A monotone map from ``domain`` into ``codomain`` (stored by index)."""

    def __init__(self, domain: Poset, codomain: Lattice, values, name: str | None = None):
        values = tuple(int(v) for v in values)
        if len(values) != domain.n:
            raise ValueError("one value per domain element is required")
        leq = codomain.leq
        for x, y in np.argwhere(domain.leq):
            if not leq[values[x], values[y]]:
                raise NotMonotone(
                    f"{domain.names[x]} <= {domain.names[y]} but "
                    f"mu({domain.names[x]})={codomain.names[values[x]]} is not below "
                    f"mu({domain.names[y]})={codomain.names[values[y]]}"
                )
        self.domain = domain
        self.codomain = codomain
        self.values = values
        self.name = name

    @classmethod
    def from_mapping(
        cls, domain: Poset, codomain: Lattice, mapping: Mapping[str, str], name: str | None = None
    ) -> FuzzyUpSet:
        missing = [x for x in domain.names if x not in mapping]
        if missing:
            raise ValueError(f"no value given for {missing}")
        return cls(domain, codomain, [codomain.idx(mapping[x]) for x in domain.names], name)

    def __call__(self, x: str) -> str:
        return self.codomain.names[self.values[self.domain.idx(x)]]

    def as_dict(self) -> dict[str, str]:
        return {x: self.codomain.names[v] for x, v in zip(self.domain.names, self.values)}

    def __repr__(self) -> str:
        return f"FuzzyUpSet({self.as_dict()})"

    @cached_property
    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.values)))

    def cut_mask(self, p: int) -> int:
        leq = self.codomain.leq
        m = 0
        for x, v in enumerate(self.values):
            if leq[p, v]:
                m |= 1 << x
        return m


def cut(mu: FuzzyUpSet, p: str) -> UpSet:
    """``mu_p = {x | mu(x) >= p}``."""
    return UpSet(mu.domain, mu.cut_mask(mu.codomain.idx(p)))


@dataclass
class CutFamily:
    source: FuzzyUpSet
    cuts: dict[str, UpSet]

    @property
    def distinct_cuts(self) -> UpSetFamily:
        return UpSetFamily(self.source.domain, {u.mask for u in self.cuts.values()})


def cut_family(mu: FuzzyUpSet) -> CutFamily:
    L = mu.codomain
    return CutFamily(mu, {p: UpSet(mu.domain, mu.cut_mask(i)) for i, p in enumerate(L.names)})


def l_mu_indices(mu: FuzzyUpSet) -> list[int]:
    """Codomain indices of all meets of subsets of the image (top included)."""
    L = mu.codomain
    closed = {L.top}
    for v in mu.image:
        closed |= {int(L.meet_table[s, v]) for s in closed}
    return sorted(closed)


def l_mu(mu: FuzzyUpSet) -> Lattice:
    """The meet-closure of ``mu(X)`` in the codomain, with the induced order."""
    L = mu.codomain
    name = f"{L.name}^{mu.name}" if L.name and mu.name else None
    return lattice_from_poset(L.order.subposet(l_mu_indices(mu), name))


def _check_family(family: UpSetFamily) -> None:
    X = family.carrier
    for m in family.masks:
        if not is_upset(X, m):
            raise NotAnUpSet(f"{X.label(m)} is not an up-set")
    if X.full_mask not in family:
        raise MissingFullSet("the family must contain the whole carrier")
    if not family.is_intersection_closed():
        bad = next(
            (a, b) for a in family.masks for b in family.masks if a & b not in family
        )
        raise NotIntersectionClosed(
            f"{X.label(bad[0])} ∩ {X.label(bad[1])} is missing from the family"
        )


def canonical_fuzzy(family: UpSetFamily) -> FuzzyUpSet:
    """``mu(x) = ⋂ {p ∈ family | x ∈ p}``, valued in ``(family, ⊇)``.

    Verifies that the cut family is exactly ``family`` and that every member
    is its own cut; raises :class:`CutMismatch` otherwise.
    """
    _check_family(family)
    X = family.carrier
    F = family.lattice
    pos = {m: i for i, m in enumerate(family.masks)}
    values = []
    for x in range(X.n):
        acc = X.full_mask
        for m in family.masks:
            if m >> x & 1:
                acc &= m
        values.append(pos[acc])
    mu = FuzzyUpSet(X, F, values, name="mu")
    for i, m in enumerate(family.masks):
        got = mu.cut_mask(i)
        if got != m:
            raise CutMismatch(f"cut at {X.label(m)} is {X.label(got)}")
    if set(cut_family(mu).distinct_cuts.masks) != set(family.masks):
        raise CutMismatch("cut family differs from the input family")
    return mu


def _antichain_masks(X: Poset, cap: int) -> list[int]:
    """Antichains as the minimal-element sets of the up-sets, by (size, mask)."""
    lt = X.lt
    out = []
    for u in upset_masks(X, cap).tolist():
        mins = 0
        for i in bits(u):
            if not any(lt[j, i] for j in bits(u)):
                mins |= 1 << i
        out.append(mins)
    return sorted(out, key=lambda m: (m.bit_count(), m))


def a2_violation(mu: FuzzyUpSet, x: str, family: list[str]) -> bool:
    """True iff ``mu(x) >= ⋀ mu(x_i)`` while ``x`` is above none of the ``x_i``."""
    X, L = mu.domain, mu.codomain
    xi = X.idx(x)
    idx = [X.idx(y) for y in family]
    bound = L.meet_all(mu.values[i] for i in idx)
    return bool(L.leq[bound, mu.values[xi]]) and not any(X.leq[i, xi] for i in idx)


def cuts_are_all_upsets(mu: FuzzyUpSet, cap: int = DEFAULT_SIZE_CAP) -> Check:
    """Whether the cuts of ``mu`` are exactly all up-sets of the domain.

    Decided twice: by comparing the cut family with the enumerated up-sets,
    and by the order condition "mu(x) >= ⋀ mu(x_i) implies x >= x_i for some i"
    scanned over every ``x`` and every antichain ``{x_i}`` (arbitrary
    families reduce to their minimal elements without changing either side).
    The two must agree.  The witness is ``(x, [x_i, ...])``.
    """
    X, L = mu.domain, mu.codomain
    all_up = set(upset_masks(X, cap).tolist())
    cuts = {mu.cut_mask(p) for p in range(L.n)}
    a1 = cuts == all_up

    witness = None
    antichains = _antichain_masks(X, cap)
    for x in range(X.n):
        vx = mu.values[x]
        below_x = X.down_masks[x]
        for a in antichains:
            if a & below_x:
                continue
            if L.leq[L.meet_all(mu.values[i] for i in bits(a)), vx]:
                witness = (X.names[x], list(X.names_of(a)))
                break
        if witness:
            break
    a2 = witness is None
    if a1 != a2:
        raise InternalDisagreement(
            "cut-family and order-condition routes disagree", a1=a1, a2=a2, witness=witness
        )
    return Check(a1, witness)


def image_in_m(mu: FuzzyUpSet) -> Check:
    """Check ``mu(x) ∈ M(L^mu)`` for every ``x`` (requires all up-sets as cuts)."""
    if not cuts_are_all_upsets(mu):
        raise PreconditionFailed("the cuts of mu are not all the up-sets of its domain")
    sub = l_mu(mu)
    m_names = {sub.names[i] for i in meet_irreducible_indices(sub)}
    for x, v in zip(mu.domain.names, mu.values):
        if mu.codomain.names[v] not in m_names:
            return Check(False, x)
    return Check(True)
