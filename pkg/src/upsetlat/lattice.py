"""Finite lattices and the predicates that decide up-set representability.

For a finite lattice every meet and join is finite, so "complete" is
automatic, completely meet-irreducible means meet-irreducible, and both
infinite distributive laws collapse to the single identity
``x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`` (a finite join is a fold of binary joins,
and the binary law is self-dual).  That identity is all :func:`is_distributive`
checks.

Conventions: ``⋀∅ = top`` and ``⋁∅ = bottom``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Any, Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (
    CapExceeded,
    InternalDisagreement,
    LatticeError,
    NotALattice,
    PreconditionFailed,
)
from .poset import Poset, bits, brace, index_isomorphism, maximal_chains, poset_isomorphism

DEFAULT_M_CAP = 15
DEFAULT_CHAIN_CAP = 64


@dataclass(frozen=True)
class Check:
    """A yes/no answer plus a counterexample when the answer is no."""

    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds


class Lattice:
    """A finite lattice: an order together with meet and join tables (by index)."""

    def __init__(
        self,
        order: Poset,
        meet: np.ndarray,
        join: np.ndarray,
        bottom: int,
        top: int,
    ):
        self.order = order
        self.meet_table = meet
        self.join_table = join
        self.bottom = bottom
        self.top = top
        meet.flags.writeable = False
        join.flags.writeable = False

    @property
    def name(self) -> str | None:
        return self.order.name

    @property
    def names(self) -> tuple[str, ...]:
        return self.order.names

    @property
    def n(self) -> int:
        return self.order.n

    @property
    def leq(self) -> np.ndarray:
        return self.order.leq

    def __len__(self) -> int:
        return self.order.n

    def __iter__(self):
        return iter(self.order.names)

    def __contains__(self, name: object) -> bool:
        return name in self.order

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.order == other.order

    def __hash__(self) -> int:
        return hash(self.order)

    def __repr__(self) -> str:
        return f"<Lattice {self.name or ''} |{self.n}|>"

    def idx(self, name: str) -> int:
        return self.order.idx(name)

    def le(self, x: str, y: str) -> bool:
        return self.order.le(x, y)

    def meet(self, x: str, y: str) -> str:
        return self.names[self.meet_table[self.idx(x), self.idx(y)]]

    def join(self, x: str, y: str) -> str:
        return self.names[self.join_table[self.idx(x), self.idx(y)]]

    def meet_all(self, indices: Iterable[int]) -> int:
        acc = self.top
        for i in indices:
            acc = int(self.meet_table[acc, i])
        return acc

    def join_all(self, indices: Iterable[int]) -> int:
        acc = self.bottom
        for i in indices:
            acc = int(self.join_table[acc, i])
        return acc

    @property
    def bottom_name(self) -> str:
        return self.names[self.bottom]

    @property
    def top_name(self) -> str:
        return self.names[self.top]

    def upper_covers(self, i: int) -> list[int]:
        return np.flatnonzero(self.order.covers[i]).tolist()

    @cached_property
    def atoms(self) -> list[int]:
        return self.upper_covers(self.bottom)

    def dual(self) -> Lattice:
        return Lattice(self.order.dual(), self.join_table, self.meet_table, self.top, self.bottom)


def lattice_from_poset(P: Poset) -> Lattice:
    """Meet and join tables of ``P``; raises :class:`NotALattice` with a witness pair."""
    meet = kernels.meet_table(P.leq)
    join = kernels.meet_table(np.ascontiguousarray(P.leq.T))
    for table, what in ((meet, "greatest lower bound"), (join, "least upper bound")):
        missing = np.argwhere(table < 0)
        if len(missing):
            i, j = (int(v) for v in missing[0])
            raise NotALattice((P.names[i], P.names[j]), what)
    bottom = _extreme(P.leq)
    top = _extreme(P.leq.T)
    return Lattice(P, meet, join, bottom, top)


def _extreme(leq: np.ndarray) -> int:
    hits = np.flatnonzero(leq.all(axis=1))
    return int(hits[0])


def lattice_isomorphism(L1: Lattice, L2: Lattice) -> dict[str, str] | None:
    return poset_isomorphism(L1.order, L2.order)


def is_sublattice(L: Lattice, names: Iterable[str]) -> bool:
    """True iff the subset is closed under binary meet and join of ``L``."""
    idx = {L.idx(nm) for nm in names}
    return all(
        int(L.meet_table[i, j]) in idx and int(L.join_table[i, j]) in idx
        for i, j in product(idx, repeat=2)
    )


def sublattice(L: Lattice, names: Sequence[str], name: str | None = None) -> Lattice:
    if not is_sublattice(L, names):
        raise LatticeError("subset is not closed under meet and join")
    keep = sorted(L.idx(nm) for nm in names)
    return lattice_from_poset(L.order.subposet(keep, name))


def meet_irreducible_indices(L: Lattice) -> list[int]:
    """Indices of M(L), checked against the unique-upper-cover characterisation.

    Definition check: ``x != top`` and ``x`` is not the meet of the elements
    strictly above it (if ``x = ⋀Q`` with ``x ∉ Q`` then every member of ``Q``
    lies strictly above ``x``, so the meet of all of those equals ``x`` too).
    """
    lt = L.order.lt
    by_def = [x for x in range(L.n) if L.meet_all(np.flatnonzero(lt[x])) != x]
    by_cover = [x for x in range(L.n) if len(L.upper_covers(x)) == 1]
    if by_def != by_cover:
        raise InternalDisagreement(
            "meet-irreducibles: definition and unique-cover characterisation differ",
            definition=by_def,
            covers=by_cover,
        )
    return by_def


def meet_irreducibles(L: Lattice) -> tuple[str, ...]:
    """M(L), in element order."""
    return tuple(L.names[i] for i in meet_irreducible_indices(L))


def m_poset(L: Lattice) -> Poset:
    """``(M(L), <=)`` with the order induced from ``L``."""
    idx = meet_irreducible_indices(L)
    if not idx:
        raise PreconditionFailed("a one-element lattice has no meet-irreducible elements")
    return L.order.subposet(idx, f"M({L.name})" if L.name else None)


def is_distributive(L: Lattice) -> Check:
    x, y, z = kernels.distributive_witness(L.meet_table, L.join_table)
    if x == kernels.NO_WITNESS:
        return Check(True)
    return Check(False, (L.names[x], L.names[y], L.names[z]))


def decomposition(L: Lattice, r: int) -> list[int]:
    """The meet-irreducibles above ``r`` (the canonical decomposition candidates)."""
    return [x for x in meet_irreducible_indices(L) if L.leq[r, x]]


def has_dp(L: Lattice) -> Check:
    """Every element equals the meet of the meet-irreducibles above it."""
    mi = np.array(meet_irreducible_indices(L), dtype=np.int64)
    for r in range(L.n):
        above = mi[L.leq[r, mi]] if len(mi) else mi
        if L.meet_all(above) != r:
            return Check(False, L.names[r])
    return Check(True)


def satisfies_m(L: Lattice, cap: int = DEFAULT_M_CAP) -> Check:
    """The condition: q ∈ M(L), C ⊆ M(L), q >= ⋀C  ⇒  q >= p for some p ∈ C.

    Brute force over all subsets ``C`` with memoised partial meets.  The
    witness is ``(q, C)`` for the first failing ``q`` and smallest ``C``.
    """
    mi = np.array(meet_irreducible_indices(L), dtype=np.int64)
    if len(mi) > cap:
        raise CapExceeded("condition (M) subset scan", len(mi), cap)
    if not len(mi):
        return Check(True)
    qi, mask = kernels.m_condition_witness(L.leq, L.meet_table, mi, L.top)
    if qi == kernels.NO_WITNESS:
        return Check(True)
    return Check(False, (L.names[mi[qi]], tuple(L.names[mi[b]] for b in bits(mask))))


def complement_witness(L: Lattice) -> str | None:
    for x in range(L.n):
        comp = (L.meet_table[x] == L.bottom) & (L.join_table[x] == L.top)
        if not comp.any():
            return L.names[x]
    return None


def is_atomic_boolean(L: Lattice) -> bool:
    """True iff ``L`` is isomorphic to the powerset of its atoms."""
    atoms = L.atoms
    if L.n != 1 << len(atoms):
        return False
    if not is_distributive(L) or complement_witness(L) is not None:
        return False
    return all(L.join_all(a for a in atoms if L.leq[a, x]) == x for x in range(L.n))


def graded_chain_check(L: Lattice, cap: int = DEFAULT_CHAIN_CAP) -> Check:
    """Every maximal chain has ``|M(L)| + 1`` elements (needs the representability hypotheses)."""
    for label, verdict in (("distributive", is_distributive(L)), ("DP", has_dp(L)), ("(M)", satisfies_m(L))):
        if not verdict:
            raise PreconditionFailed(f"lattice is not {label}: witness {verdict.witness}")
    want = len(meet_irreducible_indices(L)) + 1
    for c in maximal_chains(L.order, cap=cap):
        if len(c) != want:
            return Check(False, c)
    return Check(True)


# -- builders ---------------------------------------------------------------


def from_order(names: Sequence[str], leq: np.ndarray, name: str | None = None) -> Lattice:
    return lattice_from_poset(Poset(names, leq, name))


def chain_lattice(n: int) -> Lattice:
    names = [str(i) for i in range(n)]
    return from_order(names, np.triu(np.ones((n, n), dtype=bool)), f"chain{n}")


def powerset_lattice(k: int, atoms: Sequence[str] | None = None) -> Lattice:
    """All subsets of ``k`` atoms ordered by inclusion."""
    atoms = list(atoms or [chr(ord("x") + i) if k <= 3 else f"a{i}" for i in range(k)])
    masks = list(range(1 << k))
    names = [brace(atoms[i] for i in bits(m)) for m in masks]
    arr = np.array(masks)
    leq = (arr[:, None] & ~arr[None, :]) == 0
    return from_order(names, leq, f"B{k}")


def diamond_m3() -> Lattice:
    names = ["0", "a", "b", "c", "1"]
    leq = np.eye(5, dtype=bool)
    leq[0, :] = True
    leq[:, 4] = True
    return from_order(names, leq, "M3")


def pentagon_n5() -> Lattice:
    names = ["0", "a", "b", "c", "1"]
    leq = np.eye(5, dtype=bool)
    leq[0, :] = True
    leq[:, 4] = True
    leq[1, 2] = True
    return from_order(names, leq, "N5")


def product_lattice(L1: Lattice, L2: Lattice) -> Lattice:
    names = [f"{a}|{b}" for a in L1.names for b in L2.names]
    leq = np.kron(L1.leq.astype(np.int8), L2.leq.astype(np.int8)) > 0
    name = f"{L1.name}x{L2.name}" if L1.name and L2.name else None
    return from_order(names, leq, name)


def isomorphic(L1: Lattice, L2: Lattice) -> bool:
    return index_isomorphism(L1.order, L2.order) is not None
