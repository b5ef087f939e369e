"""Finite posets, their up-sets, maximal chains and isomorphisms.

A :class:`Poset` stores its elements in a fixed order; element ``i`` is the
``i``-th name and subsets are Python ``int`` bitmasks over these indices.
All enumerations come out in a canonical order so that reports and golden
tests are reproducible.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import (
    CapExceeded,
    CycleDetected,
    DuplicateName,
    LatticeError,
    UnknownElement,
)

DEFAULT_SIZE_CAP = 20
DEFAULT_GENERATION_CAP = 6
MASK_LIMIT = 62  # int64 bitmasks in the kernels


def check_name(name: str) -> str:
    if not isinstance(name, str) or not name or any(c.isspace() for c in name):
        raise LatticeError(f"invalid element name {name!r}")
    return name


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def brace(names: Iterable[str]) -> str:
    return "{" + ",".join(names) + "}"


class Poset:
    """A finite partially ordered set.

    ``leq[i, j]`` is true iff element ``i`` is below or equal to element
    ``j``.  Instances are immutable and hashable; two posets are equal when
    they have the same element names in the same order and the same relation.
    """

    def __init__(
        self,
        names: Sequence[str],
        leq: np.ndarray,
        name: str | None = None,
        *,
        validate: bool = True,
    ):
        names = tuple(names)
        if not names:
            raise LatticeError("a poset needs at least one element")
        index: dict[str, int] = {}
        for i, nm in enumerate(names):
            check_name(nm)
            if nm in index:
                raise DuplicateName(f"duplicate element name {nm!r}")
            index[nm] = i
        leq = np.array(leq, dtype=bool)
        if leq.shape != (len(names), len(names)):
            raise LatticeError(f"relation shape {leq.shape} does not match {len(names)} elements")
        if validate:
            _check_partial_order(names, leq)
        leq.flags.writeable = False
        self.names = names
        self.index = index
        self.leq = leq
        self.name = name

    @property
    def n(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.names == other.names and np.array_equal(self.leq, other.leq)

    def __hash__(self) -> int:
        return hash((self.names, self.leq.tobytes()))

    def __repr__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"<Poset {label}|{self.n}| covers={self.cover_pairs()}>"

    def idx(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownElement(f"{name!r} is not an element of this poset") from None

    def le(self, x: str, y: str) -> bool:
        return bool(self.leq[self.idx(x), self.idx(y)])

    @cached_property
    def lt(self) -> np.ndarray:
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        lt.flags.writeable = False
        return lt

    @cached_property
    def covers(self) -> np.ndarray:
        """Transitive reduction: ``covers[i, j]`` iff ``j`` covers ``i``."""
        lt = self.lt.astype(np.int64)
        cov = self.lt & ~((lt @ lt) > 0)
        cov.flags.writeable = False
        return cov

    def cover_pairs(self) -> list[tuple[str, str]]:
        return [(self.names[i], self.names[j]) for i, j in zip(*np.nonzero(self.covers))]

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        return tuple(_row_mask(row) for row in self.leq)

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        return tuple(_row_mask(col) for col in self.leq.T)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        # x < y forces |down(x)| < |down(y)|, so sorting by down-set size works
        sizes = self.leq.sum(axis=0)
        return tuple(int(i) for i in np.argsort(sizes, kind="stable"))

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Length (in covers) of the longest chain ending at each element."""
        h = [0] * self.n
        for j in self.linear_extension:
            below = np.flatnonzero(self.covers[:, j])
            h[j] = 1 + max((h[i] for i in below), default=-1)
        return tuple(h)

    @cached_property
    def depths(self) -> tuple[int, ...]:
        d = [0] * self.n
        for i in reversed(self.linear_extension):
            above = np.flatnonzero(self.covers[i])
            d[i] = 1 + max((d[j] for j in above), default=-1)
        return tuple(d)

    def minimal(self) -> list[int]:
        return [j for j in range(self.n) if not self.lt[:, j].any()]

    def maximal(self) -> list[int]:
        return [i for i in range(self.n) if not self.lt[i].any()]

    def mask_of(self, names: Iterable[str]) -> int:
        m = 0
        for nm in names:
            m |= 1 << self.idx(nm)
        return m

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self.names[i] for i in bits(mask))

    def label(self, mask: int) -> str:
        return brace(self.names_of(mask))

    def dual(self) -> Poset:
        return Poset(self.names, self.leq.T, self.name and f"{self.name}_dual", validate=False)

    def subposet(self, indices: Sequence[int], name: str | None = None) -> Poset:
        idx = np.asarray(indices, dtype=np.int64)
        return Poset(
            [self.names[i] for i in idx],
            self.leq[np.ix_(idx, idx)],
            name,
            validate=False,
        )

    def relabel(self, names: Sequence[str], name: str | None = None) -> Poset:
        return Poset(names, self.leq, name or self.name, validate=False)

    def is_antichain(self) -> bool:
        return not self.lt.any()

    def is_chain(self) -> bool:
        return bool((self.leq | self.leq.T).all())


def _row_mask(row: np.ndarray) -> int:
    m = 0
    for i in np.flatnonzero(row):
        m |= 1 << int(i)
    return m


def _check_partial_order(names: Sequence[str], leq: np.ndarray) -> None:
    if not leq.diagonal().all():
        i = int(np.flatnonzero(~leq.diagonal())[0])
        raise LatticeError(f"relation is not reflexive at {names[i]!r}")
    sym = leq & leq.T
    np.fill_diagonal(sym, False)
    if sym.any():
        i, j = (int(v) for v in np.argwhere(sym)[0])
        raise CycleDetected([names[i], names[j]])
    l64 = leq.astype(np.int64)
    if ((l64 @ l64 > 0) & ~leq).any():
        raise LatticeError("relation is not transitive")


def validate_poset(
    elements: Sequence[str],
    raw_pairs: Iterable[tuple[str, str]],
    name: str | None = None,
) -> Poset:
    """Build a poset from element names and generating pairs ``(a, b)`` meaning a ≤ b.

    The order is the reflexive-transitive closure of the pairs.  Raises
    :class:`DuplicateName` and :class:`CycleDetected` (with a witness cycle).
    """
    elements = tuple(elements)
    index: dict[str, int] = {}
    for i, nm in enumerate(elements):
        check_name(nm)
        if nm in index:
            raise DuplicateName(f"duplicate element name {nm!r}")
        index[nm] = i
    n = len(elements)
    adj = np.zeros((n, n), dtype=bool)
    for a, b in raw_pairs:
        for nm in (a, b):
            if nm not in index:
                raise UnknownElement(f"{nm!r} is not among the declared elements")
        adj[index[a], index[b]] = True
    reach = kernels.transitive_closure(adj)
    sym = reach & reach.T
    np.fill_diagonal(sym, False)
    if sym.any():
        i, j = (int(v) for v in np.argwhere(sym)[0])
        cycle = _path(adj, i, j) + _path(adj, j, i)[1:-1]
        raise CycleDetected([elements[k] for k in cycle])
    return Poset(elements, reach, name, validate=False)


def _path(adj: np.ndarray, src: int, dst: int) -> list[int]:
    prev = {src: -1}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            break
        for v in np.flatnonzero(adj[u]):
            v = int(v)
            if v not in prev:
                prev[v] = u
                queue.append(v)
    out = [dst]
    while out[-1] != src:
        out.append(prev[out[-1]])
    return out[::-1]


@dataclass(frozen=True)
class UpSet:
    """An up-set of ``carrier`` stored as a bitmask over element indices."""

    carrier: Poset
    mask: int

    @property
    def members(self) -> frozenset[str]:
        return frozenset(self.carrier.names_of(self.mask))

    def __iter__(self) -> Iterator[str]:
        return iter(self.carrier.names_of(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, name: object) -> bool:
        i = self.carrier.index.get(name)  # type: ignore[arg-type]
        return i is not None and bool(self.mask >> i & 1)

    def __str__(self) -> str:
        return self.carrier.label(self.mask)

    def __repr__(self) -> str:
        return f"UpSet({self})"


def is_upset(P: Poset, mask: int) -> bool:
    ups = P.up_masks
    return all(ups[i] & ~mask == 0 for i in bits(mask))


def principal_upset(P: Poset, x: str) -> UpSet:
    """``{y | y >= x}``."""
    return UpSet(P, P.up_masks[P.idx(x)])


def upset_masks(P: Poset, cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    """Bitmasks of all up-sets of ``P`` in increasing numeric order."""
    if P.n > min(cap, MASK_LIMIT):
        raise CapExceeded("up-set enumeration", P.n, min(cap, MASK_LIMIT))
    return _upset_masks_cached(P)


_UPSET_CACHE: dict[Poset, np.ndarray] = {}


def _upset_masks_cached(P: Poset) -> np.ndarray:
    hit = _UPSET_CACHE.get(P)
    if hit is None:
        strict = np.array([m & ~(1 << i) for i, m in enumerate(P.up_masks)], dtype=np.int64)
        top_first = np.array(P.linear_extension[::-1], dtype=np.int64)
        hit = kernels.upset_masks(strict, top_first)
        hit.flags.writeable = False
        if len(_UPSET_CACHE) > 4096:
            _UPSET_CACHE.clear()
        _UPSET_CACHE[P] = hit
    return hit


def all_upsets(P: Poset, cap: int = DEFAULT_SIZE_CAP) -> list[UpSet]:
    """Every up-set of ``P`` exactly once, sorted by bitmask (∅ first, ``P`` last)."""
    return [UpSet(P, int(m)) for m in upset_masks(P, cap)]


def maximal_chains(P: Poset, cap: int = DEFAULT_SIZE_CAP) -> list[list[str]]:
    """All maximal chains, bottom to top, in depth-first order over covers."""
    if P.n > cap:
        raise CapExceeded("maximal chain enumeration", P.n, cap)
    up = [np.flatnonzero(row).tolist() for row in P.covers]
    out: list[list[str]] = []

    def walk(path: list[int]) -> None:
        nxt = up[path[-1]]
        if not nxt:
            out.append([P.names[i] for i in path])
            return
        for j in nxt:
            path.append(j)
            walk(path)
            path.pop()

    for m in P.minimal():
        walk([m])
    return out


def _invariants(P: Poset) -> list[tuple[int, ...]]:
    down = P.leq.sum(axis=0)
    up = P.leq.sum(axis=1)
    cov_up = P.covers.sum(axis=1)
    cov_down = P.covers.sum(axis=0)
    return [
        (int(down[i]), int(up[i]), P.heights[i], P.depths[i], int(cov_up[i]), int(cov_down[i]))
        for i in range(P.n)
    ]


def index_isomorphism(P: Poset, Q: Poset) -> list[int] | None:
    """Index-level version of :func:`poset_isomorphism`."""
    n = P.n
    if n != Q.n or int(P.leq.sum()) != int(Q.leq.sum()):
        return None
    inv_p, inv_q = _invariants(P), _invariants(Q)
    if sorted(inv_p) != sorted(inv_q):
        return None
    cand = [[j for j in range(n) if inv_q[j] == inv_p[i]] for i in range(n)]
    lp = P.leq.tolist()
    lq = Q.leq.tolist()
    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        row_p, col_p = lp[i], [lp[k][i] for k in range(i)]
        for j in cand[i]:
            if used[j]:
                continue
            row_q = lq[j]
            ok = True
            for k in range(i):
                jk = image[k]
                if row_p[k] != row_q[jk] or col_p[k] != lq[jk][j]:
                    ok = False
                    break
            if ok:
                image[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        image[i] = -1
        return False

    return image if extend(0) else None


def poset_isomorphism(P: Poset, Q: Poset) -> dict[str, str] | None:
    """An order isomorphism ``P -> Q`` as a name mapping, or ``None``.

    Elements of ``P`` are matched in index order against candidates of ``Q``
    in index order, so the result is the lexicographically least bijection.
    Candidates are pruned by degree and height invariants only.
    """
    image = index_isomorphism(P, Q)
    if image is None:
        return None
    return {P.names[i]: Q.names[j] for i, j in enumerate(image)}


def chain(n: int, name: str | None = None) -> Poset:
    names = [f"c{i}" for i in range(n)]
    return Poset(names, np.triu(np.ones((n, n), dtype=bool)), name or f"chain{n}", validate=False)


def antichain(n: int, name: str | None = None) -> Poset:
    names = [f"e{i}" for i in range(n)]
    return Poset(names, np.eye(n, dtype=bool), name or f"antichain{n}", validate=False)


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def enumerate_posets(n: int, cap: int = DEFAULT_GENERATION_CAP) -> Iterator[Poset]:
    """One poset per isomorphism class on ``n`` elements.

    Classes are grown one maximal element at a time: every ``n``-element
    poset arises from an ``(n-1)``-element class representative by adding a
    new maximal element above one of its down-sets.  Candidates are then
    deduplicated by isomorphism.  Representatives are naturally labelled
    (``a``, ``b``, ... with ``i <= j`` only if ``i`` precedes ``j``).
    """
    if n > cap:
        raise CapExceeded("poset generation", n, cap)
    if n < 1:
        raise ValueError("posets have at least one element")
    yield from _classes(n)


_CLASS_CACHE: dict[int, list[Poset]] = {}


def _classes(n: int) -> list[Poset]:
    if n in _CLASS_CACHE:
        return _CLASS_CACHE[n]
    names = list(_LETTERS[:n])
    if n == 1:
        reps = [Poset(names, np.ones((1, 1), dtype=bool), "P1_0", validate=False)]
        _CLASS_CACHE[n] = reps
        return reps
    reps: list[Poset] = []
    buckets: dict[tuple, list[Poset]] = {}
    for parent in _classes(n - 1):
        full = parent.full_mask
        for up in upset_masks(parent, cap=MASK_LIMIT):
            down = full & ~int(up)
            leq = np.zeros((n, n), dtype=bool)
            leq[: n - 1, : n - 1] = parent.leq
            for i in bits(down):
                leq[i, n - 1] = True
            leq[n - 1, n - 1] = True
            cand = Poset(names, leq, validate=False)
            key = (int(leq.sum()), tuple(sorted(_invariants(cand))))
            bucket = buckets.setdefault(key, [])
            if any(index_isomorphism(cand, other) is not None for other in bucket):
                continue
            bucket.append(cand)
            reps.append(cand)
    reps = [p.relabel(names, f"P{n}_{i}") for i, p in enumerate(reps)]
    _CLASS_CACHE[n] = reps
    return reps
