"""Deterministic corpora for exhaustive and seeded property checks."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .birkhoff import upset_lattice
from .errors import NotALattice
from .fuzzy import FuzzyUpSet
from .lattice import Lattice, isomorphic, lattice_from_poset
from .poset import Poset, enumerate_posets, validate_poset
from .quotient import MonotonicOperator


def poset_corpus(max_n: int = 5) -> list[Poset]:
    """One poset per isomorphism class, for every size 1..max_n."""
    return [P for n in range(1, max_n + 1) for P in enumerate_posets(n)]


@lru_cache(maxsize=None)
def _lattice_corpus(max_n: int) -> tuple[Lattice, ...]:
    out = []
    for P in poset_corpus(max_n):
        try:
            out.append(lattice_from_poset(P))
        except NotALattice:
            pass
    return tuple(out)


def lattice_corpus(max_n: int = 5, min_n: int = 1) -> list[Lattice]:
    """The posets of the corpus that happen to be lattices."""
    return [L for L in _lattice_corpus(max_n) if L.n >= min_n]


@lru_cache(maxsize=None)
def _upset_corpus(max_n: int) -> tuple[Lattice, ...]:
    return tuple(upset_lattice(X) for X in poset_corpus(max_n))


def upset_lattice_corpus(max_n: int = 5) -> list[Lattice]:
    """``F_X`` for every poset class ``X`` of size at most ``max_n``."""
    return list(_upset_corpus(max_n))


def distributive_corpus(max_size: int = 12, max_base: int = 5) -> list[Lattice]:
    """Pairwise non-isomorphic up-set lattices with at most ``max_size`` elements."""
    out: list[Lattice] = []
    for F in upset_lattice_corpus(max_base):
        if F.n <= max_size and not any(G.n == F.n and isomorphic(F, G) for G in out):
            out.append(F)
    return out


def random_poset(rng: np.random.Generator, n: int, p: float = 0.35, name: str | None = None) -> Poset:
    """Random naturally labelled order: ``i < j`` edges with probability ``p``."""
    names = [f"x{i}" for i in range(n)]
    pairs = [(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return validate_poset(names, pairs, name)


def random_fuzzy(rng: np.random.Generator, X: Poset, L: Lattice, name: str = "mu") -> FuzzyUpSet:
    """Random monotone ``X -> L``.

    Elements are visited along a linear extension; each starts from the join
    of the values already given to its predecessors and takes a short random
    walk upward along covers.
    """
    values = [0] * X.n
    lt = X.lt
    for x in X.linear_extension:
        v = L.join_all(values[y] for y in range(X.n) if lt[y, x])
        while rng.random() < 0.6:
            ups = L.upper_covers(v)
            if not ups:
                break
            v = ups[int(rng.integers(len(ups)))]
        values[x] = v
    return FuzzyUpSet(X, L, values, name)


def random_operator(rng: np.random.Generator, X: Poset, name: str = "G") -> MonotonicOperator:
    """Random monotonic operator: maximal elements first, each value a
    superset of the values of everything above it plus random extras."""
    assign = [0] * X.n
    lt = X.lt
    for x in reversed(X.linear_extension):
        m = 0
        for y in range(X.n):
            if lt[x, y]:
                m |= assign[y]
        extra = int(rng.integers(0, 1 << X.n)) & int(rng.integers(0, 1 << X.n))
        assign[x] = m | extra
    return MonotonicOperator(X, assign, name)
