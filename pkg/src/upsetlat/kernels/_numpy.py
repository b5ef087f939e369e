"""Vectorised numpy versions of the hot kernels.

Every function here has a loop-level twin in ``_jit``; the two must return
identical arrays (including witness choice) so either can back the library.
Bitmask arguments are ``int64`` and therefore limited to 62 members.
"""

from __future__ import annotations

import numpy as np

NO_WITNESS = -1


def transitive_closure(adj: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a boolean adjacency matrix (Warshall)."""
    reach = np.array(adj, dtype=bool, copy=True)
    np.fill_diagonal(reach, True)
    for k in range(reach.shape[0]):
        reach |= reach[:, k, None] & reach[None, k, :]
    return reach


def meet_table(leq: np.ndarray) -> np.ndarray:
    """Greatest lower bound of every pair, ``-1`` where none exists.

    ``g`` is the glb of ``i`` and ``j`` iff ``g`` is a common lower bound
    whose down-set has the same size as the common lower set.
    """
    n = leq.shape[0]
    down_count = leq.sum(axis=0)
    out = np.full((n, n), NO_WITNESS, dtype=np.int64)
    for i in range(n):
        lower = leq[:, i, None] & leq
        count = lower.sum(axis=0)
        hit = lower & (down_count[:, None] == count[None, :])
        found = hit.any(axis=0)
        out[i, found] = hit.argmax(axis=0)[found]
    return out


def distributive_witness(meet: np.ndarray, join: np.ndarray) -> tuple[int, int, int]:
    """First triple (lexicographic) violating x∧(y∨z) = (x∧y)∨(x∧z)."""
    n = meet.shape[0]
    for x in range(n):
        lhs = meet[x][join]
        mx = meet[x]
        rhs = join[mx[:, None], mx[None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            y, z = bad[0]
            return x, int(y), int(z)
    return NO_WITNESS, NO_WITNESS, NO_WITNESS


def subset_meets(meet: np.ndarray, members: np.ndarray, top: int) -> np.ndarray:
    """Meet of every subset of ``members``, indexed by subset bitmask (⋀∅ = top)."""
    k = len(members)
    out = np.empty(1 << k, dtype=np.int64)
    out[0] = top
    for b in range(k):
        lo = 1 << b
        out[lo : 2 * lo] = meet[out[:lo], members[b]]
    return out


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a.astype(np.uint64)).astype(np.int64)


def m_condition_witness(
    leq: np.ndarray, meet: np.ndarray, members: np.ndarray, top: int
) -> tuple[int, int]:
    """Search for q ∈ members and C ⊆ members with q ≥ ⋀C but q ≱ p for all p ∈ C.

    Returns ``(position of q, bitmask of C)``; the witness is the first q
    with a violation and, for it, the smallest C by (cardinality, mask).
    """
    k = len(members)
    meets = subset_meets(meet, members, top)
    masks = np.arange(1 << k, dtype=np.int64)
    sizes = _popcount(masks)
    for qi in range(k):
        q = members[qi]
        below = 0
        for pi in range(k):
            if leq[members[pi], q]:
                below |= 1 << pi
        bad = leq[meets, q] & ((masks & below) == 0)
        if bad.any():
            cand = masks[bad]
            order = np.lexsort((cand, sizes[bad]))
            return qi, int(cand[order[0]])
    return NO_WITNESS, NO_WITNESS


def upset_masks(strict_up: np.ndarray, top_first: np.ndarray) -> np.ndarray:
    """All up-sets as sorted bitmasks.

    Elements are decided from the top of the order down; an element may join
    the set only when its strict up-set is already inside, so every branch
    is an up-set and nothing is filtered afterwards.
    """
    cur = np.zeros(1, dtype=np.int64)
    for x in top_first:
        need = strict_up[x]
        ok = (cur & need) == need
        cur = np.concatenate((cur, cur[ok] | (np.int64(1) << np.int64(x))))
    cur.sort()
    return cur


def close_family(
    seed: int, union_tab: np.ndarray, inter_tab: np.ndarray
) -> int:
    """Smallest superset of ``seed`` closed under the two binary tables."""
    fam = int(seed)
    while True:
        idx = np.flatnonzero((fam >> np.arange(union_tab.shape[0])) & 1)
        sub = np.ix_(idx, idx)
        produced = np.union1d(union_tab[sub].ravel(), inter_tab[sub].ravel())
        grown = fam
        for t in produced.tolist():
            grown |= 1 << t
        if grown == fam:
            return fam
        fam = grown


def closed_families(
    seed: int, union_tab: np.ndarray, inter_tab: np.ndarray
) -> np.ndarray:
    """Every closed family containing ``seed``, in lectic order (NextClosure)."""
    k = union_tab.shape[0]
    full = (1 << k) - 1
    a = close_family(seed, union_tab, inter_tab)
    out = [a]
    while a != full:
        for i in range(k - 1, -1, -1):
            bit = 1 << i
            if a & bit:
                a &= ~bit
                continue
            b = close_family(a | bit | seed, union_tab, inter_tab)
            if (b & ~a) & (bit - 1) == 0:
                a = b
                out.append(a)
                break
    return np.array(out, dtype=np.int64)
