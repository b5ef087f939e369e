"""numba ``@njit`` versions of the hot kernels (see ``_numpy`` for contracts)."""

from __future__ import annotations

import numpy as np
from numba import njit

NO_WITNESS = -1


@njit(cache=True)
def transitive_closure(adj):
    n = adj.shape[0]
    reach = adj.copy()
    for i in range(n):
        reach[i, i] = True
    for k in range(n):
        for i in range(n):
            if reach[i, k]:
                for j in range(n):
                    if reach[k, j]:
                        reach[i, j] = True
    return reach


@njit(cache=True)
def meet_table(leq):
    n = leq.shape[0]
    down_count = np.zeros(n, dtype=np.int64)
    for g in range(n):
        for x in range(n):
            if leq[x, g]:
                down_count[g] += 1
    out = np.full((n, n), NO_WITNESS, dtype=np.int64)
    for i in range(n):
        for j in range(i, n):
            count = 0
            for x in range(n):
                if leq[x, i] and leq[x, j]:
                    count += 1
            for g in range(n):
                if leq[g, i] and leq[g, j] and down_count[g] == count:
                    out[i, j] = g
                    out[j, i] = g
                    break
    return out


@njit(cache=True)
def _distributive_witness(meet, join):
    n = meet.shape[0]
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if meet[x, join[y, z]] != join[meet[x, y], meet[x, z]]:
                    return x, y, z
    return NO_WITNESS, NO_WITNESS, NO_WITNESS


def distributive_witness(meet, join):
    x, y, z = _distributive_witness(meet, join)
    return int(x), int(y), int(z)


@njit(cache=True)
def subset_meets(meet, members, top):
    k = members.shape[0]
    out = np.empty(1 << k, dtype=np.int64)
    out[0] = top
    for mask in range(1, 1 << k):
        low = mask & -mask
        b = 0
        while (1 << b) != low:
            b += 1
        out[mask] = meet[out[mask ^ low], members[b]]
    return out


@njit(cache=True)
def _popcount(v):
    c = 0
    while v:
        v &= v - 1
        c += 1
    return c


@njit(cache=True)
def _m_condition_witness(leq, meet, members, top):
    k = members.shape[0]
    meets = subset_meets(meet, members, top)
    for qi in range(k):
        q = members[qi]
        below = 0
        for pi in range(k):
            if leq[members[pi], q]:
                below |= 1 << pi
        best = -1
        best_size = k + 1
        for mask in range(1 << k):
            if leq[meets[mask], q] and (mask & below) == 0:
                size = _popcount(mask)
                if size < best_size:
                    best = mask
                    best_size = size
        if best >= 0:
            return qi, best
    return NO_WITNESS, NO_WITNESS


def m_condition_witness(leq, meet, members, top):
    qi, mask = _m_condition_witness(leq, meet, members, top)
    return int(qi), int(mask)


@njit(cache=True)
def upset_masks(strict_up, top_first):
    # ``cur`` stays sorted: the extensions ``m | bit`` of a sorted run are
    # sorted too (bit is absent from every m), so each step is a linear merge
    cur = np.zeros(1, dtype=np.int64)
    for x in top_first:
        need = strict_up[x]
        bit = np.int64(1) << np.int64(x)
        ext = np.empty(cur.shape[0], dtype=np.int64)
        k = 0
        for m in cur:
            if (m & need) == need:
                ext[k] = m | bit
                k += 1
        nxt = np.empty(cur.shape[0] + k, dtype=np.int64)
        i = j = o = 0
        while i < cur.shape[0] and j < k:
            if cur[i] < ext[j]:
                nxt[o] = cur[i]
                i += 1
            else:
                nxt[o] = ext[j]
                j += 1
            o += 1
        while i < cur.shape[0]:
            nxt[o] = cur[i]
            i += 1
            o += 1
        while j < k:
            nxt[o] = ext[j]
            j += 1
            o += 1
        cur = nxt
    return cur


@njit(cache=True)
def _close_family(seed, union_tab, inter_tab):
    k = union_tab.shape[0]
    fam = seed
    changed = True
    while changed:
        changed = False
        for i in range(k):
            if not (fam >> i) & 1:
                continue
            for j in range(i + 1, k):
                if not (fam >> j) & 1:
                    continue
                u = union_tab[i, j]
                if not (fam >> u) & 1:
                    fam |= np.int64(1) << u
                    changed = True
                v = inter_tab[i, j]
                if not (fam >> v) & 1:
                    fam |= np.int64(1) << v
                    changed = True
    return fam


def close_family(seed, union_tab, inter_tab):
    return int(_close_family(np.int64(seed), union_tab, inter_tab))


@njit(cache=True)
def _closed_families(seed, union_tab, inter_tab):
    k = union_tab.shape[0]
    full = (np.int64(1) << k) - 1
    a = _close_family(seed, union_tab, inter_tab)
    out = np.empty(64, dtype=np.int64)
    out[0] = a
    count = 1
    while a != full:
        for i in range(k - 1, -1, -1):
            bit = np.int64(1) << i
            if a & bit:
                a &= ~bit
                continue
            b = _close_family(a | bit | seed, union_tab, inter_tab)
            if (b & ~a) & (bit - 1) == 0:
                a = b
                if count == out.shape[0]:
                    grown = np.empty(2 * count, dtype=np.int64)
                    grown[:count] = out
                    out = grown
                out[count] = a
                count += 1
                break
    return out[:count].copy()


def closed_families(seed, union_tab, inter_tab):
    return _closed_families(np.int64(seed), union_tab, inter_tab)
