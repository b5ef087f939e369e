"""The numba kernels and their numpy twins must agree on every input."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from upsetlat import kernels
from upsetlat.corpus import lattice_corpus, poset_corpus
from upsetlat.lattice import diamond_m3, pentagon_n5, powerset_lattice

NP = kernels.numpy_backend
JIT = kernels.jit_backend
needs_jit = pytest.mark.skipif(JIT is None, reason="numba not installed")


def random_dag(seed: int, n: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.triu(rng.random((n, n)) < 0.3, 1)


def warshall_oracle(adj: np.ndarray) -> np.ndarray:
    n = len(adj)
    reach = adj.copy() | np.eye(n, dtype=bool)
    changed = True
    while changed:
        new = reach | ((reach.astype(int) @ reach.astype(int)) > 0)
        changed = not np.array_equal(new, reach)
        reach = new
    return reach


@pytest.mark.parametrize("backend", [NP, pytest.param(JIT, marks=needs_jit)], ids=["numpy", "numba"])
@pytest.mark.parametrize("seed", range(5))
def test_closure_matches_squaring_oracle(backend, seed):
    adj = random_dag(seed, 9)
    assert np.array_equal(backend.transitive_closure(adj), warshall_oracle(adj))


def test_active_backend_flag_is_consistent():
    assert kernels.BACKEND in ("numpy", "numba")
    assert (kernels.active is kernels.numpy_backend) == kernels.PURE_NUMPY


@needs_jit
@pytest.mark.parametrize("L", lattice_corpus(5, min_n=2)[:40] + [diamond_m3(), pentagon_n5(), powerset_lattice(3)],
                         ids=lambda L: L.name)
def test_lattice_kernels_agree(L):
    assert np.array_equal(NP.meet_table(L.leq), JIT.meet_table(L.leq))
    assert np.array_equal(NP.meet_table(L.leq.T), JIT.meet_table(L.leq.T))
    assert NP.distributive_witness(L.meet_table, L.join_table) == JIT.distributive_witness(
        L.meet_table, L.join_table
    )
    members = np.arange(L.n, dtype=np.int64)[: min(L.n, 8)]
    assert np.array_equal(NP.subset_meets(L.meet_table, members, L.top),
                          JIT.subset_meets(L.meet_table, members, L.top))
    assert NP.m_condition_witness(L.leq, L.meet_table, members, L.top) == JIT.m_condition_witness(
        L.leq, L.meet_table, members, L.top
    )


def test_meet_table_flags_missing_glb():
    # two minimal elements under a common top: no glb
    leq = np.array([[1, 0, 1], [0, 1, 1], [0, 0, 1]], dtype=bool)
    t = NP.meet_table(leq)
    assert t[0, 1] == -1 and t[0, 2] == 0


@needs_jit
@pytest.mark.parametrize("P", poset_corpus(5), ids=lambda P: P.name)
def test_upset_kernel_agrees(P):
    strict = np.array([m & ~(1 << i) for i, m in enumerate(P.up_masks)], dtype=np.int64)
    top_first = np.array(P.linear_extension[::-1], dtype=np.int64)
    assert np.array_equal(NP.upset_masks(strict, top_first), JIT.upset_masks(strict, top_first))


def _tables(P):
    from upsetlat.poset import upset_masks

    masks = upset_masks(P)
    u = np.searchsorted(masks, masks[:, None] | masks[None, :]).astype(np.int64)
    i = np.searchsorted(masks, masks[:, None] & masks[None, :]).astype(np.int64)
    return masks, u, i


def brute_closed(seed: int, u: np.ndarray, i: np.ndarray) -> list[int]:
    n = len(u)
    out = []
    for f in range(1 << n):
        if f & seed != seed:
            continue
        idx = [k for k in range(n) if f >> k & 1]
        if all(f >> int(u[a, b]) & 1 and f >> int(i[a, b]) & 1 for a in idx for b in idx):
            out.append(f)
    return out


@pytest.mark.parametrize("P", poset_corpus(3), ids=lambda P: P.name)
def test_closed_families_match_brute_force(P):
    masks, u, i = _tables(P)
    seed = 1 | (1 << (len(masks) - 1))
    got = sorted(NP.closed_families(seed, u, i).tolist())
    assert got == brute_closed(seed, u, i)
    if JIT is not None:
        assert sorted(JIT.closed_families(seed, u, i).tolist()) == got


@needs_jit
@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31), st.integers(1, 4))
def test_close_family_agrees(seed, size):
    from upsetlat.corpus import random_poset

    P = random_poset(np.random.default_rng(seed), size)
    masks, u, i = _tables(P)
    rng = np.random.default_rng(seed + 1)
    fam = int(rng.integers(0, 1 << len(masks)))
    a, b = NP.close_family(fam, u, i), JIT.close_family(fam, u, i)
    assert a == b
    assert a & fam == fam
    # closed: re-closing is the identity
    assert NP.close_family(a, u, i) == a
