from __future__ import annotations

import itertools

import numpy as np
import pytest

from upsetlat.birkhoff import UpSetFamily, represents, upset_family, upset_lattice
from upsetlat.corpus import distributive_corpus, poset_corpus, random_operator, random_poset
from upsetlat.errors import NotMonotone, PreconditionFailed
from upsetlat.lattice import (
    chain_lattice,
    diamond_m3,
    is_sublattice,
    isomorphic,
    m_poset,
    powerset_lattice,
)
from upsetlat.poset import antichain, poset_isomorphism, upset_masks
from upsetlat.quotient import (
    MonotonicOperator,
    boolean_embedding_operator,
    canonical_operator,
    complete_sublattices,
    decide_embedding,
    embedded_family,
    find_lattice_embedding,
    quotient,
)


def test_operator_validation(fig2_x):
    with pytest.raises(NotMonotone):
        MonotonicOperator.from_mapping(fig2_x, {"a": [], "b": ["a"], "c": []})
    with pytest.raises(ValueError):
        MonotonicOperator.from_mapping(fig2_x, {"a": []})


def test_fig2_quotient(fig2_g):
    q = quotient(fig2_g)
    assert q.poset.names == ("[a]", "[b]", "[c]")
    assert q.poset.cover_pairs() == [("[a]", "[c]"), ("[c]", "[b]")]
    assert poset_isomorphism(q.poset, q.value_poset()) is not None


def test_constant_and_injective_quotients(fig2_x):
    const = MonotonicOperator(fig2_x, [5, 5, 5])
    q = quotient(const)
    assert q.poset.n == 1
    ident = MonotonicOperator(fig2_x, [fig2_x.up_masks[i] for i in range(3)])
    assert poset_isomorphism(quotient(ident).poset, fig2_x) is not None


def test_fig2_embedded_family(fig2_x, fig2_g):
    w = embedded_family(fig2_g)
    assert w.image.member_sets() == {frozenset(), frozenset("b"), frozenset("bc"), frozenset("abc")}
    assert w.quotient_lattice.n == 4 and w.quotient_lattice.order.is_chain()
    assert w.image_of(["[b]", "[c]"]) == {"b", "c"}
    assert w.image_of([]) == set()
    const = MonotonicOperator(fig2_x, [0, 0, 0])
    assert embedded_family(const).image.masks == (0, fig2_x.full_mask)


def all_monotone(X):
    for assign in itertools.product(range(1 << X.n), repeat=X.n):
        if all(assign[y] & ~assign[x] == 0 for x, y in np.argwhere(X.lt)):
            yield MonotonicOperator(X, assign)


@pytest.mark.parametrize("X", poset_corpus(3), ids=lambda P: P.name)
def test_embedding_witness_exhaustive_small(X):
    host = set(upset_masks(X).tolist())
    for G in all_monotone(X):
        w = embedded_family(G)
        assert set(w.image.masks) <= host
        classes = w.quotient.classes
        assert sum(classes) == X.full_mask  # disjoint and covering


@pytest.mark.parametrize("seed", range(40))
def test_embedding_witness_random(seed):
    rng = np.random.default_rng(seed)
    X = random_poset(rng, int(rng.integers(4, 6)))
    w = embedded_family(random_operator(rng, X))
    assert w.image.is_complete_sublattice()


def test_complete_sublattices_of_fig2(fig2_x):
    fams = complete_sublattices(fig2_x)
    assert len(fams) == 7
    assert [len(f) for f in fams] == [2, 3, 3, 3, 4, 4, 5]
    assert all(f.is_complete_sublattice() for f in fams)


def preorder_count(n: int) -> int:
    """Transitive reflexive relations on n points (brute force)."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 0
    for bits in range(1 << len(pairs)):
        rel = np.eye(n, dtype=bool)
        for k, (i, j) in enumerate(pairs):
            rel[i, j] = bool(bits >> k & 1)
        if np.array_equal((rel.astype(int) @ rel.astype(int)) > 0, rel):
            count += 1
    return count


@pytest.mark.parametrize("n", [1, 2, 3])
def test_sublattices_of_powerset_count_preorders(n):
    # {∅, X}-sublattices of a powerset are the down-set lattices of preorders
    assert len(complete_sublattices(antichain(n))) == preorder_count(n)


def test_canonical_operator_examples(fig2_x):
    full = upset_family(fig2_x)
    G = canonical_operator(full)
    assert G.assign == fig2_x.up_masks
    assert poset_isomorphism(quotient(G).poset, fig2_x) is not None
    triv = canonical_operator(UpSetFamily(fig2_x, [0, fig2_x.full_mask]))
    assert set(triv.assign) == {fig2_x.full_mask}
    G1 = canonical_operator(UpSetFamily(fig2_x, [0, fig2_x.mask_of("b"), fig2_x.mask_of("bc"), fig2_x.full_mask]))
    assert G1.as_dict() == {"a": frozenset("abc"), "b": frozenset("b"), "c": frozenset("bc")}
    with pytest.raises(PreconditionFailed):
        canonical_operator(UpSetFamily(fig2_x, [0, fig2_x.mask_of("ab")]))


def test_fig1_decision(fig1_l, fig1_l0):
    assert is_sublattice(fig1_l, fig1_l0.names)
    v = decide_embedding(fig1_l0, fig1_l)
    assert not v.embeds and not v.sublattice_leg and not v.direct_leg
    assert v.direct_map is None


def test_fig2_decision(fig2_x, fig2_g):
    F = upset_lattice(fig2_x)
    L0 = embedded_family(fig2_g).quotient_lattice
    v = decide_embedding(L0, F)
    assert v.embeds and v.direct_map is not None
    assert len(v.family) == 4
    assert isomorphic(upset_lattice(quotient(v.operator).poset), L0)


@pytest.mark.parametrize("L", distributive_corpus(8), ids=lambda L: L.name)
def test_two_chain_always_embeds(L):
    if L.n < 2:
        pytest.skip("trivial")
    v = decide_embedding(chain_lattice(2), L)
    assert v.embeds and v.family.masks == (0, v.base.full_mask)


def test_embedding_preconditions(fig1_l):
    with pytest.raises(PreconditionFailed):
        decide_embedding(diamond_m3(), powerset_lattice(3))
    with pytest.raises(PreconditionFailed):
        decide_embedding(chain_lattice(1), fig1_l)


def test_direct_search_preserves_structure():
    L0, L = chain_lattice(3), powerset_lattice(2)
    f = find_lattice_embedding(L0, L)
    assert f is not None
    for a in L0.names:
        for b in L0.names:
            assert f[L0.meet(a, b)] == L.meet(f[a], f[b])
            assert f[L0.join(a, b)] == L.join(f[a], f[b])
    assert f[L0.bottom_name] == L.bottom_name and f[L0.top_name] == L.top_name


def test_boolean_operator_chain_example():
    L = powerset_lattice(3)
    M = m_poset(L)
    c0, c1, _ = (1 << i for i in range(3))
    S = UpSetFamily(M, [0, c0, c0 | c1, M.full_mask])
    G = boolean_embedding_operator(L, S)
    assert G.assign == (c0, c0 | c1, M.full_mask)
    assert quotient(G).poset.is_chain()
    trivial = boolean_embedding_operator(L, UpSetFamily(M, [0, M.full_mask]))
    assert quotient(trivial).poset.n == 1


def test_boolean_operator_shifted_family():
    L = powerset_lattice(3)
    M = m_poset(L)
    S = UpSetFamily(M, [1, 3, 7])  # smallest member is not empty
    G = boolean_embedding_operator(L, S)
    assert upset_lattice(quotient(G).poset).n == 3


def test_boolean_operator_preconditions(fig1_l):
    with pytest.raises(PreconditionFailed):
        boolean_embedding_operator(fig1_l, UpSetFamily(m_poset(fig1_l), [0, 7]))
    L = powerset_lattice(2)
    with pytest.raises(PreconditionFailed):
        boolean_embedding_operator(L, UpSetFamily(m_poset(L), [1, 2]))


def test_decide_requires_representable_host():
    assert represents(chain_lattice(4)).representable
    assert decide_embedding(chain_lattice(3), chain_lattice(4)).embeds
    assert not decide_embedding(powerset_lattice(2), chain_lattice(4)).embeds
