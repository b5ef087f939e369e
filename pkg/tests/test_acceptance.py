"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Timings exclude the one-off compilation of the numba kernels, which the
module-level warm-up fixture pays before any clock starts.
"""

from __future__ import annotations

import itertools
import time

import numpy as np
import pytest

from upsetlat import io
from upsetlat.birkhoff import represents, upset_lattice
from upsetlat.classes import are_equivalent, class_lattice, classes_over
from upsetlat.cli import main
from upsetlat.corpus import (
    distributive_corpus,
    lattice_corpus,
    poset_corpus,
    random_fuzzy,
    random_operator,
    random_poset,
    upset_lattice_corpus,
)
from upsetlat.errors import InternalDisagreement
from upsetlat.fuzzy import canonical_fuzzy, cuts_are_all_upsets, image_in_m
from upsetlat.birkhoff import UpSetFamily, upset_family
from upsetlat.lattice import (
    graded_chain_check,
    is_distributive,
    is_sublattice,
    isomorphic,
    lattice_from_poset,
    m_poset,
    powerset_lattice,
)
from upsetlat.poset import maximal_chains, poset_isomorphism, upset_masks
from upsetlat.quotient import (
    boolean_embedding_operator,
    complete_sublattices,
    decide_embedding,
    embedded_family,
    quotient,
)


@pytest.fixture(scope="module", autouse=True)
def warm_up():
    from upsetlat.lattice import chain_lattice

    L = powerset_lattice(2)
    represents(L)
    decide_embedding(chain_lattice(2), L)
    classes_over(m_poset(L))
    yield


def report(capsys, n: int, ok: bool, elapsed: float, limit: float, detail: str) -> None:
    status = "PASS" if ok and elapsed < limit else "FAIL"
    with capsys.disabled():
        bound = f"limit {limit:g}s" if limit != float("inf") else "no time limit"
        print(f"\n[criterion {n:>2}] {status}  {elapsed:7.3f}s ({bound})  {detail}")
    assert ok, detail
    assert elapsed < limit, f"took {elapsed:.3f}s, limit {limit}s"


def test_criterion_01_fig2_reproduction(capsys, data_dir, fig2_x, fig2_g):
    t0 = time.perf_counter()
    code = main(["upsets", str(data_dir / "fig2_x.poset")])
    lines = capsys.readouterr().out.splitlines()
    upsets_ok = code == 0 and lines == ["{}", "{b}", "{a,b}", "{b,c}", "{a,b,c}"]
    w = embedded_family(fig2_g)
    t_labels = list(w.quotient_lattice.names)
    family_ok = t_labels == ["{}", "{[b]}", "{[b],[c]}", "{[a],[b],[c]}"]
    image_ok = w.image.member_sets() == {frozenset(), frozenset("b"), frozenset("bc"), frozenset("abc")}
    embeds = decide_embedding(w.quotient_lattice, upset_lattice(fig2_x)).embeds
    elapsed = time.perf_counter() - t0
    report(capsys, 1, upsets_ok and family_ok and image_ok and embeds, elapsed, 1.0,
           f"upsets={lines} F_X/G={t_labels} embeds={embeds}")


def test_criterion_02_fig1_reproduction(capsys, fig1_l, fig1_l0):
    t0 = time.perf_counter()
    sub = is_sublattice(fig1_l, fig1_l0.names)
    v = decide_embedding(fig1_l0, fig1_l)
    elapsed = time.perf_counter() - t0
    report(capsys, 2, sub and not v.embeds, elapsed, 1.0,
           f"sublattice={sub} verdict={'Embeds' if v.embeds else 'DoesNotEmbed'}")


def test_criterion_03_fig3_reproduction(capsys, fig2_g, fig3_g1):
    t0 = time.perf_counter()
    q, q1 = quotient(fig2_g).poset, quotient(fig3_g1).poset
    iso = poset_isomorphism(q, q1) is not None
    chain3 = q.is_chain() and q.n == 3
    eq = are_equivalent(fig2_g, fig3_g1)
    distinct = fig2_g != fig3_g1
    elapsed = time.perf_counter() - t0
    report(capsys, 3, iso and chain3 and eq and distinct, elapsed, 1.0,
           f"G!=G1={distinct} quotients iso={iso} 3-chain={chain3} equivalent={eq}")


def test_criterion_04_representation_legs(capsys):
    t0 = time.perf_counter()
    lattices = lattice_corpus(5, min_n=2)
    exceptions = 0
    representable = 0
    for L in lattices:
        r = represents(L)
        exceptions += r.b1_leg != r.b3_leg
        representable += r.representable
    elapsed = time.perf_counter() - t0
    report(capsys, 4, exceptions == 0, elapsed, 60.0,
           f"{len(poset_corpus(5))} poset classes on 1..5 points, {len(lattices)} non-trivial lattices, "
           f"{representable} representable, {exceptions} exceptions")


def test_criterion_05_graded_chains(capsys):
    t0 = time.perf_counter()
    corpus = lattice_corpus(5, min_n=2) + upset_lattice_corpus(5)
    checked = exceptions = 0
    for L in corpus:
        if not represents(L).representable:
            continue
        n = len(m_poset(L).names)
        checked += 1
        ok = graded_chain_check(L) and all(len(c) == n + 1 for c in maximal_chains(L.order, cap=64))
        exceptions += not ok
    elapsed = time.perf_counter() - t0
    report(capsys, 5, exceptions == 0 and checked > 0, elapsed, 30.0,
           f"{checked} representable lattices, {exceptions} exceptions")


def test_criterion_06_fuzzy_cuts(capsys):
    t0 = time.perf_counter()
    exceptions = 0
    bases = poset_corpus(5)
    for X in bases:
        fam = upset_family(X)
        mu = canonical_fuzzy(fam)
        exceptions += any(mu.cut_mask(i) != m for i, m in enumerate(fam.masks))
    rng = np.random.default_rng(0)
    codomains = lattice_corpus(5, min_n=2) + [F for F in upset_lattice_corpus(3)]
    samples = 1200
    a1_count = 0
    for k in range(samples):
        X = random_poset(rng, int(rng.integers(1, 6)))
        L = codomains[int(rng.integers(len(codomains)))]
        mu = random_fuzzy(rng, X, L, f"mu{k}")
        v = cuts_are_all_upsets(mu)  # raises if the two legs disagree
        if v:
            a1_count += 1
            exceptions += not image_in_m(mu)
    elapsed = time.perf_counter() - t0
    report(capsys, 6, exceptions == 0, elapsed, 60.0,
           f"{len(bases)} canonical families, {samples} random maps ({a1_count} with all cuts), "
           f"{exceptions} exceptions")


def test_criterion_07_embedding_witness(capsys):
    t0 = time.perf_counter()
    rng = np.random.default_rng(1)
    samples, exceptions = 1200, 0
    for k in range(samples):
        X = random_poset(rng, int(rng.integers(1, 7)))
        G = random_operator(rng, X)
        w = embedded_family(G)  # validates every invariant, raising on failure
        img = w.image
        ok = img.has_bounds() and img.is_union_closed() and img.is_intersection_closed()
        ok = ok and set(img.masks) <= set(upset_masks(X).tolist())
        ok = ok and isomorphic(w.quotient_lattice, img.lattice)
        exceptions += not ok
    elapsed = time.perf_counter() - t0
    report(capsys, 7, exceptions == 0, elapsed, 60.0, f"{samples} (X, G) pairs, {exceptions} exceptions")


def test_criterion_08_embedding_legs(capsys):
    t0 = time.perf_counter()
    hosts = [L for L in distributive_corpus(12) if L.n >= 2]
    guests = [L for L in distributive_corpus(32) if L.n >= 2]
    pairs = yes = 0
    for L in hosts:
        for L0 in guests:
            v = decide_embedding(L0, L)  # raises if the legs disagree
            pairs += 1
            yes += v.embeds
            assert v.sublattice_leg == v.direct_leg
    elapsed = time.perf_counter() - t0
    report(capsys, 8, pairs > 0, elapsed, 300.0,
           f"{len(hosts)} hosts x {len(guests)} guests = {pairs} pairs, {yes} embed, 0 disagreements")


def test_criterion_09_boolean_embeddings(capsys):
    t0 = time.perf_counter()
    total = exceptions = 0
    for k in (2, 3, 4):
        L = powerset_lattice(k)
        for S in complete_sublattices(m_poset(L)):
            G = boolean_embedding_operator(L, S)  # verifies L0 = F_(M(L)/G)
            L0 = S.lattice
            ok = isomorphic(L0, upset_lattice(quotient(G).poset)) and decide_embedding(L0, L).embeds
            exceptions += not ok
            total += 1
    elapsed = time.perf_counter() - t0
    report(capsys, 9, exceptions == 0, elapsed, 120.0, f"{total} sublattices of B2, B3, B4, {exceptions} exceptions")


def brute_closed_count(X) -> int:
    ups = upset_masks(X).tolist()
    count = 0
    for k in range(len(ups) + 1):
        for combo in itertools.combinations(ups, k):
            s = set(combo)
            if 0 in s and X.full_mask in s and all(a | b in s and a & b in s for a in s for b in s):
                count += 1
    return count


def test_criterion_10_class_lattice(capsys, fig2_x):
    t0 = time.perf_counter()
    F = upset_lattice(fig2_x)
    cl = class_lattice(F)
    oracle = brute_closed_count(fig2_x)
    base = cl.base
    # M(F_X) is a copy of X; transport up-sets of X along the isomorphism
    to_m = poset_isomorphism(fig2_x, base)

    def key(*groups):
        return UpSetFamily(base, [base.mask_of(to_m[x] for x in g) for g in groups])

    i, j = cl.index_of(key("", "ab", "abc")), cl.index_of(key("", "bc", "abc"))
    spot = cl.meet(i, j).family == key("", "abc")
    checked = failures = 0
    for L in lattice_corpus(5, min_n=2):
        if not is_distributive(L):
            continue
        H = class_lattice(L)
        again = lattice_from_poset(H.lattice.order)
        failures += not (np.array_equal(again.meet_table, H.meet_table)
                         and np.array_equal(again.join_table, H.join_table))
        checked += 1
    elapsed = time.perf_counter() - t0
    report(capsys, 10, len(cl) == 7 == oracle and spot and failures == 0, elapsed, 60.0,
           f"classes={len(cl)} oracle={oracle} spot meet={spot}; "
           f"{checked} distributive lattices validated, {failures} failures")


def test_criterion_11_no_disagreement(capsys, data_dir):
    t0 = time.perf_counter()
    codes = []
    for f in sorted(data_dir.glob("*.lattice")):
        for cmd in ("check", "birkhoff", "hql"):
            codes.append(main([cmd, str(f)]))
    for f in sorted(data_dir.glob("*.fuzzy")):
        codes.append(main(["cuts", str(f)]))
    codes.append(main(["embed", str(data_dir / "fig1_l0.lattice"), str(data_dir / "fig1_l.lattice")]))
    capsys.readouterr()
    io.load_operator(data_dir / "fig2_g.monop")
    elapsed = time.perf_counter() - t0
    raised = InternalDisagreement.raised
    report(capsys, 11, raised == 0 and 5 not in codes, elapsed, float("inf"),
           f"InternalDisagreement raised {raised} times over the suite so far; "
           f"{len(codes)} CLI runs, exit 5 seen {codes.count(5)} times")
