"""Time every kernel on the numpy and numba backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

Inputs are fixed (no randomness beyond a seeded DAG), so runs are comparable.
The numba column excludes compilation: each kernel is called once before timing.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from upsetlat import kernels
from upsetlat.birkhoff import upset_lattice
from upsetlat.lattice import m_poset
from upsetlat.poset import antichain, chain, validate_poset


def _dag(n: int, p: float, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return np.triu(rng.random((n, n)) < p, 1)


def _upset_inputs(P):
    strict = np.array([m & ~(1 << i) for i, m in enumerate(P.up_masks)], dtype=np.int64)
    return strict, np.array(P.linear_extension[::-1], dtype=np.int64)


def _family_tables(P):
    from upsetlat.poset import upset_masks

    masks = upset_masks(P)
    u = np.searchsorted(masks, masks[:, None] | masks[None, :]).astype(np.int64)
    i = np.searchsorted(masks, masks[:, None] & masks[None, :]).astype(np.int64)
    return 1 | (1 << (len(masks) - 1)), u, i


def cases():
    X = validate_poset([f"x{i}" for i in range(9)], [("x0", "x2"), ("x1", "x2"), ("x3", "x5"), ("x4", "x6")])
    F = upset_lattice(X)  # a distributive lattice with a few hundred elements
    mi = np.array([F.idx(x) for x in m_poset(F).names], dtype=np.int64)
    wide = antichain(18)
    seed, u, i = _family_tables(antichain(4))
    seed5, u5, i5 = _family_tables(chain(5))
    return [
        ("transitive_closure 120", "transitive_closure", (_dag(120, 0.05, 0),)),
        (f"meet_table |L|={F.n}", "meet_table", (F.leq,)),
        (f"distributive_witness |L|={F.n}", "distributive_witness", (F.meet_table, F.join_table)),
        (f"subset_meets |M|={len(mi)}", "subset_meets", (F.meet_table, mi, F.top)),
        (f"m_condition_witness |M|={len(mi)}", "m_condition_witness", (F.leq, F.meet_table, mi, F.top)),
        ("upset_masks antichain 18", "upset_masks", _upset_inputs(wide)),
        ("close_family F(antichain 4)", "close_family", (seed, u, i)),
        ("closed_families F(antichain 4)", "closed_families", (seed, u, i)),
        ("closed_families F(chain 5)", "closed_families", (seed5, u5, i5)),
    ]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("numpy", kernels.numpy_backend)]
    if kernels.jit_backend is not None:
        backends.append(("numba", kernels.jit_backend))
    print(f"{'kernel':<36}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for label, fn, inputs in cases():
        times = []
        results = []
        for _, mod in backends:
            f = getattr(mod, fn)
            results.append(f(*inputs))  # warm-up / compile
            number = 1
            while timeit.timeit(lambda: f(*inputs), number=number) < 0.05 and number < 10_000:
                number *= 4
            t = min(timeit.repeat(lambda: f(*inputs), number=number, repeat=args.repeat)) / number
            times.append(t)
        if len(results) == 2:
            a, b = results
            same = np.array_equal(np.asarray(a), np.asarray(b))
            assert same, f"{fn}: backends disagree"
        speed = f"{times[0] / times[1]:9.1f}x" if len(times) == 2 else ""
        print(f"{label:<36}" + "".join(f"{t * 1e3:10.3f}ms" for t in times) + f"{speed:>10}")


if __name__ == "__main__":
    main()
