"""Evaluate the high-degree trace-identity residual of (F0, G0) on larger Lie algebras.

The universal residual at degrees 8 and 10 consists of necklace pairs
``c (w - reverse w)``. This script checks, on matrix Lie algebras beyond the
bundled ones, that each such pair has equal concrete traces, so the residual
evaluates to zero there.

    python3 scripts/reversal_traces.py --samples 5
"""

from __future__ import annotations

import argparse
from itertools import product

import numpy as np

from liekv.concrete_lie import evaluate_cyclic, from_matrices, get_algebra, sample_points
from liekv.free_algebra import CyclicSeries, least_rotation
from liekv.kv_equations import check_eq8, reverse_cyclic, trace_rhs
from liekv.kv_solution import f0_g0


def unit(n, i, j):
    m = [[0] * n for _ in range(n)]
    m[i][j] = 1
    return m


def sl3():
    mats = [unit(3, i, j) for i, j in product(range(3), repeat=2) if i != j]
    mats += [[[1, 0, 0], [0, -1, 0], [0, 0, 0]], [[0, 0, 0], [0, 1, 0], [0, 0, -1]]]
    return from_matrices("sl3", mats)


def borel3():
    return from_matrices("b3", [unit(3, i, j) for i in range(3) for j in range(i, 3)])


def sl2_semidirect_plane():
    # (A, v) -> [[A, v], [0, 0]] with A in sl2
    mats = [
        [[1, 0, 0], [0, -1, 0], [0, 0, 0]],
        [[0, 1, 0], [0, 0, 0], [0, 0, 0]],
        [[0, 0, 0], [1, 0, 0], [0, 0, 0]],
        unit(3, 0, 2),
        unit(3, 1, 2),
    ]
    return from_matrices("sl2xR2", mats)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--max-degree", type=int, default=10)
    args = ap.parse_args()

    n = args.max_degree
    residual = check_eq8(f0_g0(n), n).residual
    t = trace_rhs(n)
    # necklaces that differ from their own reversal
    chiral = sorted(w for w in residual.terms if least_rotation(w[::-1]) != w)
    print(f"residual degrees {sorted(residual.degrees())}, {len(residual.terms)} necklaces")
    algebras = [get_algebra(a) for a in ("aff1", "sl2", "so3")] + [sl3(), borel3(), sl2_semidirect_plane()]
    for alg in algebras:
        worst_res, worst_pair, scale = 0.0, 0.0, 0.0
        for x, y in sample_points(alg, args.samples, args.seed):
            worst_res = max(worst_res, abs(evaluate_cyclic(residual, alg, x, y)))
            scale = max(scale, abs(evaluate_cyclic(t.degree_part(8), alg, x, y)))
            for w in chiral:
                pair = CyclicSeries({w: 1}) - reverse_cyclic(CyclicSeries({w: 1}))
                worst_pair = max(worst_pair, abs(evaluate_cyclic(pair, alg, x, y)))
        print(
            f"{alg.name:<8} dim {alg.dim}: |residual| <= {worst_res:.1e}, "
            f"|tr w - tr rev w| <= {worst_pair:.1e}, |T_8| ~ {scale:.1e}"
        )


if __name__ == "__main__":
    main()
