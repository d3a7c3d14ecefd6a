"""All numeric checks on every bundled algebra, one row per (algebra, check).

    python3 scripts/numeric_suite.py --samples 20 --seed 7
"""

from __future__ import annotations

import argparse
import time

from liekv.concrete_lie import (
    BUNDLED,
    check_density,
    check_eq10,
    check_eq11,
    check_eq19,
    check_jq,
    check_trace_bridge,
    get_algebra,
    sample_points,
)
from liekv.kv_solution import f0_g0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--max-degree", type=int, default=10)
    args = ap.parse_args()

    pair = f0_g0(args.max_degree)
    print(f"{'algebra':<11} {'check':<13} {'max rel':>9} {'max abs':>9} {'tol':>7}  ok   time")
    for name in BUNDLED:
        alg = get_algebra(name)
        samples = sample_points(alg, args.samples, args.seed)
        runs = {
            "eq10": lambda: check_eq10(alg, pair, samples, seed=args.seed),
            "eq11": lambda: check_eq11(alg, samples, seed=args.seed),
            "eq19": lambda: check_eq19(alg, pair, samples, seed=args.seed),
            "density": lambda: check_density(alg, samples, args.max_degree, seed=args.seed),
            "jq": lambda: check_jq(alg, samples, seed=args.seed),
            "trace-bridge": lambda: check_trace_bridge(alg, pair, samples, range(1, 8), seed=args.seed),
        }
        for check, run in runs.items():
            start = time.perf_counter()
            rep = run()
            print(
                f"{name:<11} {check:<13} {rep.max_rel_error:>9.1e} {rep.max_abs_error:>9.1e} {rep.tolerance:>7.0e}"
                f"  {'yes' if rep.passed else 'NO ':<3}  {time.perf_counter() - start:.2f}s"
            )


if __name__ == "__main__":
    main()
