"""Per-degree residuals of both KV equations for (F0, G0).

    python3 scripts/kv_residual_table.py --max-degree 10
"""

from __future__ import annotations

import argparse
import time

from liekv.kv_equations import check_eq7, check_eq8, reversal_parts
from liekv.kv_solution import f0_g0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-degree", type=int, default=10)
    args = ap.parse_args()

    start = time.perf_counter()
    pair = f0_g0(args.max_degree)
    lie = check_eq7(pair, args.max_degree).residual
    trace = check_eq8(pair, args.max_degree).residual
    sym, _ = reversal_parts(trace)
    print(f"(F0, G0) through degree {args.max_degree} in {time.perf_counter() - start:.1f}s")
    print(f"{'deg':>3}  {'F0 terms':>8}  {'lie res':>7}  {'trace res':>9}  {'rev-sym':>7}")
    for d in range(1, args.max_degree + 1):
        print(
            f"{d:>3}  {len(pair.F.degree_part(d).terms):>8}  {len(lie.degree_part(d).terms):>7}"
            f"  {len(trace.degree_part(d).terms):>9}  {len(sym.degree_part(d).terms):>7}"
        )
    for w, c in trace:
        print(f"  {c}·({w})")


if __name__ == "__main__":
    main()
