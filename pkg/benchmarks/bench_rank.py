"""Compare the jit and numpy elimination backends on banded matrices.

Typical numbers on one core (n=5000, bandwidth 120, 8 entries/row):
the numba kernel runs the three-prime certificate in under a second,
the numpy fallback in a handful of seconds.  Run with --fusion to time
the matrices the K-theory experiments actually feed in.
"""

import argparse
import os
import time

import numpy as np


def random_banded(n: int, half: int, per_row: int, seed: int):
    rng = np.random.default_rng(seed)
    rows = []
    for i in range(n):
        lo, hi = max(0, i - half), min(n, i + half + 1)
        cols = rng.choice(np.arange(lo, hi), size=min(per_row, hi - lo), replace=False)
        rows.append({int(j): int(rng.integers(-9, 10)) for j in cols})
    return rows


def fusion_rows(group: str, k: int):
    from verlinde.cartan import level
    from verlinde.fusion import enumerate_simples, fuse_kw

    simples = sorted(enumerate_simples(group, k), key=lambda w: (level(group, w), w))
    index = {w: i for i, w in enumerate(simples)}
    fund = (1,) if group == "a1" else (0, 1)
    return [
        {index[nu]: m for nu, m in fuse_kw(group, k, fund, mu).items()}
        for mu in simples
    ]


def run(rows, n_cols, label):
    from verlinde import exactmat

    for backend, flag in [("numba", ""), ("numpy", "1")]:
        if flag:
            os.environ["VERLINDE_NO_NUMBA"] = flag
        else:
            os.environ.pop("VERLINDE_NO_NUMBA", None)
        # warm the jit outside the timer
        exactmat.exact_rank([[1]])
        t0 = time.time()
        cert = exactmat.exact_rank(rows, n_cols=n_cols)
        dt = time.time() - t0
        print(
            f"{label:>24}  {backend:>5}  n={cert.n_rows:>5}  b={cert.bandwidth:>4}  "
            f"rank={cert.rank:>5}  agree={cert.agree}  {dt:7.2f}s"
        )


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=5000)
    ap.add_argument("--bandwidth", type=int, default=120)
    ap.add_argument("--per-row", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--fusion", action="store_true",
                    help="also time level-k fusion operators (c2 and g2, k=60)")
    args = ap.parse_args()

    rows = random_banded(args.n, args.bandwidth, args.per_row, args.seed)
    run(rows, args.n, f"random banded {args.n}")

    if args.fusion:
        for group, k in [("c2", 60), ("g2", 60)]:
            rows = fusion_rows(group, k)
            run(rows, len(rows), f"{group} level {k} operator")


if __name__ == "__main__":
    main()
