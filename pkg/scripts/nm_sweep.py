"""Non-Markovianity over the (g, G) square and its image in (dtau, lambda~).

Writes the sweep CSV and prints how many points on each side of the
lambda~ = 1/2 divisibility boundary are non-Markovian.
"""

import argparse
from pathlib import Path

from collmodel.nonmarkov import NM_ZERO, sweep_gG


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--epsilon", type=float, default=0.01)
    ap.add_argument("--grid", type=int, default=120)
    ap.add_argument("--steps", type=int, default=30)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", type=Path, default=Path("results/sweep.csv"))
    args = ap.parse_args()

    recs = sweep_gG(args.epsilon, args.grid, args.steps, workers=args.workers)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("g,G,dtau,lambda_tilde,nm_optimal,nm_suboptimal\n")
        for r in recs:
            fh.write(",".join("%.15g" % x for x in
                              (r.g, r.G, r.dtau, r.lambda_tilde, r.nm_optimal, r.nm_suboptimal)) + "\n")

    below = [r for r in recs if r.lambda_tilde < 0.5]
    above = [r for r in recs if r.lambda_tilde >= 0.5]
    nm_below = [r for r in below if r.nm_optimal > NM_ZERO]
    nm_above = [r for r in above if r.nm_optimal > NM_ZERO]
    print(f"{len(recs)} points written to {args.out}")
    print(f"lambda~ < 1/2 : {len(nm_below)}/{len(below)} non-Markovian")
    print(f"lambda~ >= 1/2: {len(nm_above)}/{len(above)} non-Markovian")
    if nm_below:
        worst = max(nm_below, key=lambda r: r.nm_optimal)
        print(f"largest below the boundary: N={worst.nm_optimal:.3g} at g={worst.g:.3f}, "
              f"G={worst.G:.3f}, dtau={worst.dtau:.3f}, lambda~={worst.lambda_tilde:.3f}")


if __name__ == "__main__":
    main()
