"""Discrete vs continuous coherence factor and the step-size convergence table.

Writes one CSV per coupling with the trajectory and prints the max error for a
sequence of halved steps.
"""

import argparse
from pathlib import Path

import numpy as np

from collmodel.cli import main as cli_main
from collmodel.damping import ContinuousParams, eta_analytic, eta_recursion, params_to_collision


def max_error(lam, dtau, tau_max):
    cont = ContinuousParams(lam)
    n = int(round(tau_max / dtau))
    disc = eta_recursion(params_to_collision(cont, dtau), n).values
    return float(np.max(np.abs(disc - eta_analytic(cont, np.arange(n + 1) * dtau))))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--tau-max", type=float, default=4.0)
    ap.add_argument("--halvings", type=int, default=4)
    args = ap.parse_args()
    args.outdir.mkdir(parents=True, exist_ok=True)

    for lam in (1 / 3, 5.0):
        dtau = 0.02 / lam
        steps = int(round(args.tau_max / dtau))
        out = args.outdir / f"eta_lambda{lam:.3g}.csv"
        cli_main(["eta", "--lambda-tilde", repr(lam), "--dtau", repr(dtau),
                  "--steps", str(steps), "--out", str(out)])
        print(f"lambda~={lam:.4g}: wrote {out}")
        prev = None
        for k in range(args.halvings + 1):
            h = dtau / 2**k
            err = max_error(lam, h, args.tau_max)
            ratio = "" if prev is None else f"  ratio {prev / err:.3f}"
            print(f"  dtau={h:.6g}  max|err|={err:.3e}{ratio}")
            prev = err


if __name__ == "__main__":
    main()
