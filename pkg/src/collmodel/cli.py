"""Command-line experiment runner.

Subcommands write CSV (or JSON for ``mc``) to ``--out`` or stdout. Exit codes:
0 on success, 2 for invalid arguments, 3 for numerical failures.
"""

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone

import numpy as np

from .collision import number_operator
from .damping import (
    ContinuousParams,
    eta_analytic,
    eta_integrate,
    eta_recursion,
    params_to_collision,
)
from .embedding import (
    PseudomodeParams,
    integrate_lindblad,
    pseudomode_generator,
    reduced_system,
    sector_trajectory,
)
from .ensembles import KINDS, EnsembleSpec, indivisibility_fraction
from .errors import CollisionModelError, DomainError, IntegrationError
from .nonmarkov import sweep_gG

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class UsageError(Exception):
    pass


def _fmt(x):
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.15g" % float(x)


def _write_csv(header, rows, out):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(x) for x in row])
    _emit(buf.getvalue(), out)


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _require(cond, msg):
    if not cond:
        raise UsageError(msg)


def cmd_eta(args):
    _require(args.dtau > 0, "--dtau must be positive")
    _require(args.steps >= 0, "--steps must be non-negative")
    _require(args.lambda_tilde >= 0, "--lambda-tilde must be non-negative")
    cont = ContinuousParams(args.lambda_tilde, args.omega_tilde)
    disc = eta_recursion(params_to_collision(cont, args.dtau), args.steps).values
    if args.steps == 0:
        ref = np.ones(1, dtype=complex)
    else:
        # fine RK4 grid with an integer number of substeps per collision
        sub = max(1, int(np.ceil(args.dtau / args.oracle_h)))
        ref = eta_integrate(cont, args.steps * args.dtau, args.dtau / sub).values[::sub]
    rows = (
        (n, n * args.dtau, d.real, d.imag, c.real, c.imag, abs(d - c))
        for n, (d, c) in enumerate(zip(disc, ref))
    )
    header = ["n", "tau", "re_eta_disc", "im_eta_disc", "re_eta_cont", "im_eta_cont", "abs_err"]
    _write_csv(header, rows, args.out)


def cmd_sweep(args):
    _require(args.epsilon > 0, "--epsilon must be positive")
    _require(args.epsilon < np.pi / 4, "--epsilon must be below pi/4")
    _require(args.grid >= 2, "--grid must be at least 2")
    _require(args.steps >= 1, "--steps must be at least 1")
    recs = sweep_gG(args.epsilon, args.grid, args.steps, workers=args.workers)
    rows = ((r.g, r.G, r.dtau, r.lambda_tilde, r.nm_optimal, r.nm_suboptimal) for r in recs)
    _write_csv(["g", "G", "dtau", "lambda_tilde", "nm_optimal", "nm_suboptimal"], rows, args.out)


def cmd_mc(args):
    _require(args.ensemble in KINDS, f"unknown ensemble {args.ensemble!r}; choose from {KINDS}")
    _require(args.samples >= 1, "--samples must be at least 1")
    _require(0 <= args.seed < 2**64, "--seed must be a non-negative 64-bit integer")
    spec = EnsembleSpec(args.ensemble, args.seed, args.samples, args.swap_assignment)
    res = indivisibility_fraction(spec, workers=args.workers)
    payload = {
        "ensemble": res.ensemble,
        "samples": res.samples,
        "seed": res.seed,
        "rng_algorithm": res.rng_algorithm,
        "fraction": float(_fmt(res.fraction_indivisible)),
        "ci95": float(_fmt(res.ci95_halfwidth)),
        "excluded_singular": res.excluded_singular,
        "assignment": res.assignment,
        "min_phi2_choi_eigenvalue": float(_fmt(res.min_phi2_choi_eigenvalue)),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    _emit(json.dumps(payload, indent=2) + "\n", args.out)


def cmd_pseudomode(args):
    _require(args.h > 0, "--h must be positive")
    _require(args.tmax > 0, "--tmax must be positive")
    _require(args.gamma > 0, "--gamma must be positive")
    _require(args.lam >= 0, "--lambda must be non-negative")
    p = PseudomodeParams(args.lam, args.gamma, args.omega)
    plus = np.array([1.0, 1.0]) / np.sqrt(2)
    k0 = np.kron(np.outer(plus, plus), np.diag([1.0, 0.0])).astype(complex)
    times, states = integrate_lindblad(pseudomode_generator(p), k0, args.tmax, args.h)
    oracle = eta_analytic(p.dimensionless(), times * args.gamma)
    num = number_operator(2)
    rows = []
    for t, k, o in zip(times, states, oracle):
        e = 2.0 * reduced_system(k)[1, 0]
        rows.append((t, e.real, e.imag, o.real, o.imag, abs(e - o), np.trace(num @ k).real))
    header = ["t", "re_eta_embed", "im_eta_embed", "re_eta_oracle", "im_eta_oracle",
              "abs_err", "excitation_total"]
    _write_csv(header, rows, args.out)


def cmd_embed(args):
    _require(args.steps >= 1, "--steps must be at least 1")
    _require(0 <= args.c1 <= 1, "--c1 must lie in [0, 1]")
    c0 = np.sqrt(1.0 - args.c1**2)
    traj = sector_trajectory(c0, args.c1, args.g, args.G, args.phi, args.steps)
    rows = (
        (n, a.alpha.real, a.alpha.imag, a.beta.real, a.beta.imag, a.xi2, a.prob_total)
        for n, a in enumerate(traj, start=1)
    )
    header = ["n", "re_alpha", "im_alpha", "re_beta", "im_beta", "xi2", "prob_total"]
    _write_csv(header, rows, args.out)


def build_parser():
    parser = argparse.ArgumentParser(prog="collmodel", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with default values for the subcommand flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eta", help="discrete vs continuous coherence factor")
    p.add_argument("--lambda-tilde", type=float, default=1.0)
    p.add_argument("--omega-tilde", type=float, default=0.0)
    p.add_argument("--dtau", type=float, default=0.02)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--oracle-h", type=float, default=1e-4)
    p.set_defaults(func=cmd_eta)

    p = sub.add_parser("sweep", help="non-Markovianity over the (g, G) square")
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--grid", type=int, default=120)
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("mc", help="indivisibility fraction of random two-collision chains")
    p.add_argument("--ensemble", default="haar")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--swap-assignment", action="store_true")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("pseudomode", help="GKSL system+pseudomode trajectory")
    p.add_argument("--lambda", dest="lam", type=float, default=5.0)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--omega", type=float, default=0.0)
    p.add_argument("--tmax", type=float, default=4.0)
    p.add_argument("--h", type=float, default=1e-3)
    p.set_defaults(func=cmd_pseudomode)

    p = sub.add_parser("embed", help="sector amplitudes of the two-qubit embedding")
    p.add_argument("--g", type=float, default=0.3)
    p.add_argument("--G", type=float, default=1.0)
    p.add_argument("--phi", type=float, default=np.pi / 2)
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--c1", type=float, default=1.0)
    p.set_defaults(func=cmd_embed)

    for sp in sub.choices.values():
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        sp.add_argument("--config", help=argparse.SUPPRESS)
    return parser


def _apply_config(parser, argv):
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if not known.config:
        return
    with open(known.config, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise UsageError("config must be a JSON object")
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for sp in sub.choices.values():
        # config keys mirror flag names, e.g. "lambda-tilde" or "lambda_tilde"
        names = {}
        for a in sp._actions:
            for opt in a.option_strings:
                names[opt.lstrip("-").replace("-", "_")] = a.dest
        sp.set_defaults(**{names[k.replace("-", "_")]: v for k, v in cfg.items()
                           if k.replace("-", "_") in names})


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        _apply_config(parser, argv)
    except (OSError, ValueError, UsageError) as exc:
        print(f"collmodel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        args.func(args)
    except (UsageError, DomainError, ValueError) as exc:
        print(f"collmodel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IntegrationError, CollisionModelError, FloatingPointError) as exc:
        print(f"collmodel: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
