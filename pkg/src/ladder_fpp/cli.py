"""Command-line front end: exact constants, sequence tables, Monte Carlo
simulation, and cross-route validation.

Subcommands
-----------
exact      closed-form constants with rigorous error bounds
sequences  table of a_n, b_n, their difference sequences, and Upsilon columns
simulate   Gillespie front chain or lazy-Dijkstra percolation (seeded)
validate   run the cross-route checks; nonzero exit on any failure

Exit codes: 0 success, 2 usage error, 1 validation failure.  Output formats:
plain (12 significant digits with an explicit +- column), json, csv.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import chain, checks, constants, simulate

__all__ = ["main", "entry", "OutputRecord"]


@dataclass
class OutputRecord:
    quantity: str
    value: float | int | str
    err_or_se: float
    method: str  # closed_form | truncated_solve | monte_carlo
    metadata: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "value": self.value,
            "err_or_se": self.err_or_se,
            "method": self.method,
            "metadata": self.metadata,
        }


def _fmt12(x) -> str:
    return f"{x:.12g}" if isinstance(x, float) else str(x)


def emit_records(records: list[OutputRecord], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        json.dump({"records": [r.as_dict() for r in records]}, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out)
        w.writerow(["quantity", "value", "err_or_se", "method", "metadata"])
        for r in records:
            w.writerow([r.quantity, repr(r.value) if isinstance(r.value, float) else r.value,
                        repr(r.err_or_se), r.method, json.dumps(r.metadata, sort_keys=True)])
    else:
        for r in records:
            meta = " ".join(f"{k}={v}" for k, v in r.metadata.items())
            out.write(
                f"{r.quantity:<14} {_fmt12(r.value):>18} ± {r.err_or_se:<12.6g} "
                f"[{r.method}]{('  ' + meta) if meta else ''}\n"
            )


# ---------------------------------------------------------------------------
# exact


def cmd_exact(args) -> int:
    which = [w.strip() for w in args.which.split(",") if w.strip()]
    valid = {"pi0", "tau", "T", "pi_n"}
    bad = set(which) - valid
    if bad:
        raise UsageError(f"unknown quantities: {sorted(bad)} (choose from {sorted(valid)})")
    tol = args.tol
    records = []
    meta = {"tol": tol}
    try:
        for w in which:
            if w == "pi0":
                v = chain.pi0(tol)
                records.append(OutputRecord("pi0", v.value, v.err, "closed_form", meta))
            elif w == "tau":
                v = constants.time_constant(tol)
                records.append(OutputRecord("tau", v.value, v.err, "closed_form", meta))
            elif w == "T":
                v = constants.avg_residual_time(tol)
                records.append(OutputRecord("T", v.value, v.err, "closed_form", meta))
            elif w == "pi_n":
                for n in range(args.n_max + 1):
                    v = chain.pi(n, tol)
                    records.append(OutputRecord(f"pi_{n}", v.value, v.err, "closed_form", meta))
    except ValueError as exc:  # tol below the double-precision floor
        raise UsageError(str(exc)) from exc
    emit_records(records, args.format)
    return 0


# ---------------------------------------------------------------------------
# sequences


SEQ_TABLE_HEADER = ["n", "a_n", "b_n", "A_n", "B_n", "Ups(n+2,0)", "2Ups(n+2,3)+Ups(n+2,0)"]


def _sequence_rows(n_max: int):
    """Yield table rows with O(1) rolling state (values grow to ~36k digits
    at the n_max = 10^4 cap, so nothing is accumulated)."""
    a_seed, b_seed = [3, 11, 56], [1, 5, 26]
    a_win, b_win = [], []  # last three values
    u0 = (1, 1)  # (Upsilon(n+1, 0), Upsilon(n+2, 0)) at n = 1
    u3 = (-1, 0)  # (Upsilon(n+1, 3), Upsilon(n+2, 3)) at n = 1
    a_prev = b_prev = None
    for n in range(1, n_max + 1):
        if n <= 3:
            a_n, b_n = a_seed[n - 1], b_seed[n - 1]
        else:
            a_n = a_win[0] - (n + 1) * a_win[1] + (n + 3) * a_win[2]
            b_n = b_win[0] - (n + 1) * b_win[1] + (n + 3) * b_win[2]
        if n >= 2:
            big_a, rem_a = divmod(a_n - a_prev, n)
            big_b, rem_b = divmod(b_n - b_prev, n)
            assert rem_a == 0 and rem_b == 0, "difference sequences must be integral"
        else:
            big_a = big_b = None  # undefined at n = 1
        yield [n, a_n, b_n, big_a, big_b, u0[1], 2 * u3[1] + u0[1]]
        a_win = (a_win + [a_n])[-3:]
        b_win = (b_win + [b_n])[-3:]
        u0 = (u0[1], (n + 2) * u0[1] - u0[0])
        u3 = (u3[1], (n + 2) * u3[1] - u3[0])
        a_prev, b_prev = a_n, b_n


def cmd_sequences(args) -> int:
    n_max = args.n_max
    if not 1 <= n_max <= chain.SEQ_INDEX_CAP:
        raise UsageError(f"n-max must be in 1..{chain.SEQ_INDEX_CAP}")
    # "printed in full": entries reach ~36k digits at the cap, beyond the
    # interpreter's default int -> str conversion guard
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(max(sys.get_int_max_str_digits(), 100_000))
    header = SEQ_TABLE_HEADER
    if args.format == "json":
        sys.stdout.write('{"columns": %s, "rows": [\n' % json.dumps(header))
        for r in _sequence_rows(n_max):
            sys.stdout.write(json.dumps(r) + (",\n" if r[0] < n_max else "\n"))
        sys.stdout.write("]}\n")
    elif args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(header)
        for r in _sequence_rows(n_max):
            w.writerow(["" if v is None else v for v in r])
    elif n_max <= 200:  # pretty-printed: size the columns in a first pass
        widths = [len(h) for h in header]
        for r in _sequence_rows(n_max):
            widths = [max(w, len(str(v))) for w, v in zip(widths, r)]
        print("  ".join(h.rjust(widths[i]) for i, h in enumerate(header)))
        for r in _sequence_rows(n_max):
            print("  ".join(("" if v is None else str(v)).rjust(widths[i])
                            for i, v in enumerate(r)))
    else:  # ~36k-digit entries: stream space-separated rows
        print(" ".join(header))
        for r in _sequence_rows(n_max):
            print(" ".join("" if v is None else str(v) for v in r))
    return 0


# ---------------------------------------------------------------------------
# simulate


def _dump_trajectory(traj: simulate.ChainTrajectory, path: str) -> None:
    """CSV t,state,height: the state and height in force from time t onward."""
    heights = np.cumsum(traj.height_incremented.astype(np.int64))
    states = traj.states
    jumps = traj.jump_times
    n = traj.n_events
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "state", "height"])
        w.writerow([repr(0.0), traj.initial_state, 0])
        for i in range(n):
            after = int(states[i + 1]) if i + 1 < n else traj.final_state
            w.writerow([repr(float(jumps[i])), after, int(heights[i])])


def cmd_simulate(args) -> int:
    mode = {"front": "front_chain", "fpp": "fpp_dijkstra"}[args.mode]
    initial = {"both": "both_nodes", "single": "single_node"}[args.initial]
    if mode == "front_chain" and args.replicates != 1:
        raise UsageError("--replicates applies to --mode fpp only")
    if mode == "fpp_dijkstra" and args.height is None:
        raise UsageError("--mode fpp requires --height")
    if args.dump_trajectory and mode != "front_chain":
        raise UsageError("--dump-trajectory applies to --mode front only")
    try:
        cfg = simulate.SimConfig(
            seed=args.seed,
            mode=mode,
            target_height=args.height,
            t_max=args.t_max,
            initial=initial,
            replicates=args.replicates,
            burn_in=args.burn_in,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc

    records = []
    if mode == "fpp_dijkstra":
        meta = {"seed": args.seed, "H": args.height, "replicates": args.replicates,
                "initial": args.initial}
        est, _ = simulate.fpp_time_constant(cfg, jobs=args.jobs)
        records.append(OutputRecord("tau", est.mean, est.std_err, "monte_carlo", meta))
    else:
        traj = simulate.simulate_front_chain(cfg)
        if args.dump_trajectory:
            _dump_trajectory(traj, args.dump_trajectory)
        meta = {"seed": args.seed, "t_max": cfg.t_max, "height": cfg.target_height,
                "burn_in": args.burn_in, "events": traj.n_events}
        if traj.total_time <= args.burn_in:
            raise UsageError("run too short for the requested burn-in")
        if args.report == "tau":
            rate = simulate.height_rate_estimate(traj, args.burn_in)
            records.append(OutputRecord("inv_tau", rate.mean, rate.std_err, "monte_carlo", meta))
            records.append(OutputRecord(
                "tau", 1.0 / rate.mean, rate.std_err / rate.mean ** 2, "monte_carlo", meta
            ))
        elif args.report == "front-dist":
            for est in simulate.empirical_front_distribution(traj, args.burn_in):
                records.append(OutputRecord(est.quantity, est.mean, est.std_err,
                                            "monte_carlo", meta))
        else:  # residual
            rng = simulate.make_stream(args.seed, 1)
            margin = 50.0
            span = traj.total_time - args.burn_in - margin
            if span <= 0:
                raise UsageError("run too short for residual sampling")
            times = args.burn_in + span * rng.random(args.samples)
            est, excluded = simulate.empirical_residual_time(traj, times)
            meta = dict(meta, excluded=excluded)
            records.append(OutputRecord("mean_residual", est.mean, est.std_err,
                                        "monte_carlo", meta))
    emit_records(records, args.format)
    return 0


# ---------------------------------------------------------------------------
# validate


def cmd_validate(args) -> int:
    if args.level == "full":
        if args.seed is None:
            raise UsageError("validate full requires --seed")
        results = checks.run_full_checks(args.seed, jobs=args.jobs)
    else:
        results = checks.run_quick_checks()
    failures = 0
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name:<24} {detail}")
        failures += 0 if ok else 1
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# parser


class UsageError(Exception):
    pass


def _positive_float(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError(f"{text} is not > 0")
    return x


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ladder-fpp",
        description="First-passage percolation on the ladder: exact constants and simulation.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    default_jobs = int(os.environ.get("LADDER_FPP_JOBS", "1"))

    pe = sub.add_parser("exact", help="closed-form constants with error bounds")
    pe.add_argument("--tol", type=_positive_float, default=1e-10)
    pe.add_argument("--which", default="pi0,tau,T",
                    help="comma list from pi0,tau,T,pi_n")
    pe.add_argument("--n-max", type=int, default=10, help="largest n for pi_n")
    pe.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    pe.set_defaults(func=cmd_exact)

    ps = sub.add_parser("sequences", help="a_n/b_n table with Upsilon columns")
    ps.add_argument("--n-max", type=int, required=True)
    ps.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    ps.set_defaults(func=cmd_sequences)

    pm = sub.add_parser("simulate", help="seeded Monte Carlo runs")
    pm.add_argument("--mode", choices=["front", "fpp"], required=True)
    pm.add_argument("--seed", type=int, required=True)
    g = pm.add_mutually_exclusive_group(required=True)
    g.add_argument("--height", type=int, default=None)
    g.add_argument("--t-max", type=float, default=None)
    pm.add_argument("--replicates", type=int, default=1)
    pm.add_argument("--initial", choices=["both", "single"], default="both")
    pm.add_argument("--burn-in", type=float, default=100.0)
    pm.add_argument("--report", choices=["tau", "front-dist", "residual"], default="tau")
    pm.add_argument("--samples", type=int, default=10000,
                    help="sample times for --report residual")
    pm.add_argument("--jobs", type=int, default=default_jobs,
                    help="parallel replicates (env LADDER_FPP_JOBS)")
    pm.add_argument("--dump-trajectory", default=None, metavar="PATH",
                    help="write CSV t,state,height (front mode)")
    pm.add_argument("--format", choices=["plain", "json", "csv"], default="plain")
    pm.set_defaults(func=cmd_simulate)

    pv = sub.add_parser("validate", help="cross-route checks; exit 1 on failure")
    pv.add_argument("level", choices=["quick", "full"])
    pv.add_argument("--seed", type=int, default=None)
    pv.add_argument("--jobs", type=int, default=default_jobs)
    pv.set_defaults(func=cmd_validate)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog}: error: {exc}\n")


def entry() -> None:
    sys.exit(main())
