"""Command-line interface.

Subcommands: le, nle, q, branches, table1, sweep, spread, ghz-check.
Exit codes: 0 success, 2 malformed input, 3 numerical failure, 4 usage
error.  All output is deterministic for fixed flags and seed; CSV floats
carry 12 significant digits.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from .dynamics import IsingChain
from .entanglement import classical_correlation_q
from .experiments import (
    find_max_diff_state,
    run_branch_spread_study,
    run_difference_study,
    run_time_sweep,
)
from .localize import OptimizerConfig, maximize
from .qstate import ghz, load_state

DEFAULT_MAXDIFF_SEED = 101
DEFAULT_MAXDIFF_SAMPLES = 400


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(4, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _parse_pair(text: str | None, num_qubits: int) -> tuple[int, int]:
    if text is None:
        return 1, num_qubits
    parts = text.split(",")
    if len(parts) != 2:
        raise ValueError(f"--pair expects 'a,b', got {text!r}")
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ValueError(f"--pair expects integers, got {text!r}") from exc
    return a, b


def _config(args) -> OptimizerConfig:
    return OptimizerConfig(
        seed=args.seed,
        restarts=args.restarts,
        max_evaluations=args.max_evals,
        objective_tolerance=args.obj_tol,
    )


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_line(obj) -> str:
    return json.dumps(obj) + "\n"


def _basis_json(basis) -> dict:
    return {
        "measured_sites": list(basis.measured_sites),
        "alphas": [float(a) for a in basis.angles[:, 0]],
        "betas": [float(b) for b in basis.angles[:, 1]],
    }


def _branches_json(branches) -> list[dict]:
    return [
        {
            "bits": b.outcome_bits,
            "probability": b.probability,
            "concurrence": b.concurrence,
        }
        for b in branches
    ]


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _cmd_measure(args) -> int:
    state = load_state(args.state)
    pair = _parse_pair(args.pair, state.num_qubits)
    if args.command == "q":
        res = classical_correlation_q(state, pair)
        payload = {
            "objective": "q",
            "value": res.q,
            "pair": list(pair),
            "alpha_hat": [res.alpha_hat.x, res.alpha_hat.y, res.alpha_hat.z],
            "beta_hat": [res.beta_hat.x, res.beta_hat.y, res.beta_hat.z],
        }
    else:
        res = maximize(state, pair, args.command, _config(args))
        payload = {
            "objective": args.command,
            "value": res.value,
            "pair": list(pair),
            "basis": _basis_json(res.basis),
            "diagnostics": {
                "restarts": res.optimizer_report.restarts,
                "evaluations": res.optimizer_report.evaluations,
                "best_restart": res.optimizer_report.best_restart,
            },
        }
    if not np.isfinite(payload["value"]):
        raise FloatingPointError("measure did not produce a finite value")
    _emit(_json_line(payload), args.out)
    return 0


def _cmd_branches(args) -> int:
    state = load_state(args.state)
    pair = _parse_pair(args.pair, state.num_qubits)
    res = maximize(state, pair, args.objective, _config(args))
    payload = {
        "objective": args.objective,
        "value": res.value,
        "pair": list(pair),
        "basis": _basis_json(res.basis),
        "branches": _branches_json(res.branches),
    }
    _emit(_json_line(payload), args.out)
    return 0


def _cmd_table1(args) -> int:
    pair = _parse_pair(args.pair, args.num_qubits)
    summary, records = run_difference_study(
        args.num_qubits, pair, args.samples, args.seed, _config(args)
    )
    if args.out:
        rows = [
            (
                r.seed,
                _fmt(r.le),
                _fmt(r.nle),
                _fmt(r.diff),
                "" if r.rel_diff is None else _fmt(r.rel_diff),
            )
            for r in records
        ]
        _emit(_csv_text(("seed", "le", "nle", "diff", "rel_diff"), rows), args.out)
    sys.stdout.write(
        _json_line(
            {
                "num_qubits": summary.num_qubits,
                "samples": summary.samples,
                "mr": summary.mr,
                "md": summary.md,
                "a": summary.a,
                "argmax_seed": summary.argmax_seed,
            }
        )
    )
    return 0


def _sweep_svg(points, t_min, t_max) -> str:
    width, height = 640.0, 440.0
    left, right, top, bottom = 70.0, 20.0, 20.0, 60.0
    y_max = 1.05

    def sx(t):
        return left + (t - t_min) / (t_max - t_min) * (width - left - right)

    def sy(v):
        return height - bottom - v / y_max * (height - top - bottom)

    def poly(values, style):
        pts = " ".join(f"{sx(p.time):.2f},{sy(v):.2f}" for p, v in zip(points, values))
        return f'<polyline fill="none" stroke="black" {style} points="{pts}"/>'

    x0, x1 = sx(t_min), sx(t_max)
    y0, y1 = sy(0.0), sy(1.0)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y0:.2f}" stroke="black"/>',
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x0:.2f}" y2="{sy(y_max):.2f}" stroke="black"/>',
        f'<text x="{(x0 + x1) / 2:.2f}" y="{height - 15:.2f}" text-anchor="middle">t (hbar/J)</text>',
        f'<text x="18" y="{(y0 + y1) / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {(y0 + y1) / 2:.2f})">value</text>',
    ]
    for t in (t_min, 0.0, t_max) if t_min < 0.0 < t_max else (t_min, t_max):
        parts.append(
            f'<line x1="{sx(t):.2f}" y1="{y0:.2f}" x2="{sx(t):.2f}" y2="{y0 + 5:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{sx(t):.2f}" y="{y0 + 20:.2f}" text-anchor="middle">{_fmt(t)}</text>'
        )
    for v in (0.0, 0.5, 1.0):
        parts.append(
            f'<line x1="{x0 - 5:.2f}" y1="{sy(v):.2f}" x2="{x0:.2f}" y2="{sy(v):.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x0 - 10:.2f}" y="{sy(v) + 4:.2f}" text-anchor="end">{_fmt(v)}</text>'
        )
    parts.append(poly([p.le for p in points], ""))
    parts.append(poly([p.nle for p in points], 'stroke-dasharray="7 4"'))
    parts.append(poly([p.q for p in points], 'stroke-dasharray="8 3 2 3"'))
    legend_y = top + 10
    for label, dash in (("LE", ""), ("NLE", "7 4"), ("Q", "8 3 2 3")):
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        parts.append(
            f'<line x1="{width - 120:.2f}" y1="{legend_y:.2f}" x2="{width - 90:.2f}" '
            f'y2="{legend_y:.2f}" stroke="black"{dash_attr}/>'
        )
        parts.append(
            f'<text x="{width - 84:.2f}" y="{legend_y + 4:.2f}">{label}</text>'
        )
        legend_y += 18
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cmd_sweep(args) -> int:
    if args.auto_maxdiff:
        initial = find_max_diff_state(
            4, None, args.samples or DEFAULT_MAXDIFF_SAMPLES,
            DEFAULT_MAXDIFF_SEED, _config(args),
        )
    elif args.state:
        initial = load_state(args.state)
    else:
        raise ValueError("sweep needs --state or --auto-maxdiff")
    pair = _parse_pair(args.pair, initial.num_qubits)
    chain = IsingChain(initial.num_qubits)
    points = run_time_sweep(
        initial, chain, pair, args.tmin, args.tmax, args.steps, _config(args)
    )
    if args.format == "svg":
        _emit(_sweep_svg(points, args.tmin, args.tmax), args.out)
    else:
        rows = [(_fmt(p.time), _fmt(p.le), _fmt(p.nle), _fmt(p.q)) for p in points]
        _emit(_csv_text(("t", "le", "nle", "q"), rows), args.out)
    return 0


def _cmd_spread(args) -> int:
    pair = _parse_pair(args.pair, args.num_qubits)
    bins = run_branch_spread_study(
        args.num_qubits, pair, args.samples, args.bin_width, args.seed, _config(args)
    )
    rows = [
        (_fmt(b.le_lo), _fmt(b.le_hi), b.count, _fmt(b.c_min), _fmt(b.c_max))
        for b in bins
    ]
    _emit(_csv_text(("le_lo", "le_hi", "count", "c_min", "c_max"), rows), args.out)
    return 0


def _cmd_ghz_check(args) -> int:
    state = ghz(3)
    config = _config(args)
    le = maximize(state, (1, 2), "le", config)
    nle = maximize(state, (1, 2), "nle", config)
    branch_ok = all(
        abs(b.probability - 0.5) <= 1e-6 and abs(b.concurrence - 1.0) <= 1e-6
        for b in le.branches
    )
    ok = abs(le.value - 1.0) <= 1e-6 and abs(nle.value - 1.0) <= 1e-6 and branch_ok
    payload = {
        "le": le.value,
        "nle": nle.value,
        "branches": _branches_json(le.branches),
        "pass": ok,
    }
    _emit(_json_line(payload), args.out)
    return 0 if ok else 3


def build_parser() -> _Parser:
    parser = _Parser(prog="locent", description=__doc__)
    opt = argparse.ArgumentParser(add_help=False)
    opt.add_argument("--seed", type=int, default=0, help="master random seed")
    opt.add_argument("--restarts", type=int, default=24, help="optimizer restarts")
    opt.add_argument("--max-evals", type=int, default=2000,
                     help="objective evaluations per restart")
    opt.add_argument("--obj-tol", type=float, default=1e-8,
                     help="objective convergence tolerance")
    opt.add_argument("--out", default=None, help="output file (default stdout)")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, help_text in (
        ("le", "average localized entanglement of a state file"),
        ("nle", "worst-branch localized entanglement of a state file"),
        ("q", "maximal classical correlation of a state file"),
    ):
        p = sub.add_parser(name, parents=[opt], help=help_text)
        p.add_argument("--state", required=True, help="state file (JSON)")
        p.add_argument("--pair", default=None, help="site pair a,b (default 1,n)")
        p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("branches", parents=[opt],
                       help="measurement branches at the optimal basis")
    p.add_argument("--state", required=True)
    p.add_argument("--pair", default=None)
    p.add_argument("--objective", choices=("le", "nle"), default="le")
    p.set_defaults(func=_cmd_branches)

    p = sub.add_parser("table1", parents=[opt],
                       help="MR/MD/A difference statistics over a random ensemble")
    p.add_argument("-n", "--num-qubits", type=int, required=True)
    p.add_argument("--samples", type=int, default=5000)
    p.add_argument("--pair", default=None)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("sweep", parents=[opt],
                       help="LE/NLE/Q sweep of an Ising-evolved state")
    p.add_argument("--state", default=None)
    p.add_argument("--auto-maxdiff", action="store_true",
                   help="regenerate the 4-qubit max-difference initial state")
    p.add_argument("--samples", type=int, default=None,
                   help="ensemble size for --auto-maxdiff")
    p.add_argument("--pair", default=None)
    p.add_argument("--tmin", type=float, default=-0.5)
    p.add_argument("--tmax", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=51)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("spread", parents=[opt],
                       help="branch-concurrence spread binned by LE")
    p.add_argument("-n", "--num-qubits", type=int, required=True)
    p.add_argument("--samples", type=int, default=5000)
    p.add_argument("--bin-width", type=float, default=0.01)
    p.add_argument("--pair", default=None)
    p.set_defaults(func=_cmd_spread)

    p = sub.add_parser("ghz-check", parents=[opt],
                       help="golden check: GHZ(3) localizes a full Bell pair")
    p.set_defaults(func=_cmd_ghz_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"locent: input error: {exc}", file=sys.stderr)
        return 2
    except (FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"locent: numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
