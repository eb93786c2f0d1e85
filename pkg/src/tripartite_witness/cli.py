"""Command-line entry point.

Exit codes: 0 on success, 1 when a tolerance or validation check fails, 2 on
usage errors (bad flags, unreadable or malformed input, violated
preconditions).
"""

import argparse
import os
import sys

import numpy as np

from . import criteria, oracle, reports, states, textio
from .basis import index_pairs, principal_basis
from .criteria import CoefficientTriple
from .errors import ConvergenceError, NoCrossing, ToleranceExceeded, WitnessError
from .tensor import decompose

DEFAULT_SEED = 20240101
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def default_seed():
    raw = os.environ.get("WITNESS_SEED")
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"WITNESS_SEED must be an integer, got {raw!r}") from exc


def load_state(source, dim, noise=None, convention=None):
    """Resolve ``ghz``, ``w`` or ``file:<path>`` plus optional white noise."""
    if source == "ghz":
        target = states.ghz(dim)
        convention = convention or "eq8"
    elif source == "w":
        if dim != 2:
            raise UsageError("the W state is defined for --dim 2 only")
        target = states.w3()
        convention = convention or "eq10"
    elif source.startswith("file:"):
        m = textio.read_matrix(source[5:])
        target = m.ravel() if 1 in m.shape else m
        convention = convention or "eq8"
    else:
        raise UsageError(f"unknown state source {source!r}; use ghz, w or file:<path>")
    if noise is None:
        return states.as_density(target)
    if not 0.0 <= noise <= 1.0:
        raise UsageError("--noise must lie in [0, 1]")
    weight = 1.0 - noise if convention == "eq8" else noise
    return states.check_density(states.mix_with_noise(target, weight))


def _label(p):
    return f"{p[0]},{p[1]}"


def cmd_basis(args, out):
    b = principal_basis(args.dim)
    pairs = [tuple(args.index)] if args.index else index_pairs(args.dim, include_identity=True)
    for p in pairs:
        if not all(0 <= i < args.dim for i in p):
            raise UsageError(f"index {p} out of range for dimension {args.dim}")
        out.write(f"# A[{_label(p)}]\n")
        out.write(textio.format_matrix(b[p]))
    return EXIT_OK


def cmd_expand(args, out):
    rho = load_state(args.state, args.dim, args.noise, args.convention)
    dec = decompose(rho)
    pairs = index_pairs(dec.d, include_identity=True)
    names = {(1, 0, 0): "u", (0, 1, 0): "v", (0, 0, 1): "w", (1, 1, 0): "x", (1, 0, 1): "y", (0, 1, 1): "z", (1, 1, 1): "r"}
    lines = []
    for idx in np.ndindex(dec.full.shape):
        present = tuple(int(i != 0) for i in idx)
        if present == (0, 0, 0):
            continue
        value = dec.full[idx]
        if abs(value) <= args.threshold:
            continue
        tag = "".join(f"[{_label(pairs[i])}]" for i in idx if i != 0)
        lines.append((names[present], tag, value))
    for name, tag, value in sorted(lines, key=lambda t: (t[0], t[1])):
        out.write(f"{name}{tag} = {textio.format_complex(value)}\n")
    return EXIT_OK


def cmd_detect(args, out):
    rho = load_state(args.state, args.dim, args.noise, args.convention)
    coeffs = CoefficientTriple.parse(args.coeffs) if args.coeffs else None
    if args.criterion in ("cor1", "cor2") and coeffs is None:
        raise UsageError(f"--coeffs is required for {args.criterion}")
    verdicts = criteria.evaluate(rho, args.criterion, coeffs, args.assume_convexity, args.margin)
    for v in verdicts:
        out.write(f"# {v.criterion} on {v.bipartition}: trace norm {v.witness:.6f} vs bound {v.bound:.6f} -> {v.conclusion}\n")
    for v in verdicts:
        out.write(v.line() + "\n")
    flagged = [v.bipartition for v in verdicts if v.entangled]
    out.write(f"# summary: {'entangled under ' + ', '.join(flagged) if flagged else 'no detection'}\n")
    return EXIT_OK


def cmd_sweep(args, out):
    coeffs = CoefficientTriple.parse(args.coeffs) if args.coeffs else None
    criterion = args.criterion or {"ghz": "cor1", "w": "cor2"}[args.family]
    value = criteria.sweep_threshold(args.family, criterion, coeffs, d=args.dim)
    side = "x <" if args.family == "ghz" else "x >"
    if criterion == "cor1" and args.family == "ghz":
        out.write(f"analytic {criteria.ghz_threshold(coeffs):.10f}\n")
    elif criterion == "cor2" and args.family == "w":
        out.write(f"analytic {criteria.f_delta(coeffs.a / coeffs.b):.10f}\n")
    out.write(f"# flagged for {side} threshold\n")
    out.write(f"threshold {value:.10f}\n")
    return EXIT_OK


def cmd_reproduce_tables(args, out):
    text, ok = reports.reproduce_tables(args.tol)
    out.write(text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_fdelta(args, out):
    text = reports.fdelta_csv(args.start, args.stop, args.step)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        out.write(f"# wrote {args.csv}\n")
    else:
        out.write(text)
    return EXIT_OK


def cmd_validate(args, out):
    seed = args.seed if args.seed is not None else default_seed()
    coeffs = CoefficientTriple.parse(args.coeffs)
    report = oracle.validate_bounds(
        seed,
        args.dim,
        args.case,
        args.bipartition,
        samples=args.samples,
        coeffs=tuple(coeffs),
        frame=args.frame,
        tol=args.tol,
        jobs=args.jobs,
    )
    for line in report.lines():
        out.write(line + "\n")
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(prog="triwit", description="Tripartite entanglement tests from principal-basis correlation tensors.")
    sub = parser.add_subparsers(dest="command", required=True)

    def state_args(p):
        p.add_argument("--state", required=True, help="ghz, w or file:<path>")
        p.add_argument("--dim", type=int, default=2)
        p.add_argument("--noise", type=float, default=None)
        p.add_argument("--convention", choices=("eq8", "eq10"), default=None,
                       help="eq8: noise weight x (GHZ default); eq10: state weight x (W default)")

    p = sub.add_parser("basis", help="print principal basis matrices")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--index", type=int, nargs=2, metavar=("I", "J"))
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("expand", help="print nonzero correlation coefficients")
    state_args(p)
    p.add_argument("--threshold", type=float, default=1e-12)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("detect", help="apply a criterion")
    state_args(p)
    p.add_argument("--criterion", choices=("cor1", "cor2", "thm2"), required=True)
    p.add_argument("--coeffs", help="a,b,c (fractions allowed, e.g. 5,1/3,5)")
    p.add_argument("--assume-convexity", action="store_true")
    p.add_argument("--margin", type=float, default=criteria.DETECTION_MARGIN)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("sweep", help="bisect the noise threshold of a family")
    p.add_argument("--family", choices=("ghz", "w"), required=True)
    p.add_argument("--coeffs")
    p.add_argument("--criterion", choices=("cor1", "cor2", "thm2"))
    p.add_argument("--dim", type=int, default=2)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("reproduce-tables", help="recompute both threshold tables")
    p.add_argument("--tol", type=float, default=reports.TABLE_TOL)
    p.add_argument("--seed", type=int, default=None, help="accepted for uniformity; the tables are deterministic")
    p.set_defaults(func=cmd_reproduce_tables)

    p = sub.add_parser("fdelta", help="tabulate f(delta) as CSV")
    p.add_argument("--from", dest="start", type=float, default=-2.0)
    p.add_argument("--to", dest="stop", type=float, default=2.0)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--csv", help="output path (stdout if omitted)")
    p.set_defaults(func=cmd_fdelta)

    p = sub.add_parser("validate", help="Monte-Carlo search for bound violations")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--case", choices=("i", "ii"), required=True)
    p.add_argument("--bipartition", choices=states.BIPARTITIONS, required=True)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--seed", type=int, default=None, help="defaults to $WITNESS_SEED or %d" % DEFAULT_SEED)
    p.add_argument("--coeffs", default="0,1,0", help="qubit coefficient triple")
    p.add_argument("--frame", choices=("general", "canonical"), default="general")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except (NoCrossing, ToleranceExceeded, ConvergenceError) as exc:
        sys.stderr.write(f"triwit {args.command}: {exc}\n")
        return EXIT_FAIL
    except (UsageError, WitnessError, ValueError, OSError) as exc:
        sys.stderr.write(f"triwit {args.command}: error: {exc}\n")
        return EXIT_USAGE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
