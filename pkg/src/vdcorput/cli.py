"""Command-line front door.

Subcommands: ``constants``, ``bound``, ``verify`` and ``zeta``.  Exit codes
are 0 on success, 1 when a verification record fails, 2 for usage errors
and 3 when a bound's hypothesis is violated.  Floats are printed with 12
significant digits so identical invocations give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

from . import bounds, constants, verify, zeta
from .errors import HypothesisViolation, VdcError
from .numkernel import DerivativeEnvelope

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_HYPOTHESIS = 0, 1, 2, 3
SIG_DIGITS = 12


@dataclass
class CliConfig:
    subcommand: str
    fmt: str = "json"
    rounding: str = "upward"
    seed: int = 0
    budget: int = 100
    params: dict = field(default_factory=dict)


def _fix(obj):
    """Round every float to SIG_DIGITS significant digits, recursively."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return str(obj)
        return float(f"{obj:.{SIG_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _fix(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_fix(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_fix(obj))


def _text_table(rows: list[dict]) -> str:
    lines = [f"{'d':>4} {'A':>9} {'B':>9} {'C':>9}"]
    for r in rows:
        lines.append(f"{str(r['d']):>4} {r['A']:9.3f} {r['B']:9.3f} {r['C']:9.3f}")
    return "\n".join(lines) + "\n"


def cmd_constants(args, out) -> int:
    rows = constants.emit_table(str(args.table), args.dmax, args.rounding)
    if args.format == "csv":
        out.write(constants.table_to_csv(rows))
    elif args.format == "json":
        out.write(dumps(rows) + "\n")
    else:
        out.write(_text_table(rows))
    return EXIT_OK


def cmd_bound(args, out) -> int:
    consts = constants.ConstantSet(args.rounding)
    if args.which == "kusmin":
        if args.theta is None:
            raise VdcError("--theta is required for --which kusmin")
        res = {"which": "kusmin", "theta": args.theta, "value": bounds.kusmin_landau(args.theta)}
    else:
        Lam = args.Lambda if args.Lambda is not None else args.lam
        d = 2 if args.which == "d2" else args.d
        env = DerivativeEnvelope(d, args.lam, Lam)
        if args.which == "titchmarsh":
            res = {"which": "titchmarsh", "d": d, "value": bounds.titchmarsh_bound(env, args.Y, consts)}
        else:
            fn = bounds.d2_mean_bound if args.which == "d2" else bounds.vdc_dth_bound
            res = {"which": args.which, **fn(env, args.Y, consts).to_dict()}
    out.write(dumps(res) + "\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    suites = verify.SUITES if args.suite == "all" else (args.suite,)
    failures = 0
    for suite in suites:
        records = verify.run_suite(suite, args.budget, args.seed)
        if args.record is not None:
            records = [r for r in records if r.id == args.record]
        summary = verify.summarize(suite, records)
        failures += summary["failures"]
        if args.format == "text":
            for r in records:
                mark = "PASS" if r.passed else "FAIL"
                out.write(f"{mark} {suite}#{r.id} {r.bound_name} direct={r.direct_value:.{SIG_DIGITS}g} "
                          f"bound={r.bound_value:.{SIG_DIGITS}g}\n")
            out.write(f"{suite}: {summary['total']} records, {summary['failures']} failures, "
                      f"max ratio {summary['max_ratio']:.{SIG_DIGITS}g}\n")
        elif args.format == "json":
            out.write(dumps({"summary": summary, "records": [r.to_dict() for r in records]}) + "\n")
        else:
            for r in records:
                out.write(dumps(r.to_dict()) + "\n")
            out.write(dumps({"summary": summary}) + "\n")
    return EXIT_FAIL if failures else EXIT_OK


def cmd_zeta(args, out) -> int:
    if args.critical:
        res = {"t": args.t, "bound": zeta.zeta_critical_bound(args.t, "tau"),
               "bound_t_form": zeta.zeta_critical_bound(args.t, "t")}
        st = zeta.zeta_critical_structured(args.t)
        res.update({"tau": st["tau"], "K": st["K"], "structured": st["value"]})
        if args.with_direct:
            res["direct"] = zeta.critical_sum_direct(args.t)
            res["ratio"] = res["direct"] / res["bound"]
        out.write(dumps(res) + "\n")
        return EXIT_FAIL if args.with_direct and res["ratio"] > 1 else EXIT_OK
    if args.alpha is None:
        raise VdcError("--alpha is required unless --critical is given")
    d = args.d if args.d == "auto" else int(args.d)
    res = zeta.certificate(args.t, args.alpha, args.sigma, d, args.with_direct)
    out.write(dumps(res) + "\n")
    return EXIT_FAIL if args.with_direct and res["ratio"] > 1 + verify.REL_SLACK else EXIT_OK


def _d_arg(s: str):
    if s == "auto":
        return s
    try:
        return int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--d must be an integer or 'auto', got {s!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vdcorput", description="Explicit van der Corput exponential-sum bounds.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    c = sub.add_parser("constants", help="emit a coefficient table")
    c.add_argument("--table", choices=["1", "2"], default="1")
    c.add_argument("--dmax", type=int, default=11)
    c.add_argument("--format", choices=["csv", "json", "text"], default="text")
    c.add_argument("--rounding", choices=constants.ROUNDINGS, default="nearest",
                   help="entries are always rounded up at 3 decimals (default: nearest)")

    b = sub.add_parser("bound", help="evaluate one bound")
    b.add_argument("--which", choices=["vdc", "titchmarsh", "d2", "kusmin"], default="vdc")
    b.add_argument("--d", type=int, default=3)
    b.add_argument("--lambda", dest="lam", type=float, default=1.0)
    b.add_argument("--Lambda", dest="Lambda", type=float, default=None, help="defaults to --lambda")
    b.add_argument("--Y", type=float, default=1000.0)
    b.add_argument("--theta", type=float, default=None)
    b.add_argument("--rounding", choices=constants.ROUNDINGS, default="upward")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=list(verify.SUITES) + ["all"], required=True)
    v.add_argument("--budget", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", choices=["jsonl", "json", "text"], default="jsonl")
    v.add_argument("--record", type=int, default=None, help="replay a single record id")

    z = sub.add_parser("zeta", help="zeta-sum certificate")
    z.add_argument("--t", type=float, required=True)
    z.add_argument("--alpha", type=float, default=None)
    z.add_argument("--sigma", type=float, default=0.0)
    z.add_argument("--d", type=_d_arg, default="auto")
    z.add_argument("--with-direct", action="store_true")
    z.add_argument("--critical", action="store_true", help="bound the critical-line sum up to tau^(1/2)")
    return p


COMMANDS = {"constants": cmd_constants, "bound": cmd_bound, "verify": cmd_verify, "zeta": cmd_zeta}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return COMMANDS[args.subcommand](args, out)
    except HypothesisViolation as e:
        err.write(f"hypothesis violation: {e}\n")
        return EXIT_HYPOTHESIS
    except VdcError as e:
        err.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
