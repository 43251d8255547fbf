"""Command-line front end: ``deltalp <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 precision exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import replace
from fractions import Fraction

from . import ball as B
from . import curves, harness, specfun
from .ball import DEFAULT_PREC, MAX_PREC, Ball
from .constructions import SampleWindow, SequenceWindow, delta_appell_poly, jensen_poly
from .errors import DeltaLPError, DomainError, PrecisionExhausted
from .poly import IntervalPolynomial, RootSign, Verdict, certify_adaptive, refine_isolation

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _number(text: str):
    try:
        return B.parse_number(text, MAX_PREC)
    except (ValueError, SyntaxError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _number_list(text: str) -> list:
    return [_number(t) for t in text.split(",") if t.strip()]


def _at(x, prec: int):
    """Re-evaluate a parsed constant at the working precision."""
    return x if isinstance(x, (int, Fraction)) else x.with_prec(prec)


def _fmt(x, digits: int | None = None) -> str:
    if isinstance(x, Ball):
        return B.format_ball(x, digits)
    if isinstance(x, Fraction) and x.denominator >= 10**6:
        return B.format_ball(Ball.from_value(x, 128), digits or 20)
    return str(x)


# -- output -----------------------------------------------------------------------


class Output:
    def __init__(self, args):
        self.fmt = args.format
        self.path = args.out

    def emit(self, text: str) -> None:
        if not text.endswith("\n"):
            text += "\n"
        if self.path:
            with open(self.path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    def table(self, header: list[str], rows: list[list], extra: dict | None = None) -> None:
        fmt = self.fmt or "plain"
        if fmt == "json":
            payload = dict(extra or {})
            payload["rows"] = [dict(zip(header, map(str, r))) for r in rows]
            self.emit(json.dumps(payload, indent=2, ensure_ascii=False))
        elif fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)
            self.emit(buf.getvalue())
        else:
            lines = [f"{k}: {v}" for k, v in (extra or {}).items()]
            lines += ["  ".join(str(c) for c in r) for r in rows]
            self.emit("\n".join(lines))


# -- eval ---------------------------------------------------------------------------


def cmd_eval(args, out: Output) -> int:
    p = args.precision
    fn = args.function
    if fn == "bessel-clifford":
        v = specfun.bessel_clifford(_at(args.nu, p), _at(args.t, p), p)
        out.table(["value"], [[_fmt(v)]], {"function": fn, "nu": _fmt(args.nu, 20), "t": _fmt(args.t, 20)})
    elif fn == "gamma":
        v = specfun.gamma(_at(args.z, p), p)
        if v is None:
            raise DomainError(f"Gamma has a pole at {args.z}")
        out.table(["value"], [[_fmt(v)]], {"function": fn, "z": _fmt(args.z, 20)})
    elif fn == "r-alpha":
        v = specfun.r_alpha(args.alpha, args.n, p)
        out.table(["value"], [[_fmt(v)]], {"function": fn, "alpha": str(args.alpha), "n": args.n})
    elif fn == "partition":
        table = specfun.partition_numbers(args.n_max)
        out.table(["n", "p"], [[n, table[n]] for n in range(args.n_max + 1)], {"function": fn})
    else:
        table = specfun.fractional_partition(args.alpha, args.n_max)
        out.table(["n", "p_alpha"], [[n, table[n]] for n in range(args.n_max + 1)],
                  {"function": fn, "alpha": str(args.alpha)})
    return EXIT_OK


# -- constructions -----------------------------------------------------------------


def _report_rows(rep, convert=None) -> list[list]:
    rows = []
    for iv, m in zip(rep.roots.intervals, rep.roots.multiplicities):
        b = iv.ball(max(rep.precision_bits, 64)) if convert is None else convert(iv)
        rows.append([_fmt(b, 20), m])
    return rows


def _tighten(p: IntervalPolynomial, rep, bits: int = 64):
    """Shrink the root intervals for display, as far as the coefficients allow."""
    if rep.verdict is Verdict.UNDETERMINED or not rep.roots.intervals:
        return rep
    rel = Fraction(1, 2**bits)
    try:
        roots = refine_isolation(p, rep.roots, lambda iv: iv.width <= max(abs(iv.lo), abs(iv.hi), 1) * rel)
    except PrecisionExhausted:
        return rep
    return replace(rep, roots=roots)


def _certify_output(out: Output, rep, info: dict, convert=None, label: str = "root") -> int:
    info = {**info, "verdict": rep.verdict.value, "precision_bits": rep.precision_bits}
    if rep.reason:
        info["reason"] = rep.reason
    if rep.min_separation is not None:
        info["min_separation_lower_bound"] = _fmt(rep.min_separation)
    out.table([label, "multiplicity"], _report_rows(rep, convert), info)
    if rep.verdict is Verdict.UNDETERMINED:
        return EXIT_PRECISION
    return EXIT_FAIL if rep.verdict is Verdict.NOT_HYPERBOLIC else EXIT_OK


def _window_values(args, p: int) -> list:
    if args.source == "values":
        if not args.values:
            raise UsageError("--values is required with --source values")
        return [_at(v, p) for v in args.values]
    if args.source == "partition":
        table = specfun.partition_numbers(args.n + args.d)
        return [table[args.n + k] for k in range(args.d + 1)]
    if args.alpha is None:
        raise UsageError("--alpha is required with --source r-alpha")
    return [specfun.r_alpha(args.alpha, args.n + k, p) for k in range(args.d + 1)]


def cmd_jensen(args, out: Output) -> int:
    def build(p):
        return jensen_poly(SequenceWindow(args.n, tuple(_window_values(args, p))), p)

    rep = certify_adaptive(build, args.root_sign, start_prec=args.precision, max_prec=args.max_precision)
    J = build(rep.precision_bits)
    rep = _tighten(J, rep)
    info = {"source": args.source, "n": args.n, "d": J.degree,
            "coefficients": [_fmt(c, 20) for c in J.coeffs]}
    return _certify_output(out, rep, info)


def cmd_delta_appell(args, out: Output) -> int:
    p = args.precision
    while True:
        f, desc = harness.lp_function(args.f, p)
        window = SampleWindow.from_function(f, _at(args.t0, p), _at(args.delta, p), args.d)
        A = delta_appell_poly(window, p)
        rep = A.certify(min_sep=_at(args.min_sep, p) if args.min_sep is not None else None)
        if rep.verdict is not Verdict.UNDETERMINED or p >= args.max_precision:
            break
        p = min(2 * p, args.max_precision)
    info = {**desc, "t0": _fmt(args.t0, 20), "delta": _fmt(args.delta, 20), "d": args.d,
            "coefficients": [_fmt(Ball.from_value(c, p), 20) for c in A.coeffs]}
    return _certify_output(out, rep, info, convert=A.x_root, label="x")


def cmd_certify(args, out: Output) -> int:
    def build(p):
        return IntervalPolynomial([_at(c, p) for c in args.coeffs], p)

    rep = certify_adaptive(build, args.root_sign, args.min_sep, start_prec=args.precision,
                           max_prec=args.max_precision)
    P = build(rep.precision_bits)
    rep = _tighten(P, rep)
    return _certify_output(out, rep, {"degree": P.degree})


def cmd_trace(args, out: Output) -> int:
    p = args.precision
    delta = _at(args.delta, p)
    if args.roots:
        roots = [_at(r, p) for r in args.roots]
    else:
        if args.laguerre_d is None:
            raise UsageError("give --roots or --laguerre-d")
        scale = args.scale if args.scale is not None else args.laguerre_d
        roots = curves.laguerre_scaled_roots(args.laguerre_d, args.laguerre_nu, scale, p)
    grid = curves.default_grid(delta, points=args.points)
    fams = [curves.trace_root_curves(roots, delta, d, grid, prec=p, jobs=args.jobs)
            for d in range(1, args.appell_d + 1)]
    buf = io.StringIO()
    for i, fam in enumerate(fams):
        text = curves.csv_text(fam, args.digits)
        buf.write(text if i == 0 else text.split("\n", 1)[1])
    out.emit(buf.getvalue())
    code = EXIT_OK
    if args.check:
        x_far = max(grid)  # the outermost grid point, 10/delta rounded to a dyadic
        for lo, hi in zip(fams, fams[1:]):
            rep = curves.check_interlacing(hi, lo)
            print(f"interlacing d={hi.d} vs d={lo.d}: {rep.checked} checks, "
                  f"{len(rep.violations)} violations, {len(rep.undecided)} undecided", file=sys.stderr)
            if rep.violations:
                code = EXIT_FAIL
        for fam in fams:
            lim = curves.check_limits(fam, x_far, Fraction(1, 1000))
            esc = "escapes ok" if lim.escapes_ok else "escapes not yet visible on this grid"
            print(f"limits d={fam.d}: {'ok' if lim.ok else 'FAILED'} ({esc})", file=sys.stderr)
            if not lim.ok:
                code = EXIT_FAIL
    return code


# -- verify ----------------------------------------------------------------------


def cmd_verify(args, out: Output) -> int:
    p, mp = args.precision, args.max_precision
    s = args.suite
    if s == "delta-difference":
        report = harness.suite_delta_difference(args.trials, args.max_deg, args.delta, args.seed,
                                                prec=p, max_prec=mp, jobs=args.jobs)
    elif s == "ono":
        report = harness.suite_ono_grid(args.alpha, args.n_max, args.d_max, prec=p, max_prec=mp,
                                        direct=not args.no_direct, jobs=args.jobs)
    elif s == "lp-embed":
        report = harness.suite_lp_embedding(args.f, args.t0, args.delta, args.d_max, prec=p, max_prec=mp)
    elif s == "gaussian":
        report = harness.suite_gaussian(args.beta, args.d_max, seed=args.seed, prec=p, max_prec=mp)
    elif s == "laguerre":
        report = harness.suite_laguerre_delta(args.nu, args.deltas, args.d_max, prec=p, max_prec=mp)
    else:
        report = harness.suite_zeros(args.nu, args.k, prec=p)
    fmt = args.format or "json"
    if fmt == "json":
        out.emit(report.to_json())
    else:
        rows = [[c.key, c.verdict, c.detail] for c in report.sorted_cases()]
        extra = {"suite_id": report.suite_id, **report.summary} if fmt == "plain" else None
        out.table(["key", "verdict", "detail"], rows, extra)
    sm = report.summary
    print(f"{report.suite_id}: run {sm['run']}, passed {sm['passed']}, undetermined {sm['undetermined']}, "
          f"failed {sm['failed']}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


# -- parser ----------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear either before or after the subcommand
    c = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    c.add_argument("--precision", type=int, default=S, help="working precision in bits (default 128)")
    c.add_argument("--max-precision", type=int, default=S, help="precision cap for retries (default 1024)")
    c.add_argument("--seed", type=int, default=S)
    c.add_argument("--jobs", type=int, default=S, help="worker processes")
    c.add_argument("--format", choices=("json", "csv", "plain"), default=S)
    c.add_argument("--out", default=S, help="write output to this file")
    return c


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="deltalp", parents=[common],
                                     description="Certified hyperbolicity of Jensen and delta-Appell polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a special function")
    evs = ev.add_subparsers(dest="function", required=True)
    e = evs.add_parser("bessel-clifford", parents=[common])
    e.add_argument("--nu", type=_number, required=True)
    e.add_argument("--t", type=_number, required=True)
    e = evs.add_parser("gamma", parents=[common])
    e.add_argument("--z", type=_number, required=True)
    e = evs.add_parser("r-alpha", parents=[common])
    e.add_argument("--alpha", type=_rational, required=True)
    e.add_argument("--n", type=int, required=True)
    e = evs.add_parser("partition", parents=[common])
    e.add_argument("--n-max", type=int, required=True)
    e = evs.add_parser("frac-partition", parents=[common])
    e.add_argument("--alpha", type=_rational, required=True)
    e.add_argument("--n-max", type=int, required=True)

    j = sub.add_parser("jensen", parents=[common], help="Jensen polynomial of a window, certified")
    j.add_argument("--source", choices=("partition", "r-alpha", "values"), default="partition")
    j.add_argument("--alpha", type=_rational)
    j.add_argument("--values", type=_number_list, help="comma-separated a_n, ..., a_{n+d}")
    j.add_argument("--n", type=int, default=0)
    j.add_argument("--d", type=int, default=2)
    j.add_argument("--root-sign", choices=[s.value for s in RootSign], default="Any")

    da = sub.add_parser("delta-appell", parents=[common], help="delta-Appell polynomial of samples, certified")
    da.add_argument("--f", required=True, help="bessel-clifford:NU, gaussian:BETA or reciprocal-gamma")
    da.add_argument("--t0", type=_number, required=True)
    da.add_argument("--delta", type=_number, required=True)
    da.add_argument("--d", type=int, required=True)
    da.add_argument("--min-sep", type=_number)

    c = sub.add_parser("certify", parents=[common], help="certify a polynomial given by coefficients")
    c.add_argument("--coeffs", type=_number_list, required=True, help="c0,c1,...,cd (ascending)")
    c.add_argument("--root-sign", choices=[s.value for s in RootSign], default="Any")
    c.add_argument("--min-sep", type=_number)

    t = sub.add_parser("trace", parents=[common], help="trace root curves to CSV")
    t.add_argument("--roots", type=_number_list, help="roots of the generating polynomial")
    t.add_argument("--laguerre-d", type=int)
    t.add_argument("--laguerre-nu", type=_rational, default=Fraction(0))
    t.add_argument("--scale", type=_rational, help="use L(-t/scale); defaults to the Laguerre degree")
    t.add_argument("--delta", type=_number, required=True)
    t.add_argument("--appell-d", type=int, default=2, help="trace degrees 1..appell-d")
    t.add_argument("--points", type=int, default=40, help="grid points per side")
    t.add_argument("--digits", type=int, default=20)
    t.add_argument("--check", action="store_true", help="check interlacing and limits, report on stderr")

    v = sub.add_parser("verify", help="run a verification suite")
    vs = v.add_subparsers(dest="suite", required=True)
    s = vs.add_parser("delta-difference", parents=[common])
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--max-deg", type=int, default=10)
    s.add_argument("--delta", type=_rational, default=Fraction(1))
    s = vs.add_parser("ono", parents=[common])
    s.add_argument("--alpha", type=_rational_list, required=True, help="comma-separated list")
    s.add_argument("--n-max", type=int, default=50)
    s.add_argument("--d-max", type=int, default=12)
    s.add_argument("--no-direct", action="store_true", help="skip the direct delta-Appell route")
    s = vs.add_parser("lp-embed", parents=[common])
    s.add_argument("--f", required=True)
    s.add_argument("--t0", type=_number, required=True)
    s.add_argument("--delta", type=_number, default=Fraction(1))
    s.add_argument("--d-max", type=int, default=12)
    s = vs.add_parser("gaussian", parents=[common])
    s.add_argument("--beta", type=_rational, required=True)
    s.add_argument("--d-max", type=int, default=15)
    s = vs.add_parser("laguerre", parents=[common])
    s.add_argument("--nu", type=_rational, required=True)
    s.add_argument("--deltas", type=_rational_list, default=[Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)])
    s.add_argument("--d-max", type=int, default=10)
    s = vs.add_parser("zeros", parents=[common])
    s.add_argument("--nu", type=_rational_list, required=True)
    s.add_argument("--k", type=int, default=20)
    return parser


GLOBAL_DEFAULTS = {"precision": DEFAULT_PREC, "max_precision": MAX_PREC, "seed": 0, "jobs": 1,
                   "format": None, "out": None}

COMMANDS = {"eval": cmd_eval, "jensen": cmd_jensen, "delta-appell": cmd_delta_appell, "certify": cmd_certify,
            "trace": cmd_trace, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if not 64 <= args.precision <= args.max_precision:
        parser.print_usage(sys.stderr)
        print("deltalp: need 64 <= --precision <= --max-precision", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, Output(args))
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"deltalp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        print(f"deltalp: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (DomainError, ValueError) as exc:
        print(f"deltalp: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DeltaLPError as exc:
        print(f"deltalp: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
