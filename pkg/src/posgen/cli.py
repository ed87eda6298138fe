"""``posgen`` command line: every operation on JSON/CSV files.

Exit codes: 0 success, 1 domain error, 2 malformed input or usage error.
Errors are reported on stderr as ``{"error": code, "detail": text}``.
"""

import argparse
import json
import sys

from . import levy, liegroup, measures, moments
from .algebra import (
    MalformedInputError,
    MomentSequence,
    Polynomial,
    PosgenError,
    TruncatedSeries,
    dumps,
    format_scalar,
    from_json_obj,
    to_json_obj,
    to_scalar,
)
from .evolve import evolve, nonneg_grid, nonneg_univariate, trajectory, trajectory_csv


class UsageError(Exception):
    pass


def _rational(text):
    try:
        return to_scalar(text)
    except (MalformedInputError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _side(text):
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"box side must look like LO:HI, got {text!r}")
    return _rational(lo), _rational(hi)


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise MalformedInputError(f"{path}: {exc.strerror}") from exc


def _load(path, kind, n=None):
    value = from_json_obj(_read_json(path), expect=kind)
    if n is not None and value.n != n:
        raise MalformedInputError(f"{path}: has n={value.n}, --n requires {n}")
    return value


def _load_measure(path, n=None):
    m = measures.AtomicMeasure.from_json_obj(_read_json(path))
    if n is not None and m.n != n:
        raise MalformedInputError(f"{path}: has n={m.n}, --n requires {n}")
    return m


def _inputs(args, count):
    paths = args.inputs or []
    if len(paths) != count:
        raise UsageError(f"{args.command} needs exactly {count} --in file(s), got {len(paths)}")
    return paths


def _need(value, flag, command):
    if value is None or value == []:
        raise UsageError(f"{command} requires {flag}")
    return value


def _series_out(value):
    return dumps(to_json_obj(value))


def _verdict_obj(v):
    return v.to_json_obj()


# ----------------------------------------------------------- subcommands

def cmd_mul(args):
    a, b = (_load(p, TruncatedSeries, args.n) for p in _inputs(args, 2))
    return _series_out(liegroup.mul(a, b))


def cmd_inv(args):
    (p,) = _inputs(args, 1)
    return _series_out(liegroup.inverse(_load(p, TruncatedSeries, args.n)))


def cmd_exp(args):
    (p,) = _inputs(args, 1)
    a = _load(p, TruncatedSeries, args.n)
    if args.t:
        if len(args.t) != 1:
            raise UsageError("exp takes at most one --t")
        a = a.scale(args.t[0])
    return _series_out(liegroup.exp(a))


def cmd_log(args):
    (p,) = _inputs(args, 1)
    return _series_out(liegroup.log(_load(p, TruncatedSeries, args.n)))


def cmd_dmap(args):
    (p,) = _inputs(args, 1)
    return _series_out(moments.d_map(_load(p, MomentSequence, args.n)))


def cmd_dinv(args):
    (p,) = _inputs(args, 1)
    return _series_out(moments.d_inv(_load(p, TruncatedSeries, args.n)))


def cmd_convolve_seq(args):
    s, t = (_load(p, MomentSequence, args.n) for p in _inputs(args, 2))
    return _series_out(moments.seq_convolve(s, t))


def cmd_moments(args):
    (p,) = _inputs(args, 1)
    d = _need(args.degree, "--degree", args.command)
    return _series_out(measures.measure_moments(_load_measure(p, args.n), d))


def cmd_convolve_measure(args):
    a, b = (_load_measure(p, args.n) for p in _inputs(args, 2))
    return dumps(measures.convolve(a, b).to_json_obj())


def cmd_apply(args):
    (src,) = _inputs(args, 1)
    poly = _load(_need(args.poly, "--poly", args.command), Polynomial, args.n)
    obj = _read_json(src)
    if isinstance(obj, dict) and "atoms" in obj:
        m = measures.AtomicMeasure.from_json_obj(obj)
        return _series_out(measures.apply_measure(m, poly))
    return _series_out(liegroup.apply(from_json_obj(obj, expect=TruncatedSeries), poly))


def cmd_check_preserver(args):
    (p,) = _inputs(args, 1)
    k = _need(args.level, "--level", args.command)
    return dumps(_verdict_obj(moments.check_preserver(_load(p, TruncatedSeries, args.n), k)))


def cmd_levy_build(args):
    path = _need(args.triplet, "--triplet", args.command)
    d = _need(args.degree, "--degree", args.command)
    t = levy.LevyTriplet.from_json_obj(_read_json(path))
    if args.n is not None and t.n != args.n:
        raise MalformedInputError(f"{path}: has n={t.n}, --n requires {args.n}")
    return _series_out(levy.generator_from_triplet(t, d))


def cmd_check_generator(args):
    (p,) = _inputs(args, 1)
    a = _load(p, TruncatedSeries, args.n)
    level = _need(args.level, "--level", args.command)
    if args.lam:
        if args.t:
            raise UsageError("use either --t or --lambda, not both")
        k = _need(args.k, "--k", args.command)
        verdicts = levy.scaled_family_probe(a, k, args.lam, level)
        key, points = "lambda", args.lam
    else:
        points = _need(args.t, "--t", args.command)
        verdicts = levy.check_generator_grid(a, points, level)
        key = "t"
    results = []
    for x, v in zip(points, verdicts):
        obj = _verdict_obj(v)
        obj[key] = format_scalar(x)
        results.append(obj)
    return dumps({"refuted": levy.refuted(verdicts), "results": results})


def cmd_evolve(args):
    (p,) = _inputs(args, 1)
    a = _load(p, TruncatedSeries, args.n)
    poly = _load(_need(args.poly, "--poly", args.command), Polynomial, args.n)
    ts = _need(args.t, "--t", args.command)
    if len(ts) != 1:
        raise UsageError("evolve takes exactly one --t; use trajectory for several")
    return _series_out(evolve(a, poly, ts[0]))


def cmd_trajectory(args):
    (p,) = _inputs(args, 1)
    a = _load(p, TruncatedSeries, args.n)
    poly = _load(_need(args.poly, "--poly", args.command), Polynomial, args.n)
    ts = _need(args.t, "--t", args.command)
    return trajectory_csv(ts, trajectory(a, poly, ts))


def cmd_nonneg(args):
    paths = args.inputs or []
    if args.poly and paths:
        raise UsageError("give the polynomial with --poly or --in, not both")
    path = args.poly or (paths[0] if len(paths) == 1 else None)
    poly = _load(_need(path, "--poly", args.command), Polynomial, args.n)
    if poly.n == 1 and not args.box:
        r = nonneg_univariate(poly)
        obj = {"exact": True, "nonneg": r.nonneg, "reason": r.reason}
        if r.interval is not None:
            obj["interval"] = [format_scalar(x) for x in r.interval]
        if r.witness is not None:
            obj["witness"] = [format_scalar(r.witness)]
        return dumps(obj)
    box = _need(args.box, "--box", args.command)
    r = nonneg_grid(poly, box, args.grid or 5)
    obj = {"exact": False, "nonneg": r.ok}
    if r.witness is not None:
        obj["witness"] = [format_scalar(x) for x in r.witness]
        obj["value"] = format_scalar(r.value)
    return dumps(obj)


COMMANDS = {
    "mul": (cmd_mul, "product of two operators"),
    "inv": (cmd_inv, "group inverse"),
    "exp": (cmd_exp, "exponential of an operator with zero constant term"),
    "log": (cmd_log, "logarithm of an operator with constant term 1"),
    "dmap": (cmd_dmap, "moment sequence -> operator"),
    "dinv": (cmd_dinv, "operator -> moment sequence"),
    "convolve-seq": (cmd_convolve_seq, "convolution of two moment sequences"),
    "moments": (cmd_moments, "truncated moments of an atomic measure"),
    "convolve-measure": (cmd_convolve_measure, "convolution of two atomic measures"),
    "apply": (cmd_apply, "apply an operator (or atomic measure) to a polynomial"),
    "check-preserver": (cmd_check_preserver, "exact moment-matrix PSD test"),
    "levy-build": (cmd_levy_build, "generator from a Levy triplet"),
    "check-generator": (cmd_check_generator, "semigroup or dilation-family refutation probe"),
    "evolve": (cmd_evolve, "exp(tA) p0"),
    "trajectory": (cmd_trajectory, "exp(tA) p0 for several t, as CSV"),
    "nonneg": (cmd_nonneg, "nonnegativity (exact for one variable, grid otherwise)"),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="posgen",
        description="Exact constant-coefficient operators, moments and positivity-preserving semigroups.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("--in", dest="inputs", action="append", metavar="FILE",
                       help="operand JSON file ('-' for stdin); repeat for binary operations")
        p.add_argument("--out", metavar="FILE", help="write the result here instead of stdout")
        p.add_argument("--n", type=int, help="require operands to have this many variables")
        p.add_argument("--degree", type=int, help="truncation degree")
        p.add_argument("--level", type=int, help="moment-matrix level")
        p.add_argument("--t", type=_rational, action="append", help="time (rational, repeatable)")
        p.add_argument("--lambda", dest="lam", type=_rational, action="append",
                       help="dilation factor (rational, repeatable)")
        p.add_argument("--k", type=int, help="dilation normalization degree")
        p.add_argument("--grid", type=int, help="grid points per axis")
        p.add_argument("--box", type=_side, action="append", metavar="LO:HI",
                       help="box side, one per variable")
        p.add_argument("--poly", metavar="FILE", help="polynomial JSON file")
        p.add_argument("--triplet", metavar="FILE", help="Levy triplet JSON file")
    return parser


def _report(code, detail):
    sys.stderr.write(json.dumps({"error": code, "detail": detail}, sort_keys=True) + "\n")


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handler = COMMANDS[args.command][0]
    try:
        text = handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        _report("usage", str(exc))
        return 2
    except MalformedInputError as exc:
        _report(exc.code, str(exc))
        return 2
    except (PosgenError, ValueError, ArithmeticError) as exc:
        _report(getattr(exc, "code", "domain-error"), str(exc))
        return 1
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
