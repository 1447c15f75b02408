"""Command-line interface: evaluate densities, verify moments, run
uniqueness criteria, construct class members, convolve densities.

Exit codes: 0 success/decided, 1 usage or constraint violation, 2 criteria
undecided, 3 numeric convergence failure.  All JSON artifacts carry a
"schema_version" field; identical configs produce byte-identical output.
The environment variable GAMMOMENTS_THREADS controls the parallelism of
grid scans (results are reduced deterministically).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import __version__
from .errors import (ConstraintError, ConvergenceError, DomainError,
                     GammomentsError, InconclusiveError, RefusesError,
                     SearchError, TruncationError, UndecidedError)
from .mellin import ContourSpec, inverse_mellin, mellin_convolve_many
from .moments import mellin_symbol, parse_descriptor
from .weights import principal_solution

SCHEMA_VERSION = 1

_EXIT_OK = 0
_EXIT_USAGE = 1
_EXIT_UNDECIDED = 2
_EXIT_NUMERIC = 3


def _sanitize(obj):
    """Strict JSON has no Infinity/NaN; encode them as strings."""
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, float) and not np.isfinite(obj):
        return repr(obj)  # "inf" | "-inf" | "nan"
    return obj


def _emit_json(payload, path):
    payload = _sanitize({"schema_version": SCHEMA_VERSION, **payload})
    text = json.dumps(payload, sort_keys=True, indent=2,
                      allow_nan=False) + "\n"
    _write(text, path)


def _emit_csv(header, rows, path):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write(buf.getvalue(), path)


def _write(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_xs(text):
    return np.array([float(v) for v in text.split(",")], dtype=float)


def _parse_n_range(text):
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _default_grid(w, n_points=200):
    """Log-spaced grid from 1e-4 to where W falls ~300 decades below peak."""
    g, p = w.growth
    depth = 690.0 if w.tail_certified else 300.0
    x_hi = (depth / g) ** (1.0 / p)
    return np.logspace(-4.0, np.log10(x_hi), n_points)


# -- subcommands ------------------------------------------------------------

def _cmd_eval(args):
    seq = parse_descriptor(args.seq)
    w = principal_solution(seq)
    xs = _parse_xs(args.x) if args.x else _default_grid(w)
    if args.contour_c is not None or args.contour_tmax or args.contour_n:
        spec = ContourSpec(
            c=args.contour_c if args.contour_c is not None
            else seq.rightmost_pole + 1.0,
            t_max=args.contour_tmax or 48.0 / (1.5 * seq.sum_a),
            n_points=args.contour_n or 4096)
        vals = [inverse_mellin(lambda s: mellin_symbol(seq, s), float(x), spec)
                for x in xs]
    else:
        vals = [float(v) for v in np.atleast_1d(w.evaluate(xs))]
    if args.emit == "csv":
        _emit_csv(["x", "density"],
                  [[repr(float(x)), repr(float(v))] for x, v in zip(xs, vals)],
                  args.output)
    else:
        _emit_json({
            "command": "eval",
            "seq": seq.descriptor(),
            "alpha0": w.alpha0,
            "growth": {"coefficient": w.growth[0], "power": w.growth[1]},
            "tail_certified": w.tail_certified,
            "points": [{"x": float(x), "density": float(v)}
                       for x, v in zip(xs, vals)],
        }, args.output)
    return _EXIT_OK


def _cmd_moments(args):
    from .verify import check_moment
    seq = parse_descriptor(args.seq)
    w = principal_solution(seq)
    results = [check_moment(w, seq, n) for n in _parse_n_range(args.n)]
    if args.emit == "csv":
        _emit_csv(
            ["n", "log_integral", "log_target", "rel_error", "nodes_used"],
            [[r.n, repr(r.log_integral), repr(r.log_target),
              repr(r.rel_error), r.nodes_used] for r in results],
            args.output)
    else:
        _emit_json({
            "command": "moments",
            "seq": seq.descriptor(),
            "results": [{"n": r.n, "log_integral": r.log_integral,
                         "log_target": r.log_target,
                         "rel_error": r.rel_error,
                         "nodes_used": r.nodes_used} for r in results],
        }, args.output)
    return _EXIT_OK


def _cmd_criteria(args):
    from .criteria import full_report
    seq = parse_descriptor(args.seq)
    w = principal_solution(seq)
    report = full_report(seq, w)
    payload = {"command": "criteria", "seq": seq.descriptor(),
               **report.to_dict()}
    if not args.full_terms:
        payload["c1"] = dict(payload["c1"])
        payload["c1"]["terms"] = payload["c1"]["terms"][:10]
    _emit_json(payload, args.output)
    return _EXIT_OK if report.overall != "Undecided" else _EXIT_UNDECIDED


def _cmd_class(args):
    from . import classes as cls
    seq = parse_descriptor(args.seq)
    if seq.kind not in ("tm1", "tm2", "tm3"):
        raise ConstraintError(
            f"class construction supports tm1/tm2/tm3 sequences, got {seq.kind}")
    k = args.k
    if k is None:
        raise ConstraintError("class construction requires --k")

    if args.find_gamma_max:
        if seq.kind != "tm2":
            raise ConstraintError(
                "--find-gamma-max applies to tm2 sequences "
                "(amplitude bound of the K0-ratio family)")
        bound = cls.find_gamma_max(seq.r, k)
        payload = {"command": "class", "seq": seq.descriptor(), "k": k,
                   "gamma_max": bound, "safety_factor": 0.99}
        if args.mc_seed is not None:
            ok, min_val = cls.certify_nonnegative(
                lambda xs: cls.class_member_tm2(seq.r, k, bound, xs,
                                                gamma_bound=bound),
                1e-8, 1e6, 20000, args.mc_seed)
            payload["monte_carlo"] = {"seed": args.mc_seed,
                                      "nonnegative": bool(ok),
                                      "min_value": min_val}
        _emit_json(payload, args.output)
        return _EXIT_OK

    w = principal_solution(seq)
    xs = _parse_xs(args.x) if args.x else _default_grid(w)
    if seq.kind == "tm1":
        if args.eps is None:
            raise ConstraintError("tm1 class members require --eps")
        pert = cls.perturbation_tm1(seq.r, k)
        member = cls.class_member_tm1(seq.r, k, args.eps, xs)
        amplitude = args.eps
    elif seq.kind == "tm2":
        if args.gamma is None:
            raise ConstraintError("tm2 class members require --gamma")
        pert = cls.perturbation_tm2(seq.r, k)
        member = cls.class_member_tm2(seq.r, k, args.gamma, xs)
        amplitude = args.gamma
    else:
        if args.gamma is None:
            raise ConstraintError("tm3 class members require --gamma")
        pert = cls.perturbation_tm3(seq.r, k)
        member = cls.class_member_tm3(seq.r, k, args.gamma, xs)
        amplitude = args.gamma
    base = w.evaluate(xs)
    omega = pert.evaluate(xs)
    if args.emit == "json":
        _emit_json({
            "command": "class", "seq": seq.descriptor(), "k": k,
            "amplitude": amplitude,
            "points": [{"x": float(x), "base": float(b), "member": float(m),
                        "omega": float(o)}
                       for x, b, m, o in zip(xs, base, member, omega)],
        }, args.output)
    else:
        _emit_csv(["x", "base", "member", "omega"],
                  [[repr(float(x)), repr(float(b)), repr(float(m)),
                    repr(float(o))]
                   for x, b, m, o in zip(xs, base, member, omega)],
                  args.output)
    return _EXIT_OK


def _cmd_convolve(args):
    seq_a = parse_descriptor(args.seq_a)
    seq_b = parse_descriptor(args.seq_b)
    wa = principal_solution(seq_a)
    wb = principal_solution(seq_b)
    if args.x:
        xs = _parse_xs(args.x)
    else:
        # the convolution's tail power adds the two gamma weights
        xs = np.logspace(-4.0, np.log10(
            (300.0 / 1.0) ** (1.0 / (seq_a.tail_power * seq_b.tail_power
                                     / (seq_a.tail_power + seq_b.tail_power)))),
            200)
    vals = mellin_convolve_many(wa.evaluate, wb.evaluate, xs,
                                log_f=wa.log_evaluate, log_g=wb.log_evaluate)
    if args.emit == "csv":
        _emit_csv(["x", "convolution"],
                  [[repr(float(x)), repr(float(v))] for x, v in zip(xs, vals)],
                  args.output)
    else:
        _emit_json({
            "command": "convolve",
            "seq_a": seq_a.descriptor(), "seq_b": seq_b.descriptor(),
            "points": [{"x": float(x), "convolution": float(v)}
                       for x, v in zip(xs, vals)],
        }, args.output)
    return _EXIT_OK


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammamoments",
        description="Gamma-product Stieltjes moment problems: densities, "
                    "moment verification, uniqueness criteria, and "
                    "non-unique solution families.",
        epilog="Sequence descriptors: tm1:r=2, tm2:r=3, tm3:r=1, tm4:r=2, "
               "or gamma:2n+1,n+1,n+1.  Set GAMMOMENTS_THREADS to "
               "parallelize grid scans (output is unchanged).")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--emit", choices=("json", "csv"), default="json")
        p.add_argument("--output", help="write to file instead of stdout")

    p = sub.add_parser("eval", help="evaluate a principal density")
    p.add_argument("--seq", required=True)
    p.add_argument("--x", help="comma-separated evaluation points")
    p.add_argument("--solution", choices=("principal",), default="principal")
    p.add_argument("--contour-c", type=float,
                   help="override the contour abscissa (direct evaluation)")
    p.add_argument("--contour-tmax", type=float)
    p.add_argument("--contour-n", type=int)
    common(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("moments", help="verify moments against rho(n)")
    p.add_argument("--seq", required=True)
    p.add_argument("--n", default="0..8", help="single n or range like 0..8")
    p.add_argument("--solution", choices=("principal",), default="principal")
    p.add_argument("--table", action="store_const", dest="emit", const="csv",
                   help="shorthand for --emit csv")
    common(p)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("criteria", help="run the three uniqueness criteria")
    p.add_argument("--seq", required=True)
    p.add_argument("--solution", choices=("principal",), default="principal")
    p.add_argument("--json", action="store_true", help="JSON output (default)")
    p.add_argument("--full-terms", action="store_true",
                   help="include every Carleman term instead of the first 10")
    common(p)
    p.set_defaults(func=_cmd_criteria)

    p = sub.add_parser("class", help="construct non-unique solution members")
    p.add_argument("--seq", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--eps", type=float, help="tm1 amplitude, |eps| < 1")
    p.add_argument("--gamma", type=float, help="tm2/tm3 amplitude")
    p.add_argument("--x", help="comma-separated evaluation points")
    p.add_argument("--find-gamma-max", action="store_true",
                   help="print the certified tm2 amplitude bound")
    p.add_argument("--mc-seed", type=int,
                   help="Monte Carlo nonnegativity recheck seed")
    common(p)
    p.set_defaults(func=_cmd_class)

    p = sub.add_parser("convolve", help="Mellin-convolve two densities")
    p.add_argument("--seq-a", required=True)
    p.add_argument("--seq-b", required=True)
    p.add_argument("--x", help="comma-separated evaluation points")
    common(p)
    p.set_defaults(func=_cmd_convolve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConstraintError, DomainError, RefusesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except UndecidedError as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return _EXIT_UNDECIDED
    except (ConvergenceError, TruncationError, SearchError,
            InconclusiveError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return _EXIT_NUMERIC
    except GammomentsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
