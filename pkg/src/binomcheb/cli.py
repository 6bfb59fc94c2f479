"""Command-line front end.

Exit codes: 0 ok, 2 bad configuration, 3 numeric failure, 4 I/O failure.
Failures also print a one-line JSON error record on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .integral_rep import pm_via_representation
from .lemma import NoWitnessError, scan_lemma
from .output import dumps, rows_csv, write_atomic, zeros_csv
from .plotting import outside_count_svg, scaled_ratio_svg, zero_scatter_svg
from .polycore import (
    MAX_MONOMIAL_DEGREE,
    Params,
    binomial_weights,
    cheb_series,
    monomial_coefficients,
    pm_and_derivative,
    pm_by_cheb_combination,
    pm_by_recurrence,
    pm_by_series_expansion,
)
from .quadrature import QuadratureError
from .verify import SUITES, default_m_values
from .zeros import ZeroAnalysisError, all_zeros, outside_count_sweep

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

COMMAND_FORMATS = {
    "gen": ("json", "csv"),
    "eval": ("json",),
    "roots": ("json", "csv"),
    "verify": ("json",),
    "lemma-scan": ("json", "csv"),
    "zero-count": ("json", "csv"),
    "figure": ("svg",),
}


class ConfigError(Exception):
    pass


@dataclass
class Outcome:
    text: str | None
    files: dict = field(default_factory=dict)
    passed: bool = True
    summary: str | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def _complex(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def build_parser():
    parser = _Parser(
        prog="binomcheb",
        description="Polynomials generated by 1/((1-t)^alpha (1-2zt+t^2)): "
                    "evaluation, zeros and inequality checks.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="key = value file; command-line flags take precedence")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help_text, formats):
        p = sub.add_parser(name, help=help_text, description=help_text,
                           formatter_class=argparse.ArgumentDefaultsHelpFormatter)
        p.add_argument("--alpha", type=float, help="exponent alpha > 0 (required)")
        p.add_argument("--rel-tol", type=float, default=1e-10, help="quadrature relative tolerance")
        p.add_argument("--format", choices=("json", "csv", "svg"), default=formats[0],
                       help=f"output format; allowed here: {', '.join(formats)}")
        p.add_argument("-o", "--output", default="-", help="output path, '-' for stdout")
        return p

    p = command("gen", "binomial weights and U-basis coefficients of P_m", COMMAND_FORMATS["gen"])
    p.add_argument("--m", type=int, help="degree index m >= 0 (required)")

    p = command("eval", "evaluate P_m at one point", COMMAND_FORMATS["eval"])
    p.add_argument("--m", type=int, help="degree index m >= 0 (required)")
    p.add_argument("--z", type=_complex, help="evaluation point, e.g. 0.3 or 0.3+0.1j")
    p.add_argument("--theta", type=float, help="angle in (0, pi); z = cos(theta)")
    p.add_argument("--method", choices=("recurrence", "cheb", "series", "representation"),
                   default="recurrence", help="evaluation route")
    p.add_argument("--derivative", action="store_true", help="also report P_m'(z)")

    p = command("roots", "all zeros of P_m, classified against (-1, 1)", COMMAND_FORMATS["roots"])
    p.add_argument("--m", type=int, help="degree index m >= 1 (required)")
    p.add_argument("--tol", type=float, default=1e-13, help="theta bisection width")
    p.add_argument("--plot", help="also write a zero scatter SVG to this path")

    p = command("verify", "run a numerical check suite", COMMAND_FORMATS["verify"])
    p.add_argument("--suite", choices=sorted(SUITES), default="identity", help="suite to run")
    p.add_argument("--m-max", type=int, default=50, help="largest m used by the suite")

    p = command("lemma-scan", "scan lhs/rhs of the key inequality; extract K and M",
                COMMAND_FORMATS["lemma-scan"])
    p.add_argument("--m-min", type=int, default=1, help="smallest m scanned")
    p.add_argument("--m-max", type=int, default=100, help="largest m scanned")
    p.add_argument("--m-step", type=int, help="uniform step; default is a geometric m set")
    p.add_argument("--theta-points", type=int, default=40, help="angles per m")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--plot", help="also write a scaled-ratio SVG to this path")

    p = command("zero-count", "outside-zero counts over a range of m", COMMAND_FORMATS["zero-count"])
    p.add_argument("--m-min", type=int, default=10, help="smallest m swept")
    p.add_argument("--m-max", type=int, default=200, help="largest m swept")
    p.add_argument("--m-step", type=int, default=10, help="step between m values")
    p.add_argument("--tol", type=float, default=1e-13, help="theta bisection width")
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--plot", help="also write a count-vs-m SVG to this path")

    p = command("figure", "zero scatter of P_m as SVG", COMMAND_FORMATS["figure"])
    p.add_argument("--m", type=int, help="degree index m >= 1 (required)")
    p.add_argument("--tol", type=float, default=1e-13, help="theta bisection width")
    p.add_argument("--csv", help="also write the zeros as CSV to this path")
    return parser


def load_config(path):
    """Parse ``key = value`` lines; blank lines and '#' comments are skipped."""
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}")
    cfg = {}
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        cfg[key.replace("-", "_")] = value
    return cfg


def _apply_config(parser, argv, cfg):
    # find the subcommand to route config keys to its parser
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    command = next((a for a in argv if a in sub_action.choices), None)
    if command is None:
        return
    sp = sub_action.choices[command]
    dests = {a.dest for a in sp._actions}
    unknown = sorted(set(cfg) - dests)
    if unknown:
        raise ConfigError(f"unknown config key(s) for {command}: {', '.join(unknown)}")
    sp.set_defaults(**cfg)


def _validate(args):
    if args.alpha is None:
        raise ConfigError("--alpha is required")
    if not math.isfinite(args.alpha) or args.alpha <= 0:
        raise ConfigError("--alpha must be a positive number")
    if args.format not in COMMAND_FORMATS[args.command]:
        raise ConfigError(f"format {args.format!r} is not available for {args.command}")
    if not args.rel_tol > 0:
        raise ConfigError("--rel-tol must be positive")
    if getattr(args, "tol", 1.0) <= 0:
        raise ConfigError("--tol must be positive")
    if hasattr(args, "m"):
        if args.m is None:
            raise ConfigError("--m is required")
        lowest = 1 if args.command in ("roots", "figure") else 0
        if args.m < lowest:
            raise ConfigError(f"--m must be >= {lowest}")
    if args.command == "eval" and (args.z is None) == (args.theta is None):
        raise ConfigError("give exactly one of --z or --theta")
    if args.command == "eval" and args.theta is not None and not 0 < args.theta < math.pi:
        raise ConfigError("--theta must lie in (0, pi)")
    if hasattr(args, "m_min"):
        if args.m_min < 1 or args.m_max < args.m_min:
            raise ConfigError("need 1 <= --m-min <= --m-max")
        if args.m_step is not None and args.m_step < 1:
            raise ConfigError("--m-step must be >= 1")
    if getattr(args, "theta_points", 2) < 2:
        raise ConfigError("--theta-points must be >= 2")
    needs_unit = args.command in ("lemma-scan",) or (
        args.command == "verify" and args.suite in ("identity", "split", "signs")) or (
        args.command == "eval" and args.method == "representation")
    if needs_unit and not args.alpha < 1:
        raise ConfigError(f"{args.command} needs 0 < alpha < 1")


def _number(v):
    v = complex(v)
    if v.imag == 0:
        return v.real
    return {"re": v.real, "im": v.imag}


def _m_values(args):
    if args.m_step is None:
        return [m for m in default_m_values(args.m_max) if m >= args.m_min]
    return list(range(args.m_min, args.m_max + 1, args.m_step))


def _cmd_gen(args):
    params = Params(args.alpha, args.m)
    b = binomial_weights(params.alpha, params.m).values
    c = cheb_series(params).weights
    if args.format == "csv":
        rows = [(k, float(b[k]), float(c[k])) for k in range(len(b))]
        return Outcome(rows_csv(["k", "binomial_weight", "cheb_weight"], rows))
    payload = {
        "alpha": params.alpha,
        "m": params.m,
        "binomial_weights": b.tolist(),
        "cheb_weights": c.tolist(),
    }
    if params.m <= MAX_MONOMIAL_DEGREE:
        payload["monomial_coefficients"] = monomial_coefficients(params).tolist()
    return Outcome(dumps(payload))


def _cmd_eval(args):
    params = Params(args.alpha, args.m)
    z = args.z if args.theta is None else math.cos(args.theta)
    payload = {}
    if args.method == "representation":
        if args.theta is None:
            if abs(z.imag) > 0 or not -1 < z.real < 1:
                raise ConfigError("the representation route needs a real z in (-1, 1)")
            theta = math.acos(z.real)
        else:
            theta = args.theta
        rep = pm_via_representation(params, theta, args.rel_tol)
        value = rep.integral_term + rep.trig_term
        payload["representation"] = rep.to_dict()
    elif args.method == "cheb":
        value = pm_by_cheb_combination(cheb_series(params), z)
    elif args.method == "series":
        value = pm_by_series_expansion(params, z)
    else:
        value = pm_by_recurrence(params, z)
    out = {"value": _number(value)}
    if args.derivative:
        out["derivative"] = _number(pm_and_derivative(params, z)[1])
    out.update(payload)
    return Outcome(dumps(out))


def _cmd_roots(args):
    report = all_zeros(Params(args.alpha, args.m), tol=args.tol)
    extra = {}
    if args.plot:
        extra[args.plot] = zero_scatter_svg(report)
    if args.format == "csv":
        return Outcome(zeros_csv(report), extra)
    return Outcome(dumps(report.to_dict()), extra)


def _cmd_verify(args):
    suite = SUITES[args.suite]
    if args.suite == "identity":
        result = suite(args.alpha, m_max=args.m_max, rel_tol=args.rel_tol)
    elif args.suite == "oracle":
        result = suite(args.alpha, m_max=args.m_max)
    elif args.suite == "signs":
        result = suite(args.alpha, m_values=(args.m_max,), rel_tol=args.rel_tol)
    elif args.suite == "split":
        result = suite(args.alpha, rel_tol=args.rel_tol)
    else:
        result = suite(args.alpha)
    return Outcome(dumps(result), passed=result["passed"])


def _cmd_lemma_scan(args):
    report = scan_lemma(args.alpha, _m_values(args), args.theta_points, args.rel_tol,
                        workers=args.workers)
    extra = {}
    if args.plot:
        extra[args.plot] = scaled_ratio_svg(report)
    if args.format == "csv":
        rows = [(m, th, l, r, q, s) for (m, th), l, r, q, s in
                zip(report.grid, report.lhs, report.rhs, report.ratio, report.scaled_ratio)]
        return Outcome(rows_csv(["m", "theta", "lhs", "rhs", "ratio", "scaled_ratio"], rows),
                       extra)
    return Outcome(dumps(report.to_dict()), extra)


def _cmd_zero_count(args):
    counts, errors = outside_count_sweep(args.alpha, _m_values(args), args.tol,
                                         workers=args.workers)
    extra = {}
    if args.plot:
        extra[args.plot] = outside_count_svg({args.alpha: counts})
    if args.format == "csv":
        rows = [(m, "" if c is None else c) for m, c in counts]
        return Outcome(rows_csv(["m", "outside_count"], rows), extra)
    payload = {
        "alpha": args.alpha,
        "counts": [{"m": m, "outside_count": c} for m, c in counts],
        "errors": {str(m): e for m, e in errors.items()},
    }
    return Outcome(dumps(payload), extra)


def _cmd_figure(args):
    report = all_zeros(Params(args.alpha, args.m), tol=args.tol)
    svg_path = args.output if args.output != "-" else f"zeros_m{args.m}_alpha{args.alpha:g}.svg"
    extra = {svg_path: zero_scatter_svg(report)}
    if args.csv:
        extra[args.csv] = zeros_csv(report)
    summary = {
        "alpha": args.alpha,
        "m": args.m,
        "svg": svg_path,
        "csv": args.csv,
        "inside_count": report.inside_count,
        "outside_count": report.outside_count,
    }
    # the figure is the artifact; the summary goes to stdout
    return Outcome(None, extra, summary=dumps(summary))


HANDLERS = {
    "gen": _cmd_gen,
    "eval": _cmd_eval,
    "roots": _cmd_roots,
    "verify": _cmd_verify,
    "lemma-scan": _cmd_lemma_scan,
    "zero-count": _cmd_zero_count,
    "figure": _cmd_figure,
}


def _error(kind, code, message):
    record = {"error": kind, "message": str(message), "exit_code": code}
    sys.stderr.write(json.dumps(record) + "\n")
    return code


def run(argv=None):
    """Parse ``argv``, dispatch, write outputs; returns the exit status."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser = build_parser()
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config")
        known, _ = pre.parse_known_args(argv)
        if known.config:
            _apply_config(parser, argv, load_config(known.config))
        args = parser.parse_args(argv)
        _validate(args)

        outcome = HANDLERS[args.command](args)
        for path, data in outcome.files.items():
            write_atomic(path, data)
        if outcome.text is not None:
            if args.output == "-":
                sys.stdout.write(outcome.text)
            else:
                write_atomic(args.output, outcome.text)
        if outcome.summary is not None:
            sys.stdout.write(outcome.summary)
        if not outcome.passed:
            return _error("numeric_failure", EXIT_NUMERIC, f"suite {args.suite} failed")
        return EXIT_OK
    except ConfigError as exc:
        return _error("bad_config", EXIT_CONFIG, exc)
    except ValueError as exc:
        # a module rejected its inputs after flag validation passed
        return _error("precondition_failed", EXIT_NUMERIC, exc)
    except (QuadratureError, ZeroAnalysisError, NoWitnessError, ArithmeticError,
            np.linalg.LinAlgError) as exc:
        return _error("numeric_failure", EXIT_NUMERIC, exc)
    except OSError as exc:
        return _error("io_failure", EXIT_IO, exc)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
