"""Batch command-line front end.

Verbs: validate, arith, ghdiff, gdiv, cps, frac, fuzzyfrac, solve.
Fuzzy operands are JSON: {"trapezoid":[a,b,c,d]}, {"triangular":[a,b,c]},
{"grid":[...],"lower":[...],"upper":[...]}, or a bare number (crisp).
Results go to standard output as JSON; `solve` also writes a CSV band
file.  Exit codes: 0 success, 1 usage/parse errors, 2 when the requested
difference/division does not exist or the divisor contains 0.
"""

import argparse
import json
import sys

import numpy as np

from . import fuzzyfun, gh, hybrid
from .core import (AlphaGrid, FuzzyNumber, fn_alpha_cut, fn_arith, fn_crisp,
                   fn_from_trapezoid, fn_from_triangular, fn_validate)
from .errors import (DomainError, FuzzcalcError, ParseError, RangeError,
                     ValidationError)
from .fractional import (caputo_derivative, gl_derivative, hilfer_derivative,
                         rl_derivative, rl_integral)
from .sampling import SampledFunction

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_EXISTS = 2


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def parse_fuzzy(text, grid=None):
    """Parse one fuzzy-number operand from JSON text."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: "
                         f"{exc.msg}") from None
    if grid is None:
        grid = AlphaGrid.uniform(100)
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return fn_crisp(float(obj), grid)
    if not isinstance(obj, dict):
        raise ParseError("operand must be a number or an object")
    try:
        if "trapezoid" in obj:
            a, b, c, d = (float(x) for x in obj["trapezoid"])
            return fn_from_trapezoid(a, b, c, d, grid)
        if "triangular" in obj:
            a, b, c = (float(x) for x in obj["triangular"])
            return fn_from_triangular(a, b, c, grid)
        if {"grid", "lower", "upper"} <= obj.keys():
            levels = np.asarray(obj["grid"], dtype=float)
            lower = np.asarray(obj["lower"], dtype=float)
            upper = np.asarray(obj["upper"], dtype=float)
            try:
                g = AlphaGrid(levels)
            except ValueError as exc:
                raise ParseError(f"bad alpha grid: {exc}") from None
            if lower.shape != levels.shape or upper.shape != levels.shape:
                raise ParseError("grid/lower/upper lengths differ")
            report = fn_validate(lower, upper)
            if not report.is_valid:
                kinds = sorted({kind for _, kind, _ in report.violations})
                raise ValidationError(
                    f"not a fuzzy number: {', '.join(kinds)}", report=report)
            return FuzzyNumber(g, lower, upper)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed operand: {exc}") from None
    raise ParseError("unrecognized fuzzy-number encoding "
                     "(expect trapezoid, triangular, or grid/lower/upper)")


def emit_fuzzy(u):
    """JSON-ready dict for a fuzzy number; floats round-trip bitwise."""
    return {"grid": u.grid.levels.tolist(),
            "lower": u.lower.tolist(),
            "upper": u.upper.tolist()}


def _print(obj):
    json.dump(obj, sys.stdout, separators=(", ", ": "))
    sys.stdout.write("\n")


def _not_exists(reason):
    _print({"error": "not_exists", "reason": reason})
    return EXIT_NOT_EXISTS


# ---------------------------------------------------------------------------
# Function catalog for frac / solve

def make_function(spec):
    """Build a crisp (t, x) -> real function from 'name:p1,p2' syntax.

    const:c      -> c
    affine:a,b   -> a + b*t
    linear_in_x:k-> k*x
    power:b      -> t**b
    """
    name, _, rest = spec.partition(":")
    try:
        params = [float(p) for p in rest.split(",")] if rest else []
    except ValueError:
        raise ParseError(f"bad numeric parameter in function spec {spec!r}") from None

    def need(n):
        if len(params) != n:
            raise ParseError(f"function {name!r} takes {n} parameter(s), "
                             f"got {len(params)}")

    if name == "const":
        need(1)
        return lambda t, x=0.0: params[0]
    if name == "affine":
        need(2)
        return lambda t, x=0.0: params[0] + params[1] * t
    if name == "linear_in_x":
        need(1)
        return lambda t, x=0.0: params[0] * x
    if name == "power":
        need(1)
        return lambda t, x=0.0: float(t) ** params[0]
    raise ParseError(f"unknown function {name!r} "
                     "(catalog: const, affine, linear_in_x, power)")


# ---------------------------------------------------------------------------
# Verb handlers

def _cmd_validate(args, grid):
    try:
        u = parse_fuzzy(args.operand, grid)
    except ValidationError as exc:
        _print({"valid": False,
                "violations": [{"index": i, "kind": kind, "magnitude": mag}
                               for i, kind, mag in exc.report.violations]})
        return EXIT_OK
    out = {"valid": True, "levels": len(u.grid), "crisp": u.is_crisp}
    if args.alpha is not None:
        cut = fn_alpha_cut(u, args.alpha)
        out["cut"] = [cut.lo, cut.hi]
    _print(out)
    return EXIT_OK


def _cmd_arith(args, grid):
    u = parse_fuzzy(args.a, grid)
    if args.op == "scale":
        try:
            lam = float(args.b)
        except ValueError:
            raise ParseError("scale expects a bare number as second operand") from None
        _print(emit_fuzzy(fn_arith(u, None, "scale", scalar=lam)))
        return EXIT_OK
    v = parse_fuzzy(args.b, grid)
    op = {"add": "add", "sub": "sub_minkowski", "mul": "mul"}[args.op]
    _print(emit_fuzzy(fn_arith(u, v, op)))
    return EXIT_OK


def _cmd_ghdiff(args, grid):
    u = parse_fuzzy(args.a, grid)
    v = parse_fuzzy(args.b, grid)
    if args.method == "approx":
        _print({"method": "approx", "result": emit_fuzzy(gh.approx_gh_diff(u, v))})
        return EXIT_OK
    if args.method == "lsq":
        w = gh.lsq_gh_diff(u, v, lower_weights=args.weights, upper_weights=args.weights)
        _print({"method": "lsq", "result": emit_fuzzy(w)})
        return EXIT_OK
    res = gh.gh_diff_fuzzy(u, v)
    if isinstance(res, gh.NotExists):
        return _not_exists(res.reason)
    w, case = res
    _print({"method": "exact", "case": case.value, "result": emit_fuzzy(w)})
    return EXIT_OK


def _cmd_gdiv(args, grid):
    u = parse_fuzzy(args.a, grid)
    v = parse_fuzzy(args.b, grid)
    if args.method == "approx":
        _print({"method": "approx", "result": emit_fuzzy(gh.approx_g_div(u, v))})
        return EXIT_OK
    if args.method == "lsq":
        raise ParseError("gdiv has no lsq method")
    res = gh.g_div_fuzzy(u, v)
    if isinstance(res, gh.NotExists):
        return _not_exists(res.reason)
    w, case = res
    _print({"method": "exact", "case": case.value, "result": emit_fuzzy(w)})
    return EXIT_OK


def _cmd_cps(args, grid):
    u = parse_fuzzy(args.a, grid)
    if args.b is None:
        t = gh.cps_decompose(u)
        _print({"crisp": [t.crisp.lo, t.crisp.hi],
                "profile": t.profile.tolist(),
                "symmetric": t.symmetric.tolist()})
        return EXIT_OK
    v = parse_fuzzy(args.b, grid)
    res = gh.gh_diff_cps(u, v)
    if isinstance(res, gh.NotExists):
        return _not_exists(res.reason)
    w, case = res
    _print({"case": case.value, "result": emit_fuzzy(w)})
    return EXIT_OK


def _cmd_frac(args, grid):
    fn = make_function(args.fn)
    f = SampledFunction.from_callable(lambda t: fn(t), args.left, args.t, args.steps)
    n = len(f) - 1
    if args.op == "rl_integral":
        value = rl_integral(f, args.order, n)
    elif args.op == "caputo":
        value = caputo_derivative(f, args.order, n)
    elif args.op == "rl_derivative":
        value = rl_derivative(f, args.order, n)
    elif args.op == "gl":
        value = gl_derivative(f, args.order, n)
    else:  # hilfer
        gamma1 = args.gamma1 if args.gamma1 is not None else 0.0
        value = hilfer_derivative(f, args.order, gamma1, n)
    _print({"op": args.op, "order": args.order, "t": args.t, "value": value})
    return EXIT_OK


def _cmd_fuzzyfrac(args, grid):
    c = parse_fuzzy(args.coefficient, grid)
    phi = make_function(args.fn)
    F = fuzzyfun.FuzzyFunction.from_callable(
        lambda t: fn_arith(c, None, "scale", scalar=phi(t)),
        args.left, args.t, args.steps)
    n = len(F) - 1
    if args.op == "deriv":
        deriv, info = fuzzyfun.gh_derivative_series(F)
        _print({"op": "deriv", "form": info.forms[n],
                "switching_points": list(info.switching_points),
                "result": emit_fuzzy(deriv.value(n))})
        return EXIT_OK
    if args.op == "integral":
        _print({"op": "integral",
                "result": emit_fuzzy(fuzzyfun.fuzzy_riemann_integral(F, 0, n))})
        return EXIT_OK
    if args.op == "rl_integral":
        _print({"op": "rl_integral", "order": args.order,
                "result": emit_fuzzy(fuzzyfun.fuzzy_rl_integral(F, args.order, n))})
        return EXIT_OK
    value, form = fuzzyfun.fuzzy_frac_derivative(F, args.order, n)
    _print({"op": "frac_deriv", "order": args.order, "form": form,
            "result": emit_fuzzy(value)})
    return EXIT_OK


def _cmd_solve(args, grid):
    u0 = parse_fuzzy(args.u0, grid)
    problem = hybrid.HybridProblem(
        f=make_function(args.f), g=make_function(args.g), u0=u0,
        horizon=args.horizon, time_steps=args.steps,
        envelope_samples=args.envelope_samples)
    bundle = hybrid.solve(problem, grid)
    write_band_csv(bundle, args.output)
    if args.figures:
        render_band_figure(bundle, args.figures)
    _print({"stacking_valid": bundle.stacking_valid,
            "levels": len(bundle.levels),
            "max_residual": max(s.residual for s in bundle.levels),
            "output": args.output})
    return EXIT_OK


def write_band_csv(bundle, path):
    """CSV rows (t, alpha, lower, upper, residual), sorted by (t, alpha)."""
    lines = ["t,alpha,lower,upper,residual"]
    times = bundle.levels[0].times
    for k in range(times.size):
        for s in bundle.levels:
            lines.append(",".join("%.17g" % x for x in
                                  (times[k], s.alpha, s.u1[k], s.u2[k], s.residual)))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def render_band_figure(bundle, path):
    """Shaded uncertainty-band plot of the solution, saved to a file."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4))
    times = bundle.levels[0].times
    n = len(bundle.levels)
    for idx in sorted({0, n // 4, n // 2, (3 * n) // 4}):
        s = bundle.levels[idx]
        ax.fill_between(times, s.u1, s.u2, alpha=0.25,
                        label=f"alpha = {s.alpha:g}")
    core = bundle.levels[-1]
    ax.plot(times, core.u1, "k-", lw=1.2, label="alpha = 1")
    ax.plot(times, core.u2, "k-", lw=1.2)
    ax.set_xlabel("t")
    ax.set_ylabel("u(t)")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


# ---------------------------------------------------------------------------
# Argument wiring

def build_parser():
    parser = _Parser(prog="fuzzcalc",
                     description="Fuzzy arithmetic and fractional calculus toolkit")
    parser.add_argument("--grid-n", type=int, default=100,
                        help="alpha-grid subdivisions (default 100)")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", help="check a fuzzy-number operand")
    p.add_argument("operand")
    p.add_argument("--alpha", type=float, help="also report this alpha-cut")

    p = sub.add_parser("arith", help="levelwise interval arithmetic")
    p.add_argument("op", choices=["add", "sub", "mul", "scale"])
    p.add_argument("a")
    p.add_argument("b")

    for verb, helptext in (("ghdiff", "generalized Hukuhara difference"),
                           ("gdiv", "generalized division")):
        p = sub.add_parser(verb, help=helptext)
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--method", choices=["exact", "approx", "lsq"],
                       default="exact")
        p.add_argument("--weights", type=float, nargs="+",
                       help="per-level weights for the lsq method")

    p = sub.add_parser("cps", help="crisp/profile/symmetric decomposition")
    p.add_argument("a")
    p.add_argument("b", nargs="?", default=None,
                   help="if given, the gH-difference via CPS")

    p = sub.add_parser("frac", help="crisp fractional calculus")
    p.add_argument("op", choices=["rl_integral", "caputo", "rl_derivative",
                                  "gl", "hilfer"])
    p.add_argument("--fn", required=True, help="catalog spec, e.g. power:0.5")
    p.add_argument("--order", type=float, required=True)
    p.add_argument("--gamma1", type=float)
    p.add_argument("--left", type=float, default=0.0)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--steps", type=int, default=1000)

    p = sub.add_parser("fuzzyfrac", help="fuzzy-function calculus on c*phi(t)")
    p.add_argument("op", choices=["deriv", "integral", "rl_integral",
                                  "frac_deriv"])
    p.add_argument("coefficient", help="fuzzy coefficient c (JSON)")
    p.add_argument("--fn", required=True, help="time profile, e.g. power:1")
    p.add_argument("--order", type=float, default=0.5)
    p.add_argument("--left", type=float, default=0.0)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--steps", type=int, default=200)

    p = sub.add_parser("solve", help="hybrid fuzzy initial value problem")
    p.add_argument("--f", required=True, help="catalog spec for f(t,x)")
    p.add_argument("--g", required=True, help="catalog spec for g(t,x)")
    p.add_argument("--u0", required=True, help="fuzzy initial value (JSON)")
    p.add_argument("--horizon", type=float, required=True)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--envelope-samples", type=int, default=65)
    p.add_argument("--output", required=True, help="CSV band file path")
    p.add_argument("--figures", help="also render a band figure to this path")
    return parser


_HANDLERS = {
    "validate": _cmd_validate,
    "arith": _cmd_arith,
    "ghdiff": _cmd_ghdiff,
    "gdiv": _cmd_gdiv,
    "cps": _cmd_cps,
    "frac": _cmd_frac,
    "fuzzyfrac": _cmd_fuzzyfrac,
    "solve": _cmd_solve,
}


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        grid = AlphaGrid.uniform(args.grid_n)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    try:
        return _HANDLERS[args.verb](args, grid)
    except DomainError as exc:
        _print({"error": "domain", "reason": str(exc)})
        return EXIT_NOT_EXISTS
    except (ParseError, ValidationError, RangeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except FuzzcalcError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main():
    raise SystemExit(run())


if __name__ == "__main__":
    main()
