"""``hv``: command-line front end printing versioned JSON reports.

Exit status: 0 when every check passes, 1 when a check fails (or a dimension
is unstable), 2 on usage, parse or gating errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import automorphisms as A
from . import cocycles as C
from . import derivations as D
from .algebra import bracket, jacobi_check
from .errors import HVError
from .grading import AlgebraContext, Variant
from .grammar import parse_cocycle, parse_derivation, parse_element, parse_group, parse_params
from .oracle import DEFAULT_SEEDS, der_dimension, h2_dimension
from .scalars import format_scalar

SCHEMA = "hv-report/1"


class UsageError(Exception):
    pass


def _lambda(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"lambda must be an integer or p/q, got {text!r}")


def _stringify(obj):
    """Every number becomes an exact string; containers are walked."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return str(obj)


def _check_result(report):
    return {"passed": report.passed, "checked": report.checked, "n_failures": report.n_failures}, \
        list(report.failures), report.passed


# -- commands -----------------------------------------------------------------

def cmd_bracket(ctx, args):
    x, y = parse_element(args.x, ctx), parse_element(args.y, ctx)
    return {"x": args.x, "y": args.y}, str(bracket(ctx, x, y)), [], True


def cmd_jacobi(ctx, args):
    return ({"radius": args.radius},) + _check_result(jacobi_check(ctx, args.radius))


def cmd_cocycle_check(ctx, args):
    c = parse_cocycle(args.cocycle, ctx)
    return ({"cocycle": args.cocycle, "radius": args.radius},) + _check_result(
        C.is_cocycle(ctx, c, args.radius))


def cmd_cocycle_normalize(ctx, args):
    c = parse_cocycle(args.cocycle, ctx)
    normalized, f = C.normalize_cocycle(ctx, c, args.radius)
    gauge = C.gauge_check(ctx, normalized, args.radius)
    table = C.window_values(ctx, normalized, args.radius)
    result = {
        "functional": {str(k): format_scalar(v) for k, v in
                       sorted(f.values.items(), key=lambda kv: kv[0].sort_key())},
        "normalized": [[str(x), str(y), format_scalar(v)] for (x, y), v in table.items()],
        "gauge": gauge.passed,
    }
    return {"cocycle": args.cocycle, "radius": args.radius}, result, list(gauge.failures), gauge.passed


def cmd_der_apply(ctx, args):
    d = parse_derivation(args.derivation, ctx.rank)
    x = parse_element(args.x, ctx)
    return {"derivation": str(d), "x": args.x}, str(D.der_apply(ctx, d, x)), [], True


def cmd_leibniz(ctx, args):
    d = parse_derivation(args.derivation, ctx.rank)
    return ({"derivation": str(d), "radius": args.radius},) + _check_result(
        D.leibniz_check(ctx, d, args.radius))


def cmd_aut_apply(ctx, args):
    theta = parse_params(args.params, ctx)
    x = parse_element(args.x, ctx)
    return {"params": theta.to_dict(), "x": args.x}, str(A.aut_apply(ctx, theta, x)), [], True


def cmd_aut_compose(ctx, args):
    outer, inner = parse_params(args.outer, ctx), parse_params(args.inner, ctx)
    out = A.aut_compose(outer, inner)
    return {"outer": outer.to_dict(), "inner": inner.to_dict()}, out.to_dict(), [], True


def cmd_aut_inverse(ctx, args):
    theta = parse_params(args.params, ctx)
    inv = A.aut_inverse(theta)
    ok = A.aut_compose(theta, inv) == A.AutParams.identity(ctx.rank)
    failures = [] if ok else ["theta . theta^-1 is not the identity"]
    return {"params": theta.to_dict()}, inv.to_dict(), failures, ok


def cmd_aut_factor(ctx, args):
    theta = parse_params(args.params, ctx)
    fac = A.aut_factor(theta)
    f, l0, l1, l2, l3 = fac.k
    result = {
        "t": str(fac.t), "n": str(fac.n), "s": format_scalar(fac.s),
        "k": {"f": str(f), "l0": format_scalar(l0), "l1": format_scalar(l1),
              "l2": format_scalar(l2), "l3": format_scalar(l3)},
    }
    ok = fac.recompose() == theta
    failures = [] if ok else ["T.N.S.K does not recompose to theta"]
    return {"params": theta.to_dict()}, result, failures, ok


def cmd_hom_check(ctx, args):
    if (args.aut is None) == (args.inner is None):
        raise UsageError("hom-check needs exactly one of --aut or --inner")
    if args.aut is not None:
        m = parse_params(args.aut, ctx)
        params = {"aut": m.to_dict()}
    else:
        m = A.InnerAut(parse_element(args.inner, ctx))
        params = {"inner": args.inner}
    params["radius"] = args.radius
    return (params,) + _check_result(A.hom_check(ctx, m, args.radius))


def cmd_lift_apply(ctx, args):
    theta = parse_params(args.params, ctx)
    x = parse_element(args.x, ctx)
    return {"params": theta.to_dict(), "x": args.x}, str(A.aut_lift_apply(ctx, theta, x)), [], True


def _dim_result(report):
    return {
        "dim": report.quotient_dim,
        "cocycle_dim": report.cocycle_dim,
        "coboundary_dim": report.coboundary_dim,
        "stable": report.stable,
        "runs": report.runs,
    }


def _seeds(args):
    return list(args.seed) if args.seed else list(DEFAULT_SEEDS)


def cmd_h2_dim(ctx, args):
    seeds = _seeds(args)
    rep = h2_dimension(ctx, args.radius, seeds=seeds, strict=False)
    failures = [] if rep.stable else ["dimension differs across seeds or radii"]
    params = {"radius": args.radius, "seeds": seeds if ctx.rank > 1 else []}
    return params, _dim_result(rep), failures, rep.stable


def cmd_der_dim(ctx, args):
    seeds = _seeds(args)
    degree = parse_group(args.degree, ctx.rank) if args.degree else ctx.zero()
    rep = der_dimension(ctx, degree, args.radius, seeds=seeds, strict=False)
    failures = [] if rep.stable else ["dimension differs across seeds or radii"]
    params = {"degree": list(degree), "radius": args.radius, "seeds": seeds if ctx.rank > 1 else []}
    result = _dim_result(rep)
    del result["cocycle_dim"], result["coboundary_dim"]
    return params, result, failures, rep.stable


# -- argument parsing ---------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=int, default=1, help="rank n of G (default 1)")
    common.add_argument("--lambda", dest="lam", type=_lambda, default=Fraction(0),
                        help="lambda as an integer or p/q (default 0)")
    common.add_argument("--variant", choices=[v.value for v in Variant], default="plain")
    common.add_argument("--timing", action="store_true", help="report wall time in timing_ms")

    def radius(p, default):
        p.add_argument("--radius", type=int, default=default, help=f"window radius R (default {default})")

    def seeds(p):
        p.add_argument("--seed", type=int, action="append",
                       help="specialization seed for rank >= 2 (repeatable)")

    parser = argparse.ArgumentParser(prog="hv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(fn=fn)
        return p

    p = add("bracket", cmd_bracket, "bracket of two elements")
    p.add_argument("x")
    p.add_argument("y")
    radius(add("jacobi", cmd_jacobi, "antisymmetry and Jacobi on a window"), 3)
    p = add("cocycle-check", cmd_cocycle_check, "cocycle identity on a window")
    p.add_argument("cocycle")
    radius(p, 3)
    p = add("cocycle-normalize", cmd_cocycle_normalize, "subtract the gauge coboundary")
    p.add_argument("cocycle")
    radius(p, 3)
    p = add("der-apply", cmd_der_apply, "apply a derivation")
    p.add_argument("derivation")
    p.add_argument("x")
    p = add("leibniz", cmd_leibniz, "Leibniz rule on a window")
    p.add_argument("derivation")
    radius(p, 3)
    p = add("aut-apply", cmd_aut_apply, "apply theta_lambda to an element")
    p.add_argument("params")
    p.add_argument("x")
    p = add("aut-compose", cmd_aut_compose, "parameters of outer . inner")
    p.add_argument("outer")
    p.add_argument("inner")
    add("aut-inverse", cmd_aut_inverse, "parameters of the inverse").add_argument("params")
    add("aut-factor", cmd_aut_factor, "T.N.S.K factorization").add_argument("params")
    p = add("hom-check", cmd_hom_check, "homomorphism property on a window")
    p.add_argument("--aut", help="automorphism parameters (lifted on the extended variant)")
    p.add_argument("--inner", help="u in the I-span, for exp(ad u)")
    radius(p, 3)
    p = add("lift-apply", cmd_lift_apply, "apply the lifted automorphism on the extension")
    p.add_argument("params")
    p.add_argument("x")
    p = add("h2-dim", cmd_h2_dim, "dimension of H^2 on a window")
    radius(p, 4)
    seeds(p)
    p = add("der-dim", cmd_der_dim, "dimension of a graded piece of Der g on a window")
    p.add_argument("--degree", help="degree as [a1,...,an] (default 0)")
    radius(p, 4)
    seeds(p)
    return parser


def run(argv):
    """Returns (exit code, JSON text or None, error message or None)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        ctx = AlgebraContext(args.rank, args.lam, args.variant)
        params, result, failures, passed = args.fn(ctx, args)
    except (HVError, UsageError, ValueError, KeyError) as exc:
        return 2, None, f"hv {args.command}: {exc}"
    elapsed = round((time.perf_counter() - start) * 1000)
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "ctx": ctx.describe(),
        "params": params,
        "result": result,
        "failures": failures,
        "timing_ms": elapsed if args.timing else None,
    }
    text = json.dumps(_stringify(report), indent=2, ensure_ascii=False)
    return (0 if passed else 1), text, None


def main(argv=None):
    code, text, error = run(sys.argv[1:] if argv is None else argv)
    if text is not None:
        print(text)
    if error is not None:
        print(error, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
