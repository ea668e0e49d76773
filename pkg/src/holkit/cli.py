"""The ``holkit`` command line.

Exit codes: 0 success, 1 a check failed (or a cap was exceeded), 2 usage
error (bad flags, unparsable or ill-typed expressions).
"""
from __future__ import annotations

import argparse
import json
import sys

from .autf2 import BEYOND_CAP, BallLimitError, NormalFormError, basis, enumerate_ball, normal_form, order_of, project_gl2
from .expr import IDENTITY, TypeMismatchError, evaluate, inverse, mul, type_name
from .extensions import HolElement, TowerElement
from .fixtures import dump_fixtures
from .grammar import ParseError
from .morphisms import Automorphism
from .verify import SUITES, SuiteParams, run_suite, suite_by_name

VERBS = ("nf", "mul", "invert", "project", "order", "ball", "verify", "eval")


class UsageError(Exception):
    pass


def _emit(out, fmt: str, payload: dict, text: str) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(text + "\n")


def _value(text: str):
    return evaluate(text)


def _show(v) -> str:
    return "e" if v is IDENTITY else str(v)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    parser = argparse.ArgumentParser(prog="holkit", description="Exact computations in Aut(F2), holomorphs and the tower H(n).")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    p = sub.add_parser("nf", parents=[fmt], help="normal form p^r u x^2s w of an element of Aut(F2)")
    p.add_argument("expr")
    p = sub.add_parser("mul", parents=[fmt], help="product of expressions, left to right")
    p.add_argument("exprs", nargs="+")
    p = sub.add_parser("invert", parents=[fmt], help="inverse of an element")
    p.add_argument("expr")
    p = sub.add_parser("project", parents=[fmt], help="Aut(F2) -> GL2(Z), Hol -> Aut, H(n) -> H(n-1)")
    p.add_argument("expr")
    p = sub.add_parser("order", parents=[fmt], help="order of an element, up to --cap")
    p.add_argument("expr")
    p.add_argument("--cap", type=int, default=64)
    p = sub.add_parser("ball", parents=[fmt], help="size of the ball of Aut(F2) over p, x, y, ta, tb")
    p.add_argument("--radius", type=int, default=3)
    p = sub.add_parser("verify", parents=[fmt], help="run a verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--radius", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=_int_list)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=64)
    p = sub.add_parser("eval", parents=[fmt], help="evaluate an expression, or export fixtures")
    p.add_argument("expr", nargs="?")
    p.add_argument("--dump-fixtures", metavar="DIR")
    return parser


def cmd_nf(args, out) -> int:
    f = _value(args.expr)
    if f is IDENTITY:
        f = basis().identity
    if not isinstance(f, Automorphism) or f.domain.rank != 2:
        raise TypeMismatchError(f"nf needs an element of Aut(F2), got {type_name(f)}")
    nf = normal_form(f)
    _emit(out, args.format, {"input": args.expr, "normal_form": nf.to_json(), "text": str(nf)}, str(nf))
    return 0


def _value_payload(text: str, v) -> dict:
    return {"input": text, "type": type_name(v), "value": _show(v)}


def cmd_mul(args, out) -> int:
    v = IDENTITY
    for e in args.exprs:
        v = mul(v, _value(e))
    _emit(out, args.format, _value_payload(" * ".join(args.exprs), v), _show(v))
    return 0


def cmd_invert(args, out) -> int:
    v = inverse(_value(args.expr))
    _emit(out, args.format, _value_payload(args.expr, v), _show(v))
    return 0


def cmd_project(args, out) -> int:
    v = _value(args.expr)
    if isinstance(v, Automorphism) and v.domain.rank == 2:
        m = project_gl2(v)
        _emit(out, args.format, {"input": args.expr, "type": "GL2(Z)", "value": [list(r) for r in m.rows]}, str(m))
        return 0
    if isinstance(v, HolElement):
        w = v.aut
    elif isinstance(v, TowerElement):
        w = v.lower
    else:
        raise TypeMismatchError(f"cannot project {type_name(v)}")
    _emit(out, args.format, _value_payload(args.expr, w), str(w))
    return 0


def cmd_order(args, out) -> int:
    if args.cap < 1:
        raise UsageError("--cap must be >= 1")
    v = _value(args.expr)
    if v is IDENTITY:
        o = 1
    elif isinstance(v, int):
        raise TypeMismatchError("order needs a group element")
    else:
        o = order_of(v, args.cap)
    shown = str(o)
    _emit(out, args.format, {"input": args.expr, "cap": args.cap, "order": o if o is not BEYOND_CAP else shown}, shown)
    return 0


def cmd_ball(args, out) -> int:
    if args.radius < 0:
        raise UsageError("--radius must be >= 0")
    B = basis()
    ball = enumerate_ball(B.generators(), args.radius, names=["p", "x", "y", "ta", "tb"])
    payload = {"radius": args.radius, "size": len(ball), "sphere_sizes": ball.sphere_sizes}
    _emit(out, args.format, payload, f"radius {args.radius}: {len(ball)} elements; spheres {ball.sphere_sizes}")
    return 0


def cmd_verify(args, out) -> int:
    try:
        name, _ = suite_by_name(args.suite)
    except KeyError as exc:
        raise UsageError(exc.args[0])
    kw = {"seed": args.seed, "cap": args.cap, "radius": args.radius, "n": args.n, "samples": args.samples}
    if args.k is not None:
        kw["K"] = args.k
    try:
        params = SuiteParams(**kw)
    except ValueError as exc:
        raise UsageError(str(exc))
    report = run_suite(name, params)
    _emit(out, args.format, report.to_json(), report.to_text())
    return 0 if report.passed else 1


def cmd_eval(args, out) -> int:
    if args.dump_fixtures:
        paths = dump_fixtures(args.dump_fixtures)
        _emit(out, args.format, {"fixtures": [str(p) for p in paths]}, "\n".join(str(p) for p in paths))
        if args.expr is None:
            return 0
    if args.expr is None:
        raise UsageError("eval needs an expression or --dump-fixtures")
    v = _value(args.expr)
    _emit(out, args.format, _value_payload(args.expr, v), _show(v))
    return 0


COMMANDS = {
    "nf": cmd_nf, "mul": cmd_mul, "invert": cmd_invert, "project": cmd_project,
    "order": cmd_order, "ball": cmd_ball, "verify": cmd_verify, "eval": cmd_eval,
}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.verb](args, out)
    except (ParseError, TypeMismatchError, UsageError) as exc:
        err.write(f"holkit {args.verb}: error: {exc}\n")
        return 2
    except (BallLimitError, NormalFormError) as exc:
        err.write(f"holkit {args.verb}: {exc}\n")
        return 1
    except (ValueError, KeyError) as exc:
        err.write(f"holkit {args.verb}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
