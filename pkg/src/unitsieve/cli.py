"""Command line interface: ``unitsieve <subcommand> [flags]``.

Exit codes: 0 on success, 1 when a check fails, 2 on usage or domain errors.
Numeric defaults can be overridden through environment variables
UNITSIEVE_PREC, UNITSIEVE_BOUND, UNITSIEVE_SLACK, UNITSIEVE_TRUNCATION and
UNITSIEVE_HEIGHT; the values in effect are printed in every output header.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__
from .core_arith import format_rational, parse_rational
from .dimensions import (
    DEFAULT_TRUNCATION,
    FieldProfile,
    GeneratorProfile,
    biseries_pi,
    biseries_Z,
    crossover,
    crossover_bigraded,
    decide_crossover,
    depth_one_factors,
    evertse_bound,
)
from .errors import DomainError, UnsupportedError
from .padic import DEFAULT_PRECISION, coleman_weight2, padic_li, padic_log
from .period_ring import (
    Point,
    coproduct,
    goncharov_D,
    infinitesimal_coaction,
    li_u,
    reduced_coproduct,
)
from .sieve import (
    DEFAULT_BOUND,
    DEFAULT_SLACK,
    Monomial,
    coleman_from_minors,
    constraint_matrix,
    det_residual,
    enumerate_s_units,
    monomial_basis,
)
from .virtual_units import DEFAULT_HEIGHT, solve_virtual, unramified_space

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}")


def defaults() -> dict[str, int]:
    return {
        "prec": _env_int("UNITSIEVE_PREC", DEFAULT_PRECISION),
        "bound": _env_int("UNITSIEVE_BOUND", DEFAULT_BOUND),
        "slack": _env_int("UNITSIEVE_SLACK", DEFAULT_SLACK),
        "truncation": _env_int("UNITSIEVE_TRUNCATION", DEFAULT_TRUNCATION),
        "height": _env_int("UNITSIEVE_HEIGHT", DEFAULT_HEIGHT),
    }


# -- argument helpers --------------------------------------------------------

def _primes(text: str | None) -> list[int]:
    if text is None or text.strip() in ("", "-"):
        return []
    try:
        return sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise UsageError(f"cannot parse prime list {text!r}")


def _rationals(text: str) -> list[Fraction]:
    try:
        return [parse_rational(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse rational list {text!r}")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse rational {text!r}")


def _points(text: str) -> list[Point]:
    out = []
    for t in text.split(","):
        if t.strip():
            try:
                out.append(Point.parse(t))
            except (ValueError, ZeroDivisionError):
                raise UsageError(f"cannot parse point {t!r}")
    return out


# -- rendering ---------------------------------------------------------------

def _render(args, header: dict, body: dict, lines: list[str]) -> str:
    if args.format == "json":
        return json.dumps({"command": args.command, "config": header, "result": body},
                          indent=2, sort_keys=False)
    head = "# unitsieve " + args.command + " " + " ".join(f"{k}={v}" for k, v in header.items())
    return "\n".join([head] + lines)


def _kv(rows: list[tuple[str, object]]) -> list[str]:
    width = max((len(k) for k, _ in rows), default=0)
    return [f"{k.ljust(width)}  {v}" for k, v in rows]


# -- subcommands -------------------------------------------------------------

def cmd_dims(args, cfg) -> tuple[dict, dict, list[str], int]:
    s = len(_primes(args.primes)) if args.primes is not None else args.s
    if s is None:
        raise UsageError("give --primes or --s")
    T = args.truncation if args.truncation is not None else cfg["truncation"]
    fp = FieldProfile(s)
    header = {"s": s, "k": args.k, "depth": args.depth, "truncation": T}
    body: dict = {}
    lines: list[str] = []
    if args.witt:
        cr = crossover(GeneratorProfile.witt_profile(), fp, T)
        body["crossover"] = cr.to_json()
        lines += _kv([("profile", "full (Witt)"), ("crossover", _cross_str(cr))])
    elif args.depth is not None:
        cr = crossover_bigraded(args.k, fp, args.depth, T)
        d = biseries_pi(args.k, T, max_depth=args.depth).row(args.depth)
        c = biseries_Z(args.k, fp, T, max_depth=args.depth).row(args.depth)
        show = min(T, args.show)
        body = {"crossover": cr.to_json(), "pi_row": list(d.coefficients[:show + 1]),
                "z_row": list(c.coefficients[:show + 1])}
        lines += _kv([("crossover", _cross_str(cr)),
                      ("pi row", " ".join(map(str, body["pi_row"]))),
                      ("z row", " ".join(map(str, body["z_row"])))])
    else:
        df, cf = depth_one_factors(args.k, fp)
        verdict = decide_crossover(df, cf, T)
        body = {"verdict": verdict.to_json(), "expected_exists": args.k > 2 * (s - 1)}
        lines += _kv([("exists", verdict.exists), ("reason", verdict.reason),
                      ("witness", _cross_str(verdict.witness) if verdict.witness else "none below T")])
    return header, body, lines, EXIT_OK


def _cross_str(cr) -> str:
    if not cr.found:
        return f"none below {cr.T}"
    return f"w={cr.w} N={cr.N} (d_w={cr.d_w}, c_w={cr.c_w})"


def cmd_sunits(args, cfg):
    S = _primes(args.primes)
    B = args.bound if args.bound is not None else cfg["bound"]
    X = enumerate_s_units(S, B)
    pts = X.in_interval(0, 1) if args.interval else X.points
    header = {"primes": ",".join(map(str, S)) or "-", "bound": B, "interval": args.interval}
    body = X.to_json()
    body["shown"] = [format_rational(x) for x in pts]
    body["evertse_bound"] = evertse_bound(len(S))
    lines = _kv([("count", len(X)), ("evertse bound", body["evertse_bound"]),
                 ("points", " ".join(body["shown"]) or "(none)")])
    return header, body, lines, EXIT_OK


def cmd_polylog(args, cfg):
    prec = args.prec if args.prec is not None else cfg["prec"]
    x = _rational(args.x)
    if args.n == 0 and args.log:
        raise UsageError("--log takes no --n")
    val = padic_log(x, args.p, prec) if args.log else padic_li(args.n, x, args.p, prec)
    what = "log" if args.log else f"Li_{args.n}"
    header = {"p": args.p, "prec": prec}
    body = {"function": what, "x": format_rational(x), "value": val.to_json()}
    lines = _kv([("function", what), ("x", format_rational(x)), ("valuation", val.valuation),
                 ("digits", " ".join(map(str, val.digits())) or "(zero)"), ("value", repr(val))])
    return header, body, lines, EXIT_OK


def cmd_coleman(args, cfg):
    prec = args.prec if args.prec is not None else cfg["prec"]
    slack = args.slack if args.slack is not None else cfg["slack"]
    rows, ok = [], True
    for x in _rationals(args.x):
        for p in _primes(args.p):
            val = coleman_weight2(x, p, prec)
            passed = val.valuation >= prec - slack
            ok = ok and passed
            rows.append({"x": format_rational(x), "p": p, "valuation": val.valuation,
                         "pass": passed})
    header = {"prec": prec, "slack": slack}
    lines = [f"{'x':>8} {'p':>4} {'valuation':>10}  result"]
    lines += [f"{r['x']:>8} {r['p']:>4} {r['valuation']:>10}  {'pass' if r['pass'] else 'fail'}"
              for r in rows]
    return header, {"rows": rows, "pass": ok}, lines, EXIT_OK if ok else EXIT_FAIL


def _monomials(args) -> list[Monomial]:
    if args.monomials:
        try:
            return [Monomial.parse(t) for t in args.monomials.split(",")]
        except ValueError as exc:
            raise UsageError(str(exc))
    if args.weight is None:
        raise UsageError("give --weight (and optionally --depth, --k) or --monomials")
    max_li = args.max_li if args.max_li is not None else 2 * args.k
    return monomial_basis(max_li, args.weight, args.depth, include_log=not args.log_free)


def cmd_det(args, cfg):
    prec = args.prec if args.prec is not None else cfg["prec"]
    slack = args.slack if args.slack is not None else cfg["slack"]
    monos = _monomials(args)
    pts = _points(args.points)
    header = {"prec": prec, "slack": slack, "monomials": ",".join(map(str, monos))}
    if len(pts) == len(monos) - 1:
        fn = coleman_from_minors(pts, monos)
        body = {"coleman_function": fn.to_json()}
        lines = _kv([("points", " ".join(map(str, pts))), ("reductions", fn.reductions)])
        lines += [f"  {str(m):>12}  {c}" for m, c in zip(fn.monomials, body["coleman_function"]["coefficients"])]
        return header, body, lines, EXIT_OK
    if len(pts) != len(monos):
        raise UsageError(f"{len(monos)} monomials need {len(monos)} points (or one fewer), got {len(pts)}")
    rows, ok = [], True
    for p in _primes(args.p):
        M = constraint_matrix(pts, monos, "padic", p, prec)
        r = det_residual(M, slack)
        ok = ok and r.passed
        rows.append({"p": p, **r.to_json()})
    header["points"] = ",".join(map(str, pts))
    lines = [f"{'p':>4} {'valuation':>10} {'full':>6} {'target':>7}  result"]
    lines += [f"{r['p']:>4} {r['valuation']:>10} {r['full_valuation']:>6} {r['target']:>7}  "
              f"{'pass' if r['pass'] else 'fail'}" for r in rows]
    return header, {"rows": rows, "pass": ok}, lines, EXIT_OK if ok else EXIT_FAIL


def cmd_virtual(args, cfg):
    S = _primes(args.s_primes)
    B = args.bound if args.bound is not None else cfg["bound"]
    H = args.height if args.height is not None else cfg["height"]
    if args.support:
        support = _rationals(args.support)
    elif args.t_primes:
        support = list(enumerate_s_units(_primes(args.t_primes), B).in_interval(0, 1))
    else:
        raise UsageError("give --support or --t-primes")
    basis = unramified_space(support, args.m, S)
    header = {"m": args.m, "s_primes": ",".join(map(str, S)) or "-", "height": H}
    sol = solve_virtual(basis, args.m, S, H)
    body = {"support": [format_rational(x) for x in support],
            "dimension": len(basis),
            "basis": [str(b) for b in basis],
            "equations": [str(e) for e in sol.system.equations]}
    lines = _kv([("support", " ".join(body["support"])), ("dimension", len(basis))])
    lines += [f"  xi{i}: {b}" for i, b in enumerate(body["basis"])]
    lines += ["equations"] + [f"  {e} = 0" for e in body["equations"]]
    if args.solve:
        js = sol.to_json()
        body["status"] = js["status"]
        body["solutions"] = js["solutions"]
        if "family" in js:
            body["family"] = js["family"]
        lines.append(f"status  {sol.status}")
        lines += [f"  t = ({', '.join(s['parameters'])}): {s['divisor']}" for s in js["solutions"]]
        if sol.family is not None:
            lines.append(f"family  {sol.family}")
    return header, body, lines, EXIT_OK


def cmd_coaction(args, cfg):
    x = Point.parse(args.x)
    header = {"x": str(x), "mode": args.mode}
    if args.word:
        D = goncharov_D(args.word, x)
        body = {"word": args.word, "D": D.to_json()}
        lines = _kv([("word", args.word), ("D", str(D) or "0")])
        return header, body, lines, EXIT_OK
    if args.li is None:
        raise UsageError("give --word or --li")
    xi = li_u(args.li, x)
    op = {"full": coproduct, "reduced": reduced_coproduct, "infinitesimal": infinitesimal_coaction}[args.mode]
    T = op(xi)
    body = {"symbol": str(xi), "tensor": T.to_json()}
    lines = _kv([("symbol", str(xi)), (args.mode, str(T) or "0")])
    return header, body, lines, EXIT_OK


COMMANDS = {
    "dims": cmd_dims,
    "sunits": cmd_sunits,
    "polylog": cmd_polylog,
    "coleman": cmd_coleman,
    "det": cmd_det,
    "virtual": cmd_virtual,
    "coaction": cmd_coaction,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unitsieve", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"unitsieve {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("table", "json"), default="table")
        return p

    p = add("dims", "dimension series and crossover")
    p.add_argument("--primes", help="comma list; only its size matters")
    p.add_argument("--s", type=int, help="number of primes, instead of --primes")
    p.add_argument("--k", type=int, default=2, help="depth-one quotient index")
    p.add_argument("--depth", type=int, help="compare a single depth row")
    p.add_argument("--witt", action="store_true", help="use the full group profile")
    p.add_argument("--truncation", type=int)
    p.add_argument("--show", type=int, default=12, help="row coefficients to print")

    p = add("sunits", "enumerate S-unit equation solutions")
    p.add_argument("--primes", required=True)
    p.add_argument("--bound", type=int)
    p.add_argument("--interval", action="store_true", help="only points in (0, 1)")

    p = add("polylog", "p-adic polylogarithm or logarithm")
    p.add_argument("--x", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--log", action="store_true")
    p.add_argument("--prec", type=int)

    p = add("coleman", "weight-2 Coleman function valuations")
    p.add_argument("--x", required=True, help="comma list of rationals")
    p.add_argument("--p", required=True, help="comma list of primes")
    p.add_argument("--prec", type=int)
    p.add_argument("--slack", type=int)
    p.add_argument("--primes", help="accepted for symmetry with det; unused")

    p = add("det", "determinant residual or Coleman function from minors")
    p.add_argument("--points", required=True, help="comma list; tinf:c is a tangent vector at infinity")
    p.add_argument("--p", default="5", help="comma list of primes")
    p.add_argument("--prec", type=int)
    p.add_argument("--slack", type=int)
    p.add_argument("--k", type=int, default=2, help="basis uses Li_1..Li_2k unless --max-li")
    p.add_argument("--max-li", type=int, dest="max_li")
    p.add_argument("--weight", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--log-free", action="store_true", dest="log_free")
    p.add_argument("--monomials", help="comma list such as Li4,log*Li3,log^3*Li1")
    p.add_argument("--primes", help="accepted for symmetry; unused")

    p = add("virtual", "unramified divisors and virtual cocycles")
    p.add_argument("--support", help="comma list of rationals")
    p.add_argument("--t-primes", dest="t_primes", help="take the support from these S-units in (0,1)")
    p.add_argument("--m", type=int, default=2, help="max polylog index of the generator space")
    p.add_argument("--s-primes", dest="s_primes", default="")
    p.add_argument("--bound", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--solve", action="store_true")

    p = add("coaction", "coproducts of polylogarithms and the iterated-integral formula")
    p.add_argument("--x", required=True, help="point, e.g. 1/3 or tinf:-2")
    p.add_argument("--word", help="word in 0/1, innermost letter first (10 is Li_2)")
    p.add_argument("--li", type=int)
    p.add_argument("--mode", choices=("full", "reduced", "infinitesimal"), default="reduced")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cfg = defaults()
        header, body, lines, code = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"unitsieve {args.command}: {exc}", file=err)
        return EXIT_USAGE
    except (DomainError, UnsupportedError) as exc:
        print(f"unitsieve {args.command}: {exc}", file=err)
        return EXIT_USAGE
    print(_render(args, header, body, lines), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
