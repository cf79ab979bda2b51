"""Command-line interface.

Subcommands: compute (zeta / pi / log / zeta3-first-order), coeffs,
verify, bench.  stdout is byte-deterministic for a fixed argv; wall-clock
timing goes to stderr.  Exit codes: 0 ok, 2 failed verification, 64 bad
usage, 65 domain error, 69 convergence failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from mpmath import mp, mpf

from . import engine, identities
from .coefficients import (
    PI_METHODS,
    coeffs_log,
    coeffs_pi,
    negative_q_rewrite,
)
from .core import ConvergenceError, DomainError, make_context

EX_OK = 0
EX_FAIL = 2
EX_USAGE = 64
EX_DOMAIN = 65
EX_CONVERGENCE = 69


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; we promise 64 with usage on stderr."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _bound_exponent(err) -> int:
    """Smallest integer e with err < 10^e (so 'error_bound < 1e<e>')."""
    if err <= 0:
        return -999
    return int(mp.floor(mp.log10(err))) + 1


def _emit_result(res, digits: int, fmt: str) -> None:
    e = _bound_exponent(res.error_bound)
    if fmt == "json":
        payload = {
            "constant": res.constant_id,
            "method": res.method_id,
            "digits": digits,
            "value": res.decimal_value,
            "error_bound": f"<1e{e}",
            "terms_used": res.terms_used,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"constant = {res.constant_id}")
        print(f"method = {res.method_id}")
        print(f"value = {res.decimal_value}")
        print(f"error_bound < 1e{e}")
        for basis, n in res.terms_used.items():
            print(f"terms_used[{basis}] = {n}")
    print(f"wall_time = {res.wall_time:.3f}s", file=sys.stderr)


def _cmd_compute_zeta(args) -> int:
    res = engine.zeta_odd(args.s, args.method, args.digits)
    _emit_result(res, args.digits, args.format)
    return EX_OK


def _cmd_compute_pi(args) -> int:
    res = engine.pi_power(args.power, args.method, args.digits)
    _emit_result(res, args.digits, args.format)
    return EX_OK


def _cmd_compute_log(args) -> int:
    res = engine.log_prime(args.p, args.digits)
    _emit_result(res, args.digits, args.format)
    return EX_OK


def _cmd_zeta3_first_order(args) -> int:
    ctx = make_context(30)
    value = engine.zeta3_first_order(ctx)
    with ctx.workdps():
        err = value - engine.oracle_zeta(3, ctx=ctx)
        print("constant = zeta(3)")
        print("method = first-order truncation of the sqrt15 family")
        print(f"value = {mp.nstr(value, 20)}")
        print(f"error_vs_oracle = {mp.nstr(err, 3)}")
    return EX_OK


def _cmd_coeffs(args) -> int:
    if args.constant == "zeta":
        if args.k is None:
            raise DomainError("coeffs --constant zeta needs --k")
        table = engine.zeta_table(4 * args.k - 1
                                  if args.method in ("corollary", "corollary2",
                                                     "root3", "root7", "root15")
                                  else 4 * args.k + 1,
                                  args.method)
    elif args.constant == "pi":
        if args.power is None:
            raise DomainError("coeffs --constant pi needs --power")
        method = args.method
        if method in ("example62", "prop_pi5", "prop_pi5_fast"):
            if args.power % 4 != 1:
                raise DomainError(f"{method} produces powers = 1 mod 4")
            k = (args.power + 3) // 4 if method == "example62" else (args.power - 1) // 4
        else:
            if args.power % 4 != 3:
                raise DomainError(f"{method} produces powers = 3 mod 4")
            k = (args.power + 1) // 4
        if k < 1:
            raise DomainError(f"{method} cannot produce pi^{args.power}")
        table = coeffs_pi(method, k)
    else:  # log
        if args.p is None:
            raise DomainError("coeffs --constant log needs --p")
        table = coeffs_log(args.p)
    if args.rewrite_positive_q:
        table = negative_q_rewrite(table)
    print(table.to_json())
    return EX_OK


def _parse_t(text: str):
    try:
        re_s, im_s = text.split(",")
        return mp.mpc(mpf(re_s.strip()), mpf(im_s.strip()))
    except (ValueError, TypeError) as exc:
        raise DomainError(f"--t expects 're,im', got {text!r}") from exc


def _cmd_verify(args) -> int:
    ctx = make_context(args.digits)
    name = args.identity
    params: list[str] = []
    if name == "multisection":
        mismatch = identities.check_multisection(args.p, args.s, args.order)
        print("identity = multisection")
        print(f"p = {args.p}; s = {args.s}; order = {args.order}")
        print(f"exact_mismatch = {mismatch}")
        ok = mismatch == 0
        print("PASS" if ok else "FAIL")
        return EX_OK if ok else EX_FAIL
    with ctx.workdps():
        t = _parse_t(args.t)
        if name == "t1c1":
            res = identities.check_t1_case1(t, ctx)
            params = [f"t = {args.t}"]
        elif name == "t1c2":
            res = identities.check_t1_case2(args.k, t, ctx)
            params = [f"k = {args.k}", f"t = {args.t}"]
        elif name == "t1c3":
            res = identities.check_t1_case3(args.k, t, ctx)
            params = [f"k = {args.k}", f"t = {args.t}"]
        elif name == "lemma-p4":
            res = identities.check_lemma_p4(mpf(args.q), args.s, ctx)
            params = [f"q = {args.q}", f"s = {args.s}"]
        elif name == "lemma-sech":
            res = identities.check_lemma_sech(mpf(args.q), args.s, ctx)
            params = [f"q = {args.q}", f"s = {args.s}"]
        elif name == "zeta-free":
            a = Fraction(args.a)
            res = identities.check_zeta_free(args.case, args.k, a, t, ctx)
            params = [f"case = {args.case}", f"k = {args.k}",
                      f"a = {args.a}", f"t = {args.t}"]
        else:  # pragma: no cover - argparse choices guard this
            raise DomainError(f"unknown identity {name!r}")
        threshold = mpf(10) ** (-(args.digits - 5))
        print(f"identity = {name}")
        for line in params:
            print(line)
        print(f"rel_residual = {mp.nstr(res.rel_residual, 3)}")
        print(f"threshold = 1e-{args.digits - 5}")
        ok = res.rel_residual < threshold
    print("PASS" if ok else "FAIL")
    return EX_OK if ok else EX_FAIL


def _cmd_bench(args) -> int:
    profile = engine.convergence_profile(
        f"zeta({args.s})" if args.constant == "zeta" else args.constant,
        args.method, args.max_terms, make_context(args.digits))
    print(f"constant = {profile.constant_id}")
    print(f"method = {profile.method_id}")
    for n, d in profile.points:
        print(f"n={n} correct_digits={d}")
    print(f"slope = {profile.slope:.4f} digits/term")
    return EX_OK


def build_parser() -> _Parser:
    p = _Parser(prog="zetaodd",
                description="Rapidly converging Lambert-series evaluation of "
                            "zeta at odd integers, odd powers of pi, and "
                            "logs of 2, 3, 5.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    compute = sub.add_parser("compute", help="evaluate a constant")
    csub = compute.add_subparsers(dest="what", required=True,
                                  parser_class=_Parser)

    cz = csub.add_parser("zeta", help="zeta(s) for odd s >= 3")
    cz.add_argument("--s", type=int, required=True)
    cz.add_argument("--method", default="auto")
    cz.add_argument("--digits", type=int, default=50)
    cz.add_argument("--format", choices=("text", "json"), default="text")
    cz.set_defaults(func=_cmd_compute_zeta)

    cp = csub.add_parser("pi", help="pi^n for odd n")
    cp.add_argument("--power", type=int, required=True)
    cp.add_argument("--method", default="auto",
                    help=f"one of {', '.join(PI_METHODS)} or auto")
    cp.add_argument("--digits", type=int, default=50)
    cp.add_argument("--format", choices=("text", "json"), default="text")
    cp.set_defaults(func=_cmd_compute_pi)

    cl = csub.add_parser("log", help="log p for p in 2, 3, 5")
    cl.add_argument("--p", type=int, choices=(2, 3, 5), required=True)
    cl.add_argument("--digits", type=int, default=50)
    cl.add_argument("--format", choices=("text", "json"), default="text")
    cl.set_defaults(func=_cmd_compute_log)

    cf = csub.add_parser("zeta3-first-order",
                         help="closed-form ~1e-10 approximation to zeta(3)")
    cf.set_defaults(func=_cmd_zeta3_first_order)

    co = sub.add_parser("coeffs", help="print an exact coefficient table")
    co.add_argument("--constant", choices=("zeta", "pi", "log"), required=True)
    co.add_argument("--k", type=int)
    co.add_argument("--power", type=int)
    co.add_argument("--p", type=int, choices=(2, 3, 5))
    co.add_argument("--method", default="root15")
    co.add_argument("--rewrite-positive-q", action="store_true",
                    help="rewrite Lambert terms at negative nomes via the "
                         "2-section identity")
    co.set_defaults(func=_cmd_coeffs)

    ve = sub.add_parser("verify", help="numerically check a defining identity")
    ve.add_argument("--identity", required=True,
                    choices=("t1c1", "t1c2", "t1c3", "multisection",
                             "lemma-p4", "lemma-sech", "zeta-free"))
    ve.add_argument("--k", type=int, default=1)
    ve.add_argument("--t", default="1,0", help="complex t as 're,im'")
    ve.add_argument("--p", type=int, default=2, choices=(2, 3, 5, 7))
    ve.add_argument("--a", default="1/2", help="rational a as 'num/den'")
    ve.add_argument("--q", default="0.5", help="real nome in (0,1)")
    ve.add_argument("--s", type=int, default=-3)
    ve.add_argument("--case", type=int, default=2, choices=(1, 2))
    ve.add_argument("--order", type=int, default=50)
    ve.add_argument("--digits", type=int, default=30)
    ve.set_defaults(func=_cmd_verify)

    be = sub.add_parser("bench", help="convergence profile of a method")
    be.add_argument("--constant", default="zeta")
    be.add_argument("--s", type=int, default=3)
    be.add_argument("--method", default="auto")
    be.add_argument("--max-terms", type=int, default=8)
    be.add_argument("--digits", type=int, default=50)
    be.set_defaults(func=_cmd_bench)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DOMAIN
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
