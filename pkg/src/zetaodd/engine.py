"""Evaluation engine: certified values of zeta(odd), pi^odd, and log p.

Ties the exact coefficient tables to the series evaluators, truncates the
result to the requested number of digits, and reports a rigorous error
bound plus the number of series terms each basis element consumed.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from mpmath import mp, mpf

from . import oracles
from .coefficients import (
    PI_METHODS,
    ZETA_4KM1_METHODS,
    ZETA_4KP1_METHODS,
    CoefficientTable,
    assemble_detailed,
    coeffs_4km1,
    coeffs_4kp1,
    coeffs_log,
    coeffs_pi,
)
from .core import (
    DomainError,
    PrecisionContext,
    make_context,
    truncate_digits,
)
from .series import lambert_partial_sum


@dataclass(frozen=True)
class ConstantResult:
    constant_id: str
    method_id: str
    decimal_value: str  # truncated, not rounded
    error_bound: object  # mpf
    terms_used: dict
    wall_time: float


@dataclass(frozen=True)
class ConvergenceProfile:
    constant_id: str
    method_id: str
    points: tuple  # of (n_terms, correct_digits)
    slope: float  # fitted decimal digits gained per term


def _require_odd_s(s: int) -> None:
    if s < 3 or s % 2 == 0:
        raise DomainError(f"s must be an odd integer >= 3, got {s}")


def zeta_table(s: int, method: str = "auto") -> CoefficientTable:
    """Coefficient table for zeta(s), dispatching on s mod 4."""
    _require_odd_s(s)
    if s % 4 == 3:
        k = (s + 1) // 4
        if method == "auto":
            method = "root15"
        if method in ZETA_4KP1_METHODS or method in ("p2", "p3", "p5",
                                                     "corollary3"):
            raise DomainError(
                f"method {method!r} computes zeta(4k+1); "
                f"zeta({s}) needs one of {ZETA_4KM1_METHODS}"
            )
        return coeffs_4km1(method, k)
    k = (s - 1) // 4
    if method == "auto":
        method = "root15"
    if method in ("corollary", "corollary2"):
        raise DomainError(
            f"method {method!r} computes zeta(4k-1); "
            f"zeta({s}) needs one of {ZETA_4KP1_METHODS}"
        )
    return coeffs_4kp1(method, k)


def zeta_odd(s: int, method: str = "auto", target_digits: int = 50,
             ctx: PrecisionContext | None = None) -> ConstantResult:
    """zeta(s) for odd s >= 3 to target_digits, with a certified bound."""
    t0 = time.perf_counter()
    ctx = ctx or make_context(target_digits)
    table = zeta_table(s, method)
    value, err, terms = assemble_detailed(table, ctx)
    decimal = truncate_digits(value, ctx.target_digits)
    return ConstantResult(table.constant, table.method, decimal, err,
                          terms, time.perf_counter() - t0)


def pi_power(n: int, method: str = "auto", target_digits: int = 50,
             ctx: PrecisionContext | None = None) -> ConstantResult:
    """pi^n for odd n >= 1 straight from a Lambert-series table."""
    t0 = time.perf_counter()
    if n < 1 or n % 2 == 0:
        raise DomainError(f"n must be an odd integer >= 1, got {n}")
    ctx = ctx or make_context(target_digits)
    if method == "auto":
        method = "example62" if n % 4 == 1 else "example63"
    if method not in PI_METHODS:
        raise DomainError(f"unknown pi method {method!r}; choose from {PI_METHODS}")
    if method in ("example62", "prop_pi5", "prop_pi5_fast"):
        if n % 4 != 1:
            raise DomainError(f"method {method!r} produces pi^(4k+1)-type "
                              f"powers, not pi^{n}")
        k = (n + 3) // 4 if method == "example62" else (n - 1) // 4
        if k < 1:
            raise DomainError(f"method {method!r} starts at pi^5")
    else:
        if n % 4 != 3:
            raise DomainError(f"method {method!r} produces pi^(4k-1) powers, "
                              f"not pi^{n}")
        k = (n + 1) // 4
    table = coeffs_pi(method, k)
    value, err, terms = assemble_detailed(table, ctx)
    decimal = truncate_digits(value, ctx.target_digits)
    return ConstantResult(table.constant, table.method, decimal, err,
                          terms, time.perf_counter() - t0)


def log_prime(p: int, target_digits: int = 50,
              ctx: PrecisionContext | None = None) -> ConstantResult:
    """log p for p in (2, 3, 5) from the s = -1 tables."""
    t0 = time.perf_counter()
    ctx = ctx or make_context(target_digits)
    table = coeffs_log(p)
    value, err, terms = assemble_detailed(table, ctx)
    decimal = truncate_digits(value, ctx.target_digits)
    return ConstantResult(table.constant, table.method, decimal, err,
                          terms, time.perf_counter() - t0)


def zeta3_first_order(ctx: PrecisionContext | None = None):
    """The closed-form first-order approximation to zeta(3):

        pi^3 sqrt(15)/100 + e^(-sqrt(15) pi) (9/4 + 4/sqrt(15) sinh(sqrt(15) pi/2))

    i.e. the sqrt15-family formula with every series cut at its first term.
    Overshoots zeta(3) by ~2.9e-10 (the omitted sech and Lambert tails do
    not cancel); the truncation guarantees only the magnitude, not the sign.
    """
    ctx = ctx or make_context(50)
    with ctx.workdps():
        r15 = mp.sqrt(15)
        x = r15 * mp.pi
        return (mp.pi ** 3 * r15 / 100
                + mp.exp(-x) * (mpf(9) / 4 + 4 / r15 * mp.sinh(x / 2)))


def oracle_zeta(s: int, target_digits: int = 50,
                ctx: PrecisionContext | None = None):
    """Euler-Maclaurin zeta(s), sharing no code with the Lambert route."""
    ctx = ctx or make_context(target_digits)
    return oracles.oracle_zeta(s, ctx)


# ---------------------------------------------------------------------------
# convergence profiling
# ---------------------------------------------------------------------------


def _constant_table(constant_id: str, method: str) -> CoefficientTable:
    cid = constant_id.strip()
    if cid.startswith("zeta(") and cid.endswith(")"):
        return zeta_table(int(cid[5:-1]), method)
    if cid.startswith("pi^"):
        n = int(cid[3:])
        if method in ("example62", "prop_pi5", "prop_pi5_fast"):
            k = (n + 3) // 4 if method == "example62" else (n - 1) // 4
        else:
            k = (n + 1) // 4
        return coeffs_pi(method, k)
    if cid.startswith("log(") and cid.endswith(")"):
        return coeffs_log(int(cid[4:-1]))
    raise DomainError(f"unknown constant id {constant_id!r}")


def _oracle_value(constant_id: str, ctx: PrecisionContext):
    cid = constant_id.strip()
    if cid.startswith("zeta("):
        return oracles.oracle_zeta(int(cid[5:-1]), ctx)
    if cid.startswith("pi^"):
        with ctx.workdps():
            return oracles.oracle_pi(ctx) ** int(cid[3:])
    return oracles.oracle_log(int(cid[4:-1]), ctx)


def _sech_partial(q, s: int, n_terms: int, ctx: PrecisionContext):
    """First n_terms of sum_{n>=0} (-1)^(n+1) (2n+1)^s sech((n+1/2) log q)."""
    with ctx.workdps():
        qv = q.value(ctx)
        acc = mpf(0)
        qpow = mp.sqrt(qv)  # q^(n+1/2)
        qodd = qv  # q^(2n+1)
        q2 = qv * qv
        for n in range(n_terms):
            term = mp.power(2 * n + 1, s) * 2 * qpow / (1 + qodd)
            acc += term if n % 2 == 1 else -term
            qpow *= qv
            qodd *= q2
        return acc


def _deriv_partial(q, s: int, n_terms: int, ctx: PrecisionContext):
    with ctx.workdps():
        qv = q.value(ctx)
        acc = mpf(0)
        qk = mpf(1)  # q^(k-1)
        for k in range(1, n_terms + 1):
            acc += mp.power(k, s + 1) * qk / (1 - qk * qv) ** 2
            qk *= qv
        return oracles.oracle_pi(ctx) * qv * acc


def convergence_profile(constant_id: str, method: str, max_terms: int,
                        ctx: PrecisionContext | None = None) -> ConvergenceProfile:
    """Truncate the slowest-decaying series of a formula at N = 1..max_terms
    and count correct digits against the oracle; the fitted slope is the
    number of decimal digits gained per extra term.

    The truncation error behaves like C * N^deg * |q|^N, so a straight-line
    fit of digits against N overstates the asymptotic rate -log10|q| by
    roughly |deg| * log10(e) / N at small N (5-8% for the zeta formulas).
    The fit therefore removes the known N^deg factor first; the reported
    slope estimates the digits-per-term of the exponential factor alone.
    """
    ctx = ctx or make_context(50)
    if max_terms < 3:
        raise DomainError("max_terms must be at least 3 to fit a slope")
    table = _constant_table(constant_id, method)
    series = [(b, c) for b, c in table.entries if b.kind != "pi_power"]
    if not series:
        raise DomainError(f"{constant_id} table has no series to profile")
    slow_key = min(b.q.decay_key() for b, _ in series)
    oracle_val = _oracle_value(table.constant, ctx)

    from .core import eval_exact
    from .series import lambert_derivative_eval, lambert_eval, sech_series

    with ctx.workdps():
        # evaluate the fast-decaying terms once, at full budget
        budget = mpf(10) ** (-(ctx.target_digits + ctx.guard_digits // 2))
        fixed = mpf(0)
        pi_val = None
        slow = []
        for basis, coeff in table.entries:
            cval = eval_exact(coeff, ctx)
            if basis.kind == "pi_power":
                if pi_val is None:
                    pi_val = oracles.oracle_pi(ctx)
                fixed += cval * pi_val ** basis.power
            elif basis.q.decay_key() == slow_key:
                slow.append((basis, cval))
            elif basis.kind == "lambert":
                fixed += cval * lambert_eval(basis.q, basis.s,
                                             budget / (1 + abs(cval)), ctx).value
            elif basis.kind == "sech_series":
                fixed += cval * sech_series(basis.q, basis.s,
                                            budget / (1 + abs(cval)), ctx).value
            else:
                r = lambert_derivative_eval(basis.q, basis.s,
                                            budget / (1 + abs(cval)), ctx)
                if pi_val is None:
                    pi_val = oracles.oracle_pi(ctx)
                fixed += cval * pi_val * basis.q.value(ctx) * r.value
        points = []
        for n in range(1, max_terms + 1):
            approx = fixed
            for basis, cval in slow:
                if basis.kind == "lambert":
                    approx += cval * lambert_partial_sum(basis.q, basis.s, n, ctx)
                elif basis.kind == "sech_series":
                    approx += cval * _sech_partial(basis.q, basis.s, n, ctx)
                else:  # lambert_derivative at the slowest nome
                    approx += cval * _deriv_partial(basis.q, basis.s, n, ctx)
            delta = abs(approx - oracle_val)
            if delta == 0:
                digits = ctx.working_digits
            else:
                digits = int(mp.floor(-mp.log10(delta)))
            points.append((n, max(0, digits)))
    # discard saturated points (oracle/assembly precision floor)
    usable = [(n, d) for n, d in points if d < ctx.target_digits - 1]
    while len(usable) > 3 and usable[-1][1] <= usable[-2][1]:
        usable.pop()
    if len(usable) < 3:
        raise DomainError(
            "not enough unsaturated points to fit a slope; "
            "raise target_digits or lower max_terms"
        )
    # polynomial degree of the first omitted term: n^s for a plain Lambert
    # or sech term, n^(s+1) for the derivative series
    deg = max(b.s + (1 if b.kind == "lambert_derivative" else 0)
              for b, _ in slow)
    xs = [float(n) for n, _ in usable]
    ys = [float(d) + deg * math.log10(n + 1) for n, d in usable]
    n = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxx = sum(x * x for x in xs)
    sxy = sum(x * y for x, y in zip(xs, ys))
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx)
    return ConvergenceProfile(table.constant, table.method, tuple(points),
                              slope)
