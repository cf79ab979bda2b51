"""Numerical verification of the transformation identities.

Each check evaluates both sides of an identity at working precision with
certified series tails and reports a :class:`Residual`.  The multisection
check is different in kind: it compares exact rational q-expansion
coefficients and returns a Fraction (expected: zero).

The zeta-free two-parameter family (``check_zeta_free``) is implemented
with the Bernoulli-sum sign (-1)^j in *both* cases; the alternative sign
in case 1 fails numerically for every (k, a, t) tried, while (-1)^j
reproduces zero residual and the published specializations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .core import DomainError, PrecisionContext, bernoulli
from .oracles import oracle_zeta
from .series import divisor_sigma, lambert_eval, sech_series

_MULTISECTION_PRIMES = (2, 3, 5, 7)


@dataclass(frozen=True)
class Residual:
    abs_residual: mpf
    scale: mpf
    rel_residual: mpf
    terms_used: int
    precision_used: int


class _Evaluator:
    """Tracks the largest series truncation across one identity check."""

    def __init__(self, ctx: PrecisionContext):
        self.ctx = ctx
        self.max_terms = 0
        with ctx.workdps():
            self.target = mpf(10) ** (-(ctx.target_digits + 5))

    def lambert(self, q, s):
        r = lambert_eval(q, s, self.target, self.ctx)
        self.max_terms = max(self.max_terms, r.terms_used)
        return r.value

    def sech(self, q, s):
        r = sech_series(q, s, self.target, self.ctx)
        self.max_terms = max(self.max_terms, r.terms_used)
        return r.value

    def residual(self, lhs, rhs) -> Residual:
        with self.ctx.workdps():
            ab = abs(lhs - rhs)
            scale = max(abs(lhs), abs(rhs), mpf(1))
            return Residual(ab, scale, ab / scale, self.max_terms,
                            self.ctx.working_digits)


def _to_t(t):
    tv = mp.mpmathify(t)
    if mp.re(tv) <= 0:
        raise DomainError(f"need Re(t) > 0, got t = {tv}")
    return tv


def _bern_weight(j: int, total: int) -> Fraction:
    """B_2j * B_(total-2j) / ((2j)! (total-2j)!) as an exact Fraction."""
    return (
        bernoulli(2 * j)
        * bernoulli(total - 2 * j)
        / (math.factorial(2 * j) * math.factorial(total - 2 * j))
    )


def check_t1_case1(t, ctx: PrecisionContext) -> Residual:
    """L_{e^(-2 pi t)}(-1) - L_{e^(-2 pi/t)}(-1) = log(t)/2 - (pi/6) sinh(log t).

    This is the eta-function transformation in Lambert-series clothing.
    """
    ev = _Evaluator(ctx)
    with ctx.workdps():
        tv = _to_t(t)
        q1 = mp.exp(-2 * mp.pi * tv)
        q2 = mp.exp(-2 * mp.pi / tv)
        lhs = ev.lambert(q1, -1) - ev.lambert(q2, -1)
        lt = mp.log(tv)
        rhs = lt / 2 - mp.pi / 6 * mp.sinh(lt)
    return ev.residual(lhs, rhs)


def check_t1_case2(k: int, t, ctx: PrecisionContext) -> Residual:
    """The s = -(4k-1) reflection: t^-(2k-1) L_{e^(-2 pi t)} + t^(2k-1) L_{e^(-2 pi/t)}
    against the Bernoulli block minus zeta(4k-1) cosh((2k-1) log t)."""
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    ev = _Evaluator(ctx)
    s = -4 * k + 1
    with ctx.workdps():
        tv = _to_t(t)
        lt = mp.log(tv)
        lhs = tv ** (-(2 * k - 1)) * ev.lambert(mp.exp(-2 * mp.pi * tv), s)
        lhs += tv ** (2 * k - 1) * ev.lambert(mp.exp(-2 * mp.pi / tv), s)
        acc = mp.mpmathify(0)
        for j in range(0, k + 1):
            w = _bern_weight(j, 4 * k) / (2 if j == k else 1)
            sign = -1 if (j % 2 == 0) else 1  # (-1)^(j+1)
            acc += sign * mpf(w.numerator) / w.denominator * mp.cosh((2 * k - 2 * j) * lt)
        rhs = (2 * mp.pi) ** (4 * k - 1) * acc
        rhs -= oracle_zeta(4 * k - 1, ctx) * mp.cosh((2 * k - 1) * lt)
    return ev.residual(lhs, rhs)


def check_t1_case3(k: int, t, ctx: PrecisionContext) -> Residual:
    """The s = -(4k+1) reflection: t^-2k L_{e^(-2 pi t)} - t^2k L_{e^(-2 pi/t)}
    against the Bernoulli block plus zeta(4k+1) sinh(2k log t)."""
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    ev = _Evaluator(ctx)
    s = -4 * k - 1
    with ctx.workdps():
        tv = _to_t(t)
        lt = mp.log(tv)
        lhs = tv ** (-2 * k) * ev.lambert(mp.exp(-2 * mp.pi * tv), s)
        lhs -= tv ** (2 * k) * ev.lambert(mp.exp(-2 * mp.pi / tv), s)
        acc = mp.mpmathify(0)
        for j in range(0, k + 1):
            w = _bern_weight(j, 4 * k + 2)
            sign = -1 if (j % 2 == 0) else 1  # (-1)^(j+1)
            acc += sign * mpf(w.numerator) / w.denominator * mp.sinh((2 * k + 1 - 2 * j) * lt)
        rhs = (2 * mp.pi) ** (4 * k + 1) * acc
        rhs += oracle_zeta(4 * k + 1, ctx) * mp.sinh(2 * k * lt)
    return ev.residual(lhs, rhs)


def check_multisection(p: int, s: int, order: int) -> Fraction:
    """Exact q-expansion check of the prime multisection

        sum_{n=0}^{p-1} L_{q^(1/p) w^n}(s) = (p^(s+1)+p) L_q(s) - p^(s+1) L_{q^p}(s)

    Comparing coefficients of q^l reduces to
    p sigma_s(lp) = (p^(s+1)+p) sigma_s(l) - p^(s+1) sigma_s(l/p); returns
    the largest absolute coefficient difference over l = 1..order (zero).
    """
    if p not in _MULTISECTION_PRIMES:
        raise DomainError(f"p must be one of {_MULTISECTION_PRIMES}, got {p}")
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    ps1 = Fraction(p) ** (s + 1)
    worst = Fraction(0)
    for el in range(1, order + 1):
        lhs = p * divisor_sigma(s, el * p)
        rhs = (ps1 + p) * divisor_sigma(s, el)
        if el % p == 0:
            rhs -= ps1 * divisor_sigma(s, el // p)
        worst = max(worst, abs(lhs - rhs))
    return worst


def check_lemma_p4(q, s, ctx: PrecisionContext) -> Residual:
    """L_{i sqrt(q)} + L_{-i sqrt(q)} against its L_q, L_{q^2}, L_{q^4} form."""
    ev = _Evaluator(ctx)
    with ctx.workdps():
        qv = mp.mpmathify(q)
        if not 0 < qv < 1:
            raise DomainError("check_lemma_p4 requires real q in (0, 1)")
        root = mp.sqrt(qv)
        lhs = ev.lambert(mp.mpc(0, root), s) + ev.lambert(mp.mpc(0, -root), s)
        p2 = mp.power(2, s + 1)
        p4 = mp.power(2, 2 * s + 2)
        rhs = (
            -(p2 + 2) * ev.lambert(qv, s)
            + (p4 + 3 * p2 + 4) * ev.lambert(qv * qv, s)
            - (p4 + 2 * p2) * ev.lambert(qv**4, s)
        )
    return ev.residual(lhs, rhs)


def check_lemma_sech(q, s, ctx: PrecisionContext) -> Residual:
    """i [L_{i sqrt(q)} - L_{-i sqrt(q)}] against the sech series S_q(s)."""
    ev = _Evaluator(ctx)
    with ctx.workdps():
        qv = mp.mpmathify(q)
        if not 0 < qv < 1:
            raise DomainError("check_lemma_sech requires real q in (0, 1)")
        root = mp.sqrt(qv)
        lhs = mp.mpc(0, 1) * (
            ev.lambert(mp.mpc(0, root), s) - ev.lambert(mp.mpc(0, -root), s)
        )
        rhs = ev.sech(qv, s)
    return ev.residual(lhs, rhs)


def check_zeta_free(case: int, k: int, a, t, ctx: PrecisionContext) -> Residual:
    """Two-parameter zeta-free identity for L at s = -(4k+1) (case 1, k >= 0)
    or s = -(4k-1) (case 2, k >= 1), rational a > 0, Re(t) > 0.

    Case 1:  t^-2k [a^2k L_{e^(-2 pi t/a)} - (a^2k + a^-2k) L_{e^(-2 pi t)}
             + a^-2k L_{e^(-2 pi a t)}]  minus the mirrored t -> 1/t block
             equals (2 pi)^(4k+1) sum_j (-1)^j b_jk(a) W_j sinh((2k+1-2j) log t)
             with b_jk(a) = a^2k + a^-2k - a^(2k+1-2j) - a^-(2k+1-2j).
    Case 2:  same shape with exponents 2k-1, a plus between the blocks,
             cosh weights, and c_jk(a) = (a^(2k-1) + a^(1-2k) - a^(2k-2j)
             - a^(2j-2k))/(1 + delta_jk).
    """
    if case not in (1, 2):
        raise DomainError(f"case must be 1 or 2, got {case}")
    if case == 1 and k < 0:
        raise DomainError(f"case 1 needs k >= 0, got {k}")
    if case == 2 and k < 1:
        raise DomainError(f"case 2 needs k >= 1, got {k}")
    af = Fraction(a)
    if af <= 0:
        raise DomainError(f"need rational a > 0, got {a}")
    ev = _Evaluator(ctx)
    with ctx.workdps():
        tv = _to_t(t)
        lt = mp.log(tv)
        av = mpf(af.numerator) / af.denominator
        m = 2 * k if case == 1 else 2 * k - 1
        am = av**m
        am_inv = 1 / am

        def block(u):
            # a^m L at e^(-2 pi u / a) - (a^m + a^-m) L at e^(-2 pi u)
            #   + a^-m L at e^(-2 pi a u)
            s = -(4 * k + 1) if case == 1 else -(4 * k - 1)
            return (
                am * ev.lambert(mp.exp(-2 * mp.pi * u / av), s)
                - (am + am_inv) * ev.lambert(mp.exp(-2 * mp.pi * u), s)
                + am_inv * ev.lambert(mp.exp(-2 * mp.pi * av * u), s)
            )

        if case == 1:
            lhs = tv ** (-m) * block(tv) - tv**m * block(1 / tv)
        else:
            lhs = tv ** (-m) * block(tv) + tv**m * block(1 / tv)

        total = 4 * k + 2 if case == 1 else 4 * k
        acc = mp.mpmathify(0)
        for j in range(0, k + 1):
            if case == 1:
                coeff = af**(2 * k) + af**(-2 * k) - af**(2 * k + 1 - 2 * j) \
                    - af**(-(2 * k + 1 - 2 * j))
                hyp = mp.sinh((2 * k + 1 - 2 * j) * lt)
            else:
                coeff = af**(2 * k - 1) + af**(1 - 2 * k) - af**(2 * k - 2 * j) \
                    - af**(2 * j - 2 * k)
                coeff /= 2 if j == k else 1
                hyp = mp.cosh((2 * k - 2 * j) * lt)
            w = _bern_weight(j, total) * coeff
            sign = 1 if (j % 2 == 0) else -1  # (-1)^j
            acc += sign * mpf(w.numerator) / w.denominator * hyp
        rhs = (2 * mp.pi) ** (total - 1) * acc
    return ev.residual(lhs, rhs)
