"""Lambert series and friends: certified truncation, symbolic nomes.

The central object is L_q(s) = sum_{n>=1} n^s q^n / (1 - q^n), evaluated
for |q| < 1 with an explicit tail bound so every value this package emits
carries a certificate.  The sech series S_q(s) and the q-derivative of
L_q(s) get the same treatment.

q arguments are either raw numbers (identity checks at complex points) or
:class:`QSymbolic` nomes of the shape sign * exp(-r*pi) with r drawn from
the closed set the published formulas generate; the symbolic form is what
keeps serialized coefficient tables exact.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .core import ConvergenceError, DomainError, PrecisionContext

DEFAULT_TERM_CAP = 10**6
TERM_CAP_ENV = "ZETA_ODD_MAX_TERMS"

# decay rates r = mult * sqrt(root) that the published tables and their
# negative-q rewrites can produce
_ALLOWED_RATIONAL_MULT = frozenset({1, 2, 3, 4, 5, 6, 10, 12, 20})
_ALLOWED_ROOT_MULT = frozenset({1, 2, 4})
_QSYM_RE = re.compile(
    r"^(?P<neg>-)?exp\(-(?:(?P<mult>\d+)\*)?(?:sqrt\((?P<root>\d+)\)\*)?pi\)$"
)


def term_cap() -> int:
    """Series term cap; override with the ZETA_ODD_MAX_TERMS env var."""
    raw = os.environ.get(TERM_CAP_ENV)
    if raw is None:
        return DEFAULT_TERM_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{TERM_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"{TERM_CAP_ENV} must be >= 1, got {cap}")
    return cap


@dataclass(frozen=True)
class QSymbolic:
    """Exact nome sign * exp(-mult * sqrt(root) * pi), root in {1, 3, 7, 15}.

    Only decay rates reachable from the published formulas (including
    their square/fourth-power images under the negative-q rewrite) are
    accepted, so a table can never silently acquire a nome the series
    layer has no story for.
    """

    sign: int
    mult: int
    root: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +-1, got {self.sign}")
        if self.root == 1:
            allowed = _ALLOWED_RATIONAL_MULT
        elif self.root in (3, 7, 15):
            allowed = _ALLOWED_ROOT_MULT
        else:
            raise ValueError(f"unsupported root {self.root}")
        if self.mult not in allowed:
            raise ValueError(
                f"decay rate {self.mult}*sqrt({self.root}) outside the supported set"
            )

    # -- algebra used by the negative-q rewrite -----------------------------

    def magnitude(self) -> "QSymbolic":
        return QSymbolic(1, self.mult, self.root)

    def squared(self) -> "QSymbolic":
        """|q|^2 as a symbolic nome (always positive)."""
        return QSymbolic(1, 2 * self.mult, self.root)

    def decay_key(self) -> int:
        """mult^2 * root; orders nomes by decay (|q| descending <=> key ascending)."""
        return self.mult * self.mult * self.root

    # -- numerics ------------------------------------------------------------

    def value(self, ctx: PrecisionContext) -> mpf:
        with ctx.workdps():
            r = mpf(self.mult)
            if self.root != 1:
                r *= mp.sqrt(self.root)
            v = mp.exp(-r * mp.pi)
            return v if self.sign > 0 else -v

    # -- serialization ---------------------------------------------------

    def __str__(self) -> str:
        factors = []
        if self.mult != 1:
            factors.append(str(self.mult))
        if self.root != 1:
            factors.append(f"sqrt({self.root})")
        factors.append("pi")
        body = "*".join(factors)
        prefix = "-" if self.sign < 0 else ""
        return f"{prefix}exp(-{body})"

    @classmethod
    def parse(cls, text: str) -> "QSymbolic":
        m = _QSYM_RE.match(text.strip())
        if not m:
            raise ValueError(f"cannot parse nome {text!r}")
        return cls(
            sign=-1 if m.group("neg") else 1,
            mult=int(m.group("mult") or 1),
            root=int(m.group("root") or 1),
        )


@dataclass(frozen=True)
class SeriesResult:
    value: object  # mpf or mpc
    terms_used: int
    tail_bound: mpf
    precision_used: int


def _num(x):
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mp.mpmathify(x)


def _to_mp(q, ctx: PrecisionContext):
    if isinstance(q, QSymbolic):
        return q.value(ctx)
    return _num(q)


def _check_nome(qv):
    if abs(qv) >= 1:
        raise DomainError(f"|q| must be < 1, got |q| = {mp.nstr(abs(qv), 8)}")


def _pow_ns(n: int, s):
    """n**s, principal branch for complex s (log n real since n >= 1)."""
    if isinstance(s, int):
        return mp.power(n, s)
    return mp.exp(s * mp.log(mpf(n)))


def _positive_target(target_abs_error):
    target = _num(target_abs_error)
    if target <= 0:
        raise ValueError("target_abs_error must be positive")
    return target


def lambert_partial_sum(q, s, n_terms: int, ctx: PrecisionContext):
    """Partial sum sum_{n=1..N} n^s q^n/(1-q^n) at working precision."""
    if n_terms < 1:
        raise ValueError(f"n_terms must be >= 1, got {n_terms}")
    with ctx.workdps():
        qv = _to_mp(q, ctx)
        _check_nome(qv)
        if qv == 0:
            return mpf(0)
        acc = mp.mpc(0) if isinstance(qv, mp.mpc) else mpf(0)
        qn = mp.mpmathify(1)
        for n in range(1, n_terms + 1):
            qn = qn * qv
            acc += _pow_ns(n, s) * qn / (1 - qn)
        return acc


def tail_bound(q_abs, s, n_terms: int, ctx: PrecisionContext | None = None) -> mpf:
    """|q|^(N+1)/(1-|q|)^2 bounds |sum_{n>N} n^s q^n/(1-q^n)| when Re(s) <= 0,
    since then |n^s| <= 1 and |1-q^n| >= 1-|q|; the geometric sum supplies
    the remaining 1/(1-|q|)."""
    if mp.re(_num(s)) > 0:
        raise DomainError("tail_bound is unsupported for Re(s) > 0; pass explicit N")
    if n_terms < 1:
        raise ValueError(f"n_terms must be >= 1, got {n_terms}")
    with mp.workdps(ctx.working_digits if ctx else mp.dps):
        qa = abs(_to_mp(q_abs, ctx) if ctx else _num(q_abs))
        if qa >= 1:
            raise DomainError(f"need |q| < 1, got {mp.nstr(qa, 8)}")
        if qa == 0:
            return mpf(0)
        return qa ** (n_terms + 1) / (1 - qa) ** 2


def _cap_error(what: str, target) -> ConvergenceError:
    return ConvergenceError(
        f"{what}: tail bound did not reach {mp.nstr(_num(target), 6)} within "
        f"{term_cap()} terms (set {TERM_CAP_ENV} to raise the cap)"
    )


def lambert_eval(q, s, target_abs_error, ctx: PrecisionContext) -> SeriesResult:
    """L_q(s) summed to the smallest N whose certified tail beats the target."""
    with ctx.workdps():
        qv = _to_mp(q, ctx)
        _check_nome(qv)
        if mp.re(_num(s)) > 0:
            raise DomainError("lambert_eval requires Re(s) <= 0")
        target = _positive_target(target_abs_error)
        if qv == 0:
            return SeriesResult(mpf(0), 1, mpf(0), ctx.working_digits)
        qa = abs(qv)
        one_minus_sq = (1 - qa) ** 2
        cap = term_cap()
        n = 1
        qpow = qa * qa  # |q|^(n+1)
        while True:
            b = qpow / one_minus_sq
            if b < target:
                break
            n += 1
            if n > cap:
                raise _cap_error("lambert_eval", target)
            qpow *= qa
        value = lambert_partial_sum(qv, s, n, ctx)
        return SeriesResult(value, n, b, ctx.working_digits)


def lambert_derivative_eval(q, s, target_abs_error, ctx: PrecisionContext) -> SeriesResult:
    """dL_q(s)/dq = sum_{n>=1} n^(s+1) q^(n-1)/(1-q^n)^2, certified.

    For Re(s) <= -1 each |n^(s+1)| <= 1 and |1-q^n| >= 1-|q|, so the tail
    past N is at most |q|^N/(1-|q|)^3; the recorded bound keeps a harmless
    extra factor (1+N) for the n^(s+1) weights with s near -1.
    """
    with ctx.workdps():
        qv = _to_mp(q, ctx)
        _check_nome(qv)
        if mp.re(_num(s)) > -1:
            raise DomainError("lambert_derivative_eval requires Re(s) <= -1")
        target = _positive_target(target_abs_error)
        if qv == 0:
            return SeriesResult(mpf(1), 1, mpf(0), ctx.working_digits)
        qa = abs(qv)
        cube = (1 - qa) ** 3
        cap = term_cap()
        n = 1
        qpow = qa  # |q|^n
        while True:
            b = qpow * (1 + n) / cube
            if b < target:
                break
            n += 1
            if n > cap:
                raise _cap_error("lambert_derivative_eval", target)
            qpow *= qa
        acc = mp.mpc(0) if isinstance(qv, mp.mpc) else mpf(0)
        qprev = mp.mpmathify(1)  # q^(k-1)
        for k in range(1, n + 1):
            qk = qprev * qv
            acc += _pow_ns(k, s + 1) * qprev / (1 - qk) ** 2
            qprev = qk
        return SeriesResult(acc, n, b, ctx.working_digits)


def sech_series(q, s, target_abs_error, ctx: PrecisionContext) -> SeriesResult:
    """S_q(s) = sum_{n>=0} (-1)^(n+1) (2n+1)^s sech((n+1/2)|log q|), 0 < q < 1.

    Terms alternate and decrease in magnitude for s <= 0, so after summing
    n = 0..N-1 the remainder is at most the first omitted term; with
    sech(x) <= 2e^(-x) that is at most the recorded 2 q^(N+1/2)/(1-q^2).
    """
    with ctx.workdps():
        qv = _to_mp(q, ctx)
        if isinstance(qv, mp.mpc) or not 0 < qv < 1:
            raise DomainError("sech_series requires real q in (0, 1)")
        if mp.re(_num(s)) > 0:
            raise DomainError("sech_series requires Re(s) <= 0")
        target = _positive_target(target_abs_error)
        one_minus_q2 = 1 - qv * qv
        cap = term_cap()
        n_terms = 1
        qpow = qv * mp.sqrt(qv)  # q^(n+1/2) for n = terms summed
        while True:
            b = 2 * qpow / one_minus_q2
            if b < target:
                break
            n_terms += 1
            if n_terms > cap:
                raise _cap_error("sech_series", target)
            qpow *= qv
        log_q_abs = -mp.log(qv)
        acc = mpf(0)
        for n in range(n_terms):
            term = _pow_ns(2 * n + 1, s) * mp.sech((n + mpf(1) / 2) * log_q_abs)
            acc += term if (n % 2 == 1) else -term
        return SeriesResult(acc, n_terms, b, ctx.working_digits)


def divisor_sigma(s: int, n: int) -> Fraction:
    """Exact sigma_s(n) = sum of s-th powers of divisors of n."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    total = Fraction(0)
    for d in range(1, int(n**0.5) + 1):
        if n % d == 0:
            total += Fraction(d) ** s
            e = n // d
            if e != d:
                total += Fraction(e) ** s
    return total


def lambert_q_expansion(s: int, order: int) -> list[Fraction]:
    """First `order` q-expansion coefficients of L_q(s): [sigma_s(1), ...]."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    return [divisor_sigma(s, m) for m in range(1, order + 1)]
