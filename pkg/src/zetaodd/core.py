"""Exact arithmetic primitives and arbitrary-precision plumbing.

Everything downstream (series evaluation, identity checks, coefficient
generation) builds on three layers kept deliberately separate:

* an immutable :class:`PrecisionContext` that fixes target/guard decimal
  digits and scopes all mpmath work via ``workdps``;
* exact rings: Gaussian rationals Q(i), real quadratic surds
  (a + b*sqrt(m)) * 2**(e/2) for m in {3, 7, 15}, and the biquadratic
  field Q(sqrt(7), sqrt(15));
* exact Bernoulli numbers and exact values of cos/sin at integer
  multiples of acot(sqrt(m)).

Floating point never enters a coefficient computation; ``eval_exact``
is the single bridge from the exact world into mpmath.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath import mp, mpf

SUPPORTED_SURD_BASES = (3, 7, 15)

RationalLike = Union[int, Fraction]


class DomainError(ValueError):
    """Arguments lie outside a formula's domain of validity."""


class ConvergenceError(RuntimeError):
    """A series could not reach the requested accuracy under the term cap."""


# ---------------------------------------------------------------------------
# precision context
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrecisionContext:
    """Target precision plus guard digits; all mpmath work happens inside
    ``with ctx.workdps():`` so the global mp state is never mutated."""

    target_digits: int
    guard_digits: int

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    def workdps(self):
        return mp.workdps(self.working_digits)


def make_context(target_digits: int) -> PrecisionContext:
    """Create a context with guard = max(20, ceil(target/10))."""
    if target_digits < 1:
        raise ValueError(f"target_digits must be >= 1, got {target_digits}")
    guard = max(20, math.ceil(target_digits / 10))
    return PrecisionContext(target_digits=target_digits, guard_digits=guard)


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------

_BERNOULLI_CACHE: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (convention B_1 = -1/2).

    Classical recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0; cached, so the
    amortized cost over a session is one triangular pass.
    """
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    while len(_BERNOULLI_CACHE) <= n:
        m = len(_BERNOULLI_CACHE)
        acc = Fraction(0)
        for j, bj in enumerate(_BERNOULLI_CACHE):
            acc += math.comb(m + 1, j) * bj
        _BERNOULLI_CACHE.append(-acc / (m + 1))
    return _BERNOULLI_CACHE[n]


# ---------------------------------------------------------------------------
# Gaussian rationals
# ---------------------------------------------------------------------------


class GaussianRational:
    """An element a + b*i of Q(i) with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("GaussianRational is immutable")

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Field norm a^2 + b^2 (a rational, zero iff self is zero)."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int) -> "GaussianRational":
        return gaussian_pow(self, n)

    # -- predicates, hashing, display --------------------------------------

    def is_rational(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        other = _as_gaussian(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return f"({self.re})+({self.im})*i"


def _as_gaussian(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x, 0)
    return NotImplemented


def gaussian_pow(z: GaussianRational, n: int) -> GaussianRational:
    """z**n for integer n (negative powers via exact inversion)."""
    if not isinstance(z, GaussianRational):
        z = _as_gaussian(z)
        if z is NotImplemented:
            raise TypeError("gaussian_pow expects a GaussianRational")
    if n < 0:
        return gaussian_pow(z.inverse(), -n)
    result = GaussianRational(1, 0)
    base = z
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


GAUSSIAN_ONE_PLUS_I = GaussianRational(1, 1)


# ---------------------------------------------------------------------------
# quadratic surds  (a + b*sqrt(m)) * 2**(e/2)
# ---------------------------------------------------------------------------


class QuadraticSurd:
    """Exact element (a + b*sqrt(m)) * 2**(e/2) with a, b in Q, e in {0, 1}.

    The sqrt(2) half-power slot exists only because acot(sqrt(7)) has
    |sqrt(7)+i| = sqrt(8): odd multiples of that angle pick up a sqrt(2)
    which always cancels again inside any published coefficient.  m is one
    of 3, 7, 15.  Addition requires matching (m, e); multiplication folds
    2**(1/2) * 2**(1/2) back into the rational part.
    """

    __slots__ = ("a", "b", "m", "e")

    def __init__(self, a: RationalLike, b: RationalLike = 0, m: int = 3, e: int = 0):
        if m not in SUPPORTED_SURD_BASES:
            raise ValueError(f"unsupported surd base m={m}")
        if e not in (0, 1):
            raise ValueError(f"half-power slot e must be 0 or 1, got {e}")
        a = Fraction(a)
        b = Fraction(b)
        if b == 0 and e == 1:
            # (a)*sqrt(2) is fine too; keep e as given only when it matters.
            # A pure-rational value times sqrt(2) is irrational, keep e=1.
            pass
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "e", e)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticSurd is immutable")

    # -- helpers ------------------------------------------------------------

    def _compatible(self, other: "QuadraticSurd") -> int:
        """Common m for a binary op; rational operands adapt to either."""
        if self.b == 0:
            return other.m
        if other.b == 0:
            return self.m
        if self.m != other.m:
            raise ValueError(f"mixed surd bases sqrt({self.m}) and sqrt({other.m})")
        return self.m

    def is_rational(self) -> bool:
        return self.b == 0 and (self.e == 0 or self.a == 0)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.a if self.e == 0 else Fraction(0)

    # -- ring structure -----------------------------------------------------

    def __add__(self, other):
        other = _as_surd(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        m = self._compatible(other)
        if self.e != other.e:
            if self.a == 0 and self.b == 0:
                return other
            if other.a == 0 and other.b == 0:
                return self
            raise ValueError("cannot add surds with mismatched sqrt(2) factors")
        return QuadraticSurd(self.a + other.a, self.b + other.b, m, self.e)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_surd(other, self.m))

    def __rsub__(self, other):
        return _as_surd(other, self.m) + (-self)

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.m, self.e)

    def __mul__(self, other):
        other = _as_surd(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        m = self._compatible(other)
        a = self.a * other.a + self.b * other.b * m
        b = self.a * other.b + self.b * other.a
        e = self.e + other.e
        if e == 2:
            return QuadraticSurd(2 * a, 2 * b, m, 0)
        return QuadraticSurd(a, b, m, e)

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticSurd":
        n = self.a * self.a - self.b * self.b * self.m
        if n == 0:
            raise ZeroDivisionError("inverse of zero surd")
        inv = QuadraticSurd(self.a / n, -self.b / n, self.m, 0)
        if self.e == 0:
            return inv
        # 2**(-1/2) = 2**(1/2) / 2
        return QuadraticSurd(inv.a / 2, inv.b / 2, self.m, 1)

    def __truediv__(self, other):
        other = _as_surd(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_surd(other, self.m)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QuadraticSurd(other, 0, self.m, 0)
        if not isinstance(other, QuadraticSurd):
            return NotImplemented
        if self.b == 0 or other.b == 0 or self.m == other.m:
            sm = other.m if self.b == 0 else self.m
            sa, sb, se = self.a, self.b, self.e
            oa, ob, oe = other.a, other.b, other.e
            if (sa, sb) == (0, 0):
                se = oe
            if (oa, ob) == (0, 0):
                oe = se
            return (sa, sb, se) == (oa, ob, oe) or (
                (sa, sb) == (0, 0) and (oa, ob) == (0, 0)
            )
        return NotImplemented

    def __hash__(self):
        if (self.a, self.b) == (0, 0):
            return hash(Fraction(0))
        if self.b == 0 and self.e == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.m, self.e))

    def __repr__(self):
        return f"QuadraticSurd({self.a!r}, {self.b!r}, m={self.m}, e={self.e})"

    def __str__(self):
        s = f"({self.a})+({self.b})*sqrt({self.m})"
        if self.e:
            s = f"({s})*sqrt(2)"
        return s


def _as_surd(x, m: int):
    if isinstance(x, QuadraticSurd):
        return x
    if isinstance(x, (int, Fraction)):
        return QuadraticSurd(x, 0, m, 0)
    return NotImplemented


def two_pow_half(h2: int, m: int = 3) -> QuadraticSurd:
    """Exact 2**(h2/2) as a QuadraticSurd (h2 any integer, may be odd)."""
    q, r = divmod(h2, 2)
    return QuadraticSurd(Fraction(2) ** q, 0, m, r)


def surd_sqrt_m(m: int) -> QuadraticSurd:
    return QuadraticSurd(0, 1, m, 0)


# ---------------------------------------------------------------------------
# biquadratic surds over Q(sqrt(7), sqrt(15))
# ---------------------------------------------------------------------------


class BiquadraticSurd:
    """a + b*sqrt(7) + c*sqrt(15) + d*sqrt(105), exact over Q.

    Needed only when a sqrt(7)-family table and a sqrt(15)-family table
    are combined: dividing by (p*sqrt(7) - q*sqrt(15)) rationalizes through
    the three conjugates, which is where sqrt(105) enters.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "c", Fraction(c))
        object.__setattr__(self, "d", Fraction(d))

    def __setattr__(self, name, value):
        raise AttributeError("BiquadraticSurd is immutable")

    @classmethod
    def from_surd(cls, s: QuadraticSurd) -> "BiquadraticSurd":
        if s.e != 0:
            raise ValueError("sqrt(2) factors do not embed in Q(sqrt7, sqrt15)")
        if s.b == 0:
            return cls(s.a)
        if s.m == 7:
            return cls(s.a, s.b)
        if s.m == 15:
            return cls(s.a, 0, s.b)
        raise ValueError(f"sqrt({s.m}) does not embed in Q(sqrt7, sqrt15)")

    def components(self):
        return (self.a, self.b, self.c, self.d)

    def __add__(self, other):
        other = _as_biquad(other)
        if other is NotImplemented:
            return NotImplemented
        return BiquadraticSurd(
            self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d
        )

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_biquad(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _as_biquad(other) + (-self)

    def __neg__(self):
        return BiquadraticSurd(-self.a, -self.b, -self.c, -self.d)

    def __mul__(self, other):
        other = _as_biquad(other)
        if other is NotImplemented:
            return NotImplemented
        a1, b1, c1, d1 = self.components()
        a2, b2, c2, d2 = other.components()
        # sqrt7*sqrt15 = sqrt105, sqrt7*sqrt105 = 7*sqrt15,
        # sqrt15*sqrt105 = 15*sqrt7, sqrt105^2 = 105
        return BiquadraticSurd(
            a1 * a2 + 7 * b1 * b2 + 15 * c1 * c2 + 105 * d1 * d2,
            a1 * b2 + b1 * a2 + 15 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 7 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def _conj(self, flip7: bool, flip15: bool) -> "BiquadraticSurd":
        s7 = -1 if flip7 else 1
        s15 = -1 if flip15 else 1
        return BiquadraticSurd(self.a, s7 * self.b, s15 * self.c, s7 * s15 * self.d)

    def inverse(self) -> "BiquadraticSurd":
        c1 = self._conj(True, False)
        c2 = self._conj(False, True)
        c3 = self._conj(True, True)
        prod = c1 * c2 * c3
        n = (self * prod).a  # rational norm
        if n == 0:
            raise ZeroDivisionError("inverse of zero biquadratic surd")
        return BiquadraticSurd(prod.a / n, prod.b / n, prod.c / n, prod.d / n)

    def __truediv__(self, other):
        other = _as_biquad(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_biquad(other) * self.inverse()

    def __eq__(self, other):
        other = _as_biquad(other)
        if other is NotImplemented:
            return NotImplemented
        return self.components() == other.components()

    def __hash__(self):
        return hash(self.components())

    def __repr__(self):
        return f"BiquadraticSurd{self.components()!r}"

    def __str__(self):
        return (
            f"({self.a})+({self.b})*sqrt(7)+({self.c})*sqrt(15)+({self.d})*sqrt(105)"
        )


def _as_biquad(x):
    if isinstance(x, BiquadraticSurd):
        return x
    if isinstance(x, (int, Fraction)):
        return BiquadraticSurd(x)
    if isinstance(x, QuadraticSurd):
        return BiquadraticSurd.from_surd(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# exact trig at theta = acot(sqrt(m))
# ---------------------------------------------------------------------------


def surd_trig(m: int, multiple: int, kind: str) -> QuadraticSurd:
    """Exact cos or sin of multiple*theta where theta = acot(sqrt(m)).

    Powers of u = sqrt(m) + i stay in Z[sqrt(m), i]; dividing the real or
    imaginary part of u**j by |u|**j = (m+1)**(j/2) gives the value.  For
    m = 3, 15 the modulus is a power of 2; for m = 7 odd j leaves a single
    sqrt(2), carried in the surd's half-power slot.
    """
    if m not in SUPPORTED_SURD_BASES:
        raise ValueError(f"unsupported surd base m={m}")
    if kind not in ("cos", "sin"):
        raise ValueError(f"kind must be 'cos' or 'sin', got {kind!r}")
    j = multiple
    neg_sin = False
    if j < 0:
        j = -j
        neg_sin = kind == "sin"

    # u**j = (ra + rb*sqrt(m)) + (ia + ib*sqrt(m)) * i, integer components
    ra, rb, ia, ib = 1, 0, 0, 0
    for _ in range(j):
        ra, rb, ia, ib = rb * m - ia, ra - ib, ra + ib * m, ia + rb

    x, y = (ra, rb) if kind == "cos" else (ia, ib)
    root = math.isqrt(m + 1)
    if root * root == m + 1:
        den = Fraction(root) ** j
        out = QuadraticSurd(Fraction(x) / den, Fraction(y) / den, m, 0)
    elif j % 2 == 0:
        den = Fraction(m + 1) ** (j // 2)
        out = QuadraticSurd(Fraction(x) / den, Fraction(y) / den, m, 0)
    else:
        # (m+1)**(j/2) = 2**((3j-1)/2) * sqrt(2) when m = 7; multiply
        # numerator and denominator by sqrt(2) to land in the e = 1 slot.
        den = Fraction(2) ** ((3 * j + 1) // 2)
        out = QuadraticSurd(Fraction(x) / den, Fraction(y) / den, m, 1)
    return -out if neg_sin else out


# ---------------------------------------------------------------------------
# bridge to mpmath
# ---------------------------------------------------------------------------


def eval_exact(x, ctx: PrecisionContext):
    """Evaluate an exact scalar (int/Fraction/Gaussian/surd) as mpf or mpc
    at the context's working precision."""
    with ctx.workdps():
        if isinstance(x, (int, Fraction)):
            return mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpf(x)
        if isinstance(x, GaussianRational):
            return mp.mpc(eval_exact(x.re, ctx), eval_exact(x.im, ctx))
        if isinstance(x, QuadraticSurd):
            v = eval_exact(x.a, ctx) + eval_exact(x.b, ctx) * mp.sqrt(x.m)
            if x.e:
                v *= mp.sqrt(2)
            return v
        if isinstance(x, BiquadraticSurd):
            return (
                eval_exact(x.a, ctx)
                + eval_exact(x.b, ctx) * mp.sqrt(7)
                + eval_exact(x.c, ctx) * mp.sqrt(15)
                + eval_exact(x.d, ctx) * mp.sqrt(105)
            )
    raise TypeError(f"cannot evaluate {type(x).__name__} exactly")


def truncate_digits(value, digits: int) -> str:
    """Decimal string with `digits` significant digits, truncated toward zero.

    The caller is responsible for having computed `value` with enough guard
    digits that truncation of the approximation equals truncation of the
    true value.
    """
    if digits < 1:
        raise ValueError("digits must be >= 1")
    v = mpf(value) if not isinstance(value, mpf) else value
    if v == 0:
        return "0." + "0" * (digits - 1) if digits > 1 else "0"
    sign = "-" if v < 0 else ""
    with mp.workdps(max(mp.dps, digits + 25)):
        a = abs(v)
        e = int(mp.floor(mp.log10(a)))
        # log10 can land a hair off at exact powers of ten; fix up.
        ten = mpf(10)
        while a < ten**e:
            e -= 1
        while a >= ten ** (e + 1):
            e += 1
        mant = int(mp.floor(a * ten ** (digits - 1 - e)))
    if mant >= 10**digits:  # floor ran into the next decade
        mant //= 10
        e += 1
    if mant < 10 ** (digits - 1):  # value sat on a power of ten, floor dipped
        mant = 10 ** (digits - 1)
    s = str(mant)
    if 0 <= e < digits:
        ipart, fpart = s[: e + 1], s[e + 1 :]
        return sign + ipart + ("." + fpart if fpart else "")
    if -5 < e < 0:
        return sign + "0." + "0" * (-e - 1) + s
    exp = f"e{'+' if e >= 0 else '-'}{abs(e)}"
    return sign + s[0] + ("." + s[1:] if digits > 1 else "") + exp
