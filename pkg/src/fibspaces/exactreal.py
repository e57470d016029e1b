"""Exact scalars: rationals, conjugate exponents, and certified reals.

Everything in this package that can be a ``fractions.Fraction`` is one.
Floating behaviour enters in exactly one place: :class:`CertifiedReal`, a
rational approximation paired with a rigorous absolute error bound, used
whenever a quantity such as ``|x| ** (3/2)`` is irrational.  Error bounds
are themselves exact rationals and are propagated through every operation,
so a test can always ask "are these two quantities equal up to certified
error" instead of comparing against an arbitrary epsilon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    NegativeBaseError,
    ParseError,
    PrecisionExhausted,
)

DEFAULT_PRECISION = 256
MIN_PRECISION = 64

RationalLike = Union[int, Fraction]


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` or ``"int"`` (e.g. ``"21/2"``, ``"-7"``)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Exponents


@dataclass(frozen=True)
class Exponent:
    """An exponent p with p >= 1, either rational or infinite.

    ``value`` is None exactly when the exponent is infinite.
    """

    value: Fraction | None

    def __post_init__(self):
        if self.value is not None:
            object.__setattr__(self, "value", Fraction(self.value))
            if self.value < 1:
                raise ParseError(f"exponent must satisfy p >= 1, got {self.value}")

    @classmethod
    def of(cls, p: "Exponent | RationalLike | str") -> "Exponent":
        if isinstance(p, Exponent):
            return p
        if isinstance(p, str):
            return cls.parse(p)
        return cls(Fraction(p))

    @classmethod
    def infinity(cls) -> "Exponent":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "Exponent":
        text = text.strip().lower()
        if text in ("inf", "infinity", "oo"):
            return cls.infinity()
        return cls(parse_rational(text))

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def as_fraction(self) -> Fraction:
        if self.value is None:
            raise ParseError("infinite exponent has no rational value")
        return self.value

    def conjugate(self) -> "Exponent":
        if self.is_infinite:
            return Exponent(Fraction(1))
        p = self.value
        if p == 1:
            return Exponent.infinity()
        return Exponent(p / (p - 1))

    def __str__(self) -> str:
        return "inf" if self.is_infinite else format_rational(self.value)


P_ONE = Exponent(Fraction(1))
P_TWO = Exponent(Fraction(2))
P_INF = Exponent.infinity()


def conjugate(p: Exponent | RationalLike | str) -> Exponent:
    """The conjugate exponent q with 1/p + 1/q = 1 (1 <-> inf)."""
    return Exponent.of(p).conjugate()


# ---------------------------------------------------------------------------
# Certified reals


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected rational, got {type(x).__name__}")


@dataclass(frozen=True)
class CertifiedReal:
    """A rational value with a certified absolute error bound.

    The represented real r satisfies |r - value| <= err.  err == 0 means
    the value is exact.
    """

    value: Fraction
    err: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "err", Fraction(self.err))
        if self.err < 0:
            raise ValueError("error bound must be nonnegative")

    # -- constructors

    @classmethod
    def exact(cls, q: RationalLike) -> "CertifiedReal":
        return cls(Fraction(q), Fraction(0))

    @classmethod
    def from_interval(cls, lo: Fraction, hi: Fraction) -> "CertifiedReal":
        if hi < lo:
            raise ValueError("empty interval")
        mid = (lo + hi) / 2
        return cls(mid, hi - mid)

    @classmethod
    def wrap(cls, x) -> "CertifiedReal":
        if isinstance(x, CertifiedReal):
            return x
        return cls.exact(_as_fraction(x))

    @classmethod
    def max_of(cls, values) -> "CertifiedReal":
        """Enclosure of the maximum of finitely many certified values
        ([max of lows, max of highs]); exact when every input is."""
        values = [cls.wrap(v) for v in values]
        if not values:
            return cls.exact(0)
        return cls.from_interval(
            max(v.lo for v in values), max(v.hi for v in values)
        )

    # -- interval views

    @property
    def lo(self) -> Fraction:
        return self.value - self.err

    @property
    def hi(self) -> Fraction:
        return self.value + self.err

    @property
    def is_exact(self) -> bool:
        return self.err == 0

    # -- arithmetic

    def __add__(self, other) -> "CertifiedReal":
        o = CertifiedReal.wrap(other)
        return CertifiedReal(self.value + o.value, self.err + o.err)

    __radd__ = __add__

    def __neg__(self) -> "CertifiedReal":
        return CertifiedReal(-self.value, self.err)

    def __sub__(self, other) -> "CertifiedReal":
        return self + (-CertifiedReal.wrap(other))

    def __rsub__(self, other) -> "CertifiedReal":
        return CertifiedReal.wrap(other) + (-self)

    def __mul__(self, other) -> "CertifiedReal":
        o = CertifiedReal.wrap(other)
        err = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
        return CertifiedReal(self.value * o.value, err)

    __rmul__ = __mul__

    def divided_by(self, d: RationalLike) -> "CertifiedReal":
        d = _as_fraction(d)
        if d == 0:
            raise ZeroDivisionError("division by zero rational")
        return CertifiedReal(self.value / d, self.err / abs(d))

    def __abs__(self) -> "CertifiedReal":
        return CertifiedReal(abs(self.value), self.err)

    def square(self) -> "CertifiedReal":
        return self * self

    # -- certified comparisons

    def certainly_le(self, other) -> bool:
        o = CertifiedReal.wrap(other)
        return self.hi <= o.lo

    def certainly_lt(self, other) -> bool:
        o = CertifiedReal.wrap(other)
        return self.hi < o.lo

    def certainly_ge(self, other) -> bool:
        return CertifiedReal.wrap(other).certainly_le(self)

    def contains(self, q: RationalLike) -> bool:
        q = _as_fraction(q)
        return self.lo <= q <= self.hi

    def agrees_with(self, other) -> bool:
        """True when the two enclosures overlap (cannot be distinguished)."""
        o = CertifiedReal.wrap(other)
        return abs(self.value - o.value) <= self.err + o.err

    def distance_from(self, other) -> Fraction:
        """A certified lower bound on |self - other| (0 if they overlap)."""
        o = CertifiedReal.wrap(other)
        gap = abs(self.value - o.value) - (self.err + o.err)
        return gap if gap > 0 else Fraction(0)

    # -- rendering

    def decimal(self, digits: int = 24) -> str:
        scale = 10**digits
        num = self.value * scale
        rounded = Fraction(round(num), scale)
        sign = "-" if rounded < 0 else ""
        rounded = abs(rounded)
        whole, frac = divmod(rounded.numerator * scale // rounded.denominator, scale)
        return f"{sign}{whole}.{str(frac).zfill(digits)}"

    def __str__(self) -> str:
        if self.is_exact:
            return f"{format_rational(self.value)} (exact)"
        return f"{self.decimal()} ± {float(self.err):.3e}"

    def __float__(self) -> float:
        return float(self.value)


# ---------------------------------------------------------------------------
# Roots and rational powers


def integer_nth_root(n: int, b: int) -> int:
    """floor(n ** (1/b)) for n >= 0, b >= 1, computed exactly."""
    if n < 0:
        raise ValueError("negative radicand")
    if b < 1:
        raise ValueError("root index must be >= 1")
    if n == 0:
        return 0
    if b == 1:
        return n
    if b == 2:
        return math.isqrt(n)
    # Newton iteration from an over-estimate; monotone decreasing to the floor root.
    x = 1 << (-(-n.bit_length() // b))
    while True:
        y = ((b - 1) * x + n // x ** (b - 1)) // b
        if y >= x:
            return x
        x = y


def _root_interval(t: Fraction, b: int, precision: int) -> tuple[Fraction, Fraction]:
    """Enclosure [lo, hi] of t ** (1/b) for t >= 0, width <~ 3 * 2**-precision.

    Perfect b-th powers of rationals are detected and returned exactly.
    """
    if t < 0:
        raise NegativeBaseError("root of a negative rational")
    if t == 0:
        return Fraction(0), Fraction(0)
    num, den = t.numerator, t.denominator
    rn, rd = integer_nth_root(num, b), integer_nth_root(den, b)
    if rn**b == num and rd**b == den:
        r = Fraction(rn, rd)
        return r, r
    scale = 1 << precision
    big = (num * scale**b) // den
    lo = Fraction(integer_nth_root(big, b), scale)
    hi = Fraction(integer_nth_root(big + 1, b) + 1, scale)
    return lo, hi


def _rational_pow_interval(
    x: Fraction, p: Fraction, precision: int
) -> tuple[Fraction, Fraction]:
    a, b = p.numerator, p.denominator
    if b == 1:
        if x == 0 and a < 0:
            raise ZeroDivisionError("0 ** negative")
        v = x**a
        return v, v
    if x < 0:
        raise NegativeBaseError(f"({x}) ** ({p}) with non-integer exponent")
    if x == 0:
        if a < 0:
            raise ZeroDivisionError("0 ** negative")
        return Fraction(0), Fraction(0)
    return _root_interval(x**a, b, precision)


def rpow(x, p, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """|certified| x ** p for rational (or certified) x and rational p.

    Exact whenever the result is rational (integer p, or perfect roots);
    otherwise an enclosure of width about 2 ** -precision.
    """
    if precision < MIN_PRECISION:
        raise ParseError(f"precision must be >= {MIN_PRECISION} bits")
    if isinstance(p, Exponent):
        p = p.as_fraction()
    p = Fraction(p)
    if isinstance(x, CertifiedReal) and not x.is_exact:
        # Monotone on [lo, hi] once the sign of p is fixed and lo >= 0.
        lo_b, hi_b = x.lo, x.hi
        if p.denominator != 1 and lo_b < 0:
            raise NegativeBaseError("uncertain base may be negative")
        if p.denominator == 1 and lo_b < 0 <= hi_b and p.numerator % 2 == 0:
            ends = [Fraction(0), lo_b**p.numerator, hi_b**p.numerator]
            return CertifiedReal.from_interval(min(ends), max(ends))
        lo1, hi1 = _rational_pow_interval(lo_b, p, precision)
        lo2, hi2 = _rational_pow_interval(hi_b, p, precision)
        return CertifiedReal.from_interval(min(lo1, lo2), max(hi1, hi2))
    if isinstance(x, CertifiedReal):
        x = x.value
    lo, hi = _rational_pow_interval(Fraction(x), p, precision)
    return CertifiedReal.from_interval(lo, hi)


# ---------------------------------------------------------------------------
# Window norms


def window_norm(
    x: Sequence,
    p: Exponent | RationalLike | str,
    precision: int = DEFAULT_PRECISION,
    tol: Fraction | None = None,
) -> CertifiedReal:
    """The p-norm of a finite window.

    For p = inf the result is the exact maximum of |x_k| (error 0 when the
    entries are exact).  For finite p it is (sum |x_k|^p) ** (1/p) with a
    certified error bound; exact whenever every power and the final root
    are rational.
    """
    if len(x) == 0:
        raise ParseError("window_norm of an empty window")
    if precision < MIN_PRECISION:
        raise ParseError(f"precision must be >= {MIN_PRECISION} bits")
    p = Exponent.of(p)
    entries = [abs(CertifiedReal.wrap(v)) for v in x]

    if p.is_infinite:
        lo = max(e.lo for e in entries)
        hi = max(e.hi for e in entries)
        result = CertifiedReal.from_interval(lo, hi)
    else:
        pf = p.as_fraction()
        term_precision = precision + max(8, len(entries).bit_length() + 2)
        total = CertifiedReal.exact(0)
        for e in entries:
            total = total + rpow(e, pf, term_precision)
        result = rpow(total, 1 / pf, precision)

    if tol is not None and result.err > tol:
        raise PrecisionExhausted(
            f"certified bound {float(result.err):.3e} exceeds tolerance {float(tol):.3e}"
        )
    return result
