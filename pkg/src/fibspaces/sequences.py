"""Fibonacci numbers, weight-sequence families, and finite sequence windows.

Indexing convention for Fibonacci numbers throughout the package:
f(0) = f(1) = 1, f(n) = f(n-1) + f(n-2).  Weight sequences lambda are
strictly increasing positive rationals tending to infinity, and every
accessor honours lambda(-1) = 0 so callers never special-case the first
row of a triangle.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .errors import (
    DivergentTail,
    DomainError,
    NonPositiveStart,
    NotStrictlyIncreasing,
    ParseError,
)
from .exactreal import CertifiedReal, parse_rational

_VALIDATION_WINDOW = 64


class FibCache:
    """Memoized arbitrary-precision Fibonacci numbers.

    Concurrent readers are safe; extension is serialized by a lock.
    """

    __slots__ = ("_values", "_lock")

    def __init__(self):
        self._values = [1, 1]
        self._lock = threading.Lock()

    def __call__(self, n: int) -> int:
        if n < 0:
            raise DomainError(f"Fibonacci index must be >= 0, got {n}")
        values = self._values
        if n < len(values):
            return values[n]
        with self._lock:
            while len(self._values) <= n:
                self._values.append(self._values[-1] + self._values[-2])
        return self._values[n]


fib = FibCache()


def fib_sq(n: int) -> Fraction:
    v = fib(n)
    return Fraction(v * v)


# ---------------------------------------------------------------------------
# Weight sequences


class LambdaSeq:
    """Oracle for a strictly increasing positive sequence tending to infinity.

    Instances carry their provenance (family name plus parameters) so any
    prefix can be regenerated and reports stay reproducible.  Index -1 is
    always 0.
    """

    def __init__(
        self,
        family: str,
        params: tuple,
        fn: Callable[[int], Fraction],
        *,
        reciprocal_summable: bool,
        validate: bool = True,
    ):
        self.family = family
        self.params = params
        self._fn = fn
        self.reciprocal_summable = reciprocal_summable
        if validate:
            self._validate_prefix(_VALIDATION_WINDOW)

    def _validate_prefix(self, n: int):
        prev = self.value(0)
        if prev <= 0:
            raise NonPositiveStart(f"lambda_0 = {prev} must be positive")
        for i in range(1, n):
            cur = self._fn(i)
            if cur <= prev:
                raise NotStrictlyIncreasing(
                    f"lambda_{i} = {cur} does not exceed lambda_{i-1} = {prev}"
                )
            prev = cur

    def value(self, n: int) -> Fraction:
        if n == -1:
            return Fraction(0)
        if n < -1:
            raise DomainError(f"lambda index must be >= -1, got {n}")
        return self._fn(n)

    def gap(self, n: int) -> Fraction:
        """lambda_n - lambda_{n-1}, with the lambda_{-1} = 0 convention."""
        return self.value(n) - self.value(n - 1)

    def reciprocal_tail_bound(self, after: int) -> Fraction:
        """Certified upper bound of sum_{n > after} 1/lambda_n.

        Only families with a closed-form geometric tail support this.
        """
        if self.family != "geometric":
            raise DivergentTail(
                f"no certified reciprocal tail for family {self.family!r}"
            )
        r, c = self.params
        # sum_{n > N} 1/(c r^n) = r**-(N+1) / (c (1 - 1/r))
        return Fraction(1) / (c * r ** (after + 1) * (1 - Fraction(1) / r))

    def describe(self) -> str:
        return f"{self.family}:{','.join(str(p) for p in self.params)}"

    def __repr__(self):
        return f"LambdaSeq({self.describe()})"

    # -- families

    @classmethod
    def linear(cls, a, b) -> "LambdaSeq":
        a, b = Fraction(a), Fraction(b)
        if a <= 0:
            raise NotStrictlyIncreasing(f"linear slope must be positive, got {a}")
        if b <= 0:
            raise NonPositiveStart(f"linear offset must be positive, got {b}")
        return cls(
            "linear", (a, b), lambda n: a * n + b,
            reciprocal_summable=False, validate=False,
        )

    @classmethod
    def geometric(cls, r, c) -> "LambdaSeq":
        r, c = Fraction(r), Fraction(c)
        if c <= 0:
            raise NonPositiveStart(f"geometric scale must be positive, got {c}")
        if r <= 1:
            raise NotStrictlyIncreasing(f"geometric ratio must exceed 1, got {r}")
        return cls(
            "geometric", (r, c), lambda n: c * r**n,
            reciprocal_summable=True, validate=False,
        )

    @classmethod
    def explicit(cls, values: Sequence, tail: str = "arithmetic") -> "LambdaSeq":
        """Explicit prefix; past the prefix the last gap repeats (tail rule)."""
        vals = tuple(Fraction(v) for v in values)
        if len(vals) < 2:
            raise ParseError("explicit lambda needs at least two values")
        if tail != "arithmetic":
            raise ParseError(f"unknown tail rule {tail!r}")
        last_gap = vals[-1] - vals[-2]

        def fn(n: int) -> Fraction:
            if n < len(vals):
                return vals[n]
            return vals[-1] + last_gap * (n - len(vals) + 1)

        return cls("explicit", vals, fn, reciprocal_summable=False)

    @classmethod
    def custom(cls, fn: Callable[[int], Fraction], name: str = "custom") -> "LambdaSeq":
        return cls(name, (), lambda n: Fraction(fn(n)), reciprocal_summable=False)

    @classmethod
    def from_spec(cls, spec: str) -> "LambdaSeq":
        """Parse "linear:a,b" | "geometric:r,c" | "file:<path>"."""
        spec = spec.strip()
        if ":" not in spec:
            raise ParseError(f"bad lambda spec {spec!r}")
        kind, _, rest = spec.partition(":")
        if kind == "file":
            with open(rest) as fh:
                values = [parse_rational(line) for line in fh if line.strip()]
            return cls.explicit(values)
        try:
            params = [parse_rational(tok) for tok in rest.split(",")]
        except ParseError:
            raise
        if kind == "linear" and len(params) == 2:
            return cls.linear(*params)
        if kind == "geometric" and len(params) == 2:
            return cls.geometric(*params)
        raise ParseError(f"bad lambda spec {spec!r}")


# ---------------------------------------------------------------------------
# Finite windows and prefix generators


@dataclass(frozen=True)
class SeqWindow:
    """A finite prefix (x_0, ..., x_{N-1}) plus generator provenance."""

    values: tuple
    provenance: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) == 0:
            raise DomainError("empty sequence window")

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def at(self, i: int):
        """Entry accessor honouring the zero-for-negative-index convention."""
        if i < 0:
            return Fraction(0)
        return self.values[i]

    def is_exact(self) -> bool:
        return all(not isinstance(v, CertifiedReal) or v.is_exact for v in self.values)

    def with_provenance(self, **extra) -> "SeqWindow":
        prov = dict(self.provenance)
        prov.update(extra)
        return SeqWindow(self.values, prov)


@dataclass(frozen=True)
class PrefixGenerator:
    """A sequence given by its ability to produce any prefix.

    ``support`` bounds the nonzero entries when the sequence is finitely
    supported (entries vanish at indices >= support); None means unknown.
    ``image_support`` plays the same role for the sequence's image under
    the composed triangle, when the generator knows it.
    """

    name: str
    fn: Callable[[int], tuple]
    support: int | None = None
    image_support: int | None = None

    def prefix(self, n: int) -> SeqWindow:
        values = tuple(self.fn(n))
        if len(values) != n:
            raise DomainError(f"generator {self.name!r} returned wrong length")
        return SeqWindow(values, {"generator": self.name})


def zero_seq() -> PrefixGenerator:
    return PrefixGenerator("zero", lambda n: (Fraction(0),) * n, support=0)


def unit_seq(k: int) -> PrefixGenerator:
    if k < 0:
        raise DomainError("unit index must be >= 0")
    return PrefixGenerator(
        f"unit:{k}",
        lambda n: tuple(Fraction(1 if i == k else 0) for i in range(n)),
        support=k + 1,
    )


def ones_seq() -> PrefixGenerator:
    return PrefixGenerator("e", lambda n: (Fraction(1),) * n)


def from_values(values: Sequence, name: str = "values") -> PrefixGenerator:
    vals = tuple(Fraction(v) for v in values)
    support = len(vals)
    while support > 0 and vals[support - 1] == 0:
        support -= 1

    def fn(n: int) -> tuple:
        if n <= len(vals):
            return vals[:n]
        return vals + (Fraction(0),) * (n - len(vals))

    return PrefixGenerator(name, fn, support=support)


def inv_fib_pow(m: int) -> PrefixGenerator:
    """a_k = 1 / f(k+1) ** m; decays fast enough to tame f(j+1)^2 weights for m >= 3."""
    if m < 1:
        raise DomainError("power must be >= 1")
    return PrefixGenerator(
        f"inv-fib-pow:{m}",
        lambda n: tuple(Fraction(1, fib(k + 1) ** m) for k in range(n)),
    )


def parse_generator_spec(spec: str) -> PrefixGenerator:
    """Parse "zero" | "e" | "unit:<k>" | "inv-fib-pow:<m>" | "values:a,b,..." | "file:<path>"."""
    spec = spec.strip()
    if spec == "zero":
        return zero_seq()
    if spec == "e":
        return ones_seq()
    kind, _, rest = spec.partition(":")
    if kind == "unit" and rest:
        return unit_seq(int(rest))
    if kind == "inv-fib-pow" and rest:
        return inv_fib_pow(int(rest))
    if kind == "values" and rest:
        return from_values([parse_rational(tok) for tok in rest.split(",")])
    if kind == "file" and rest:
        with open(rest) as fh:
            vals = [parse_rational(line) for line in fh if line.strip()]
        return from_values(vals, name=f"file:{rest}")
    raise ParseError(f"bad sequence spec {spec!r}")
