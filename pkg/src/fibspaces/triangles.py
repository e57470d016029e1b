"""Lower-triangular infinite matrices as exact entry oracles.

A :class:`Triangle` is defined by a closed-form entry function; entries are
lazily evaluated and memoized because the Fibonacci-squared factors reach
thousands of bits for deep rows.  Every windowed operation here is
prefix-exact: row n of a triangle only touches indices <= n, so there is no
truncation error anywhere.

The four named triangles:

* the lambda-averaging triangle with entries (lambda_k - lambda_{k-1}) / lambda_n,
* the Fibonacci-difference band matrix (diagonal f_n/f_{n+1}, subdiagonal
  -f_{n+1}/f_n),
* their composition E, and
* the closed-form inverse of E,

plus forward/inverse transforms between a sequence and its E-image, an
independent forward-substitution inverse, and the basis columns of the
inverse.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, ParseError, SingularDiagonal, WindowMismatch
from .exactreal import CertifiedReal, parse_rational
from .sequences import LambdaSeq, SeqWindow, fib, fib_sq

Entry = Callable[[int, int], Fraction]


class Triangle:
    """Infinite lower-triangular matrix backed by an entry oracle."""

    def __init__(self, fn: Entry, name: str = "triangle"):
        self._fn = fn
        self._memo: dict[tuple[int, int], Fraction] = {}
        self._lock = threading.Lock()
        self.name = name

    def entry(self, n: int, k: int) -> Fraction:
        if n < 0 or k < 0:
            raise DomainError("matrix indices must be >= 0")
        if k > n:
            return Fraction(0)
        key = (n, k)
        v = self._memo.get(key)
        if v is None:
            v = Fraction(self._fn(n, k))
            with self._lock:
                self._memo[key] = v
        return v

    def row(self, n: int) -> list[Fraction]:
        return [self.entry(n, k) for k in range(n + 1)]

    def window(self, size: int) -> "DenseWindow":
        return DenseWindow([self.row(n) for n in range(size)])

    def __repr__(self):
        return f"Triangle({self.name})"


@dataclass(frozen=True)
class DenseWindow:
    """An N x N lower-triangular window; row n stores entries 0..n."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in row) for row in self.rows)
        if len(rows) == 0:
            raise DomainError("empty window")
        for n, row in enumerate(rows):
            if len(row) != n + 1:
                raise DomainError(f"row {n} must store exactly {n + 1} entries")
        object.__setattr__(self, "rows", rows)

    @property
    def size(self) -> int:
        return len(self.rows)

    def entry(self, n: int, k: int) -> Fraction:
        if k > n:
            return Fraction(0)
        if n >= self.size:
            raise DomainError(f"row {n} outside the stored {self.size}-window")
        return self.rows[n][k]

    def as_triangle(self, name: str = "dense") -> Triangle:
        """Triangle whose rows beyond the stored window are zero."""
        size = self.size
        rows = self.rows

        def fn(n, k):
            if n < size:
                return rows[n][k]
            return Fraction(0)

        return Triangle(fn, name=name)

    def __eq__(self, other):
        return isinstance(other, DenseWindow) and self.rows == other.rows


def identity_triangle() -> Triangle:
    return Triangle(lambda n, k: Fraction(1 if n == k else 0), name="identity")


# ---------------------------------------------------------------------------
# The named triangles


def lambda_matrix(lam: LambdaSeq) -> Triangle:
    """Averaging triangle: entry (n, k) = (lambda_k - lambda_{k-1}) / lambda_n."""

    def fn(n, k):
        return lam.gap(k) / lam.value(n)

    return Triangle(fn, name=f"lambda[{lam.describe()}]")


def fhat_matrix() -> Triangle:
    """Fibonacci-difference band matrix: f_n/f_{n+1} on the diagonal,
    -f_{n+1}/f_n just below it, zero elsewhere."""

    def fn(n, k):
        if k == n:
            return Fraction(fib(n), fib(n + 1))
        if k == n - 1:
            return -Fraction(fib(n + 1), fib(n))
        return Fraction(0)

    return Triangle(fn, name="fhat")


def e_matrix(lam: LambdaSeq) -> Triangle:
    """The composed triangle in closed form.

    Below the diagonal the entry is
    (1/lambda_n) [ gap(k) f_k/f_{k+1} - gap(k+1) f_{k+2}/f_{k+1} ];
    on the diagonal it is gap(n) f_n / (lambda_n f_{n+1}).
    """

    def fn(n, k):
        if k == n:
            return lam.gap(n) * fib(n) / (lam.value(n) * fib(n + 1))
        bracket = lam.gap(k) * Fraction(fib(k), fib(k + 1)) - lam.gap(k + 1) * Fraction(
            fib(k + 2), fib(k + 1)
        )
        return bracket / lam.value(n)

    return Triangle(fn, name=f"E[{lam.describe()}]")


def e_inverse_matrix(lam: LambdaSeq) -> Triangle:
    """Closed-form inverse of :func:`e_matrix`.

    Below the diagonal:
    lambda_k f_{n+1}^2 [ 1/(gap(k) f_k f_{k+1}) - 1/(gap(k+1) f_{k+1} f_{k+2}) ];
    diagonal: lambda_n f_{n+1}^2 / (gap(n) f_n f_{n+1}).
    """

    def fn(n, k):
        if k == n:
            return lam.value(n) * fib_sq(n + 1) / (lam.gap(n) * fib(n) * fib(n + 1))
        bracket = Fraction(1, 1) / (lam.gap(k) * fib(k) * fib(k + 1)) - Fraction(
            1, 1
        ) / (lam.gap(k + 1) * fib(k + 1) * fib(k + 2))
        return lam.value(k) * fib_sq(n + 1) * bracket

    return Triangle(fn, name=f"Einv[{lam.describe()}]")


# ---------------------------------------------------------------------------
# Algebra


def compose(a: Triangle, b: Triangle) -> Triangle:
    """Exact matrix product; triangular, so every entry is a finite sum."""

    def fn(n, k):
        return sum((a.entry(n, j) * b.entry(j, k) for j in range(k, n + 1)), Fraction(0))

    return Triangle(fn, name=f"({a.name})*({b.name})")


def apply_triangle(a: Triangle, x) -> SeqWindow:
    """The windowed transform (Ax)_n = sum_{k<=n} a_{nk} x_k."""
    values = list(x)
    if not values:
        raise WindowMismatch("cannot apply a triangle to an empty window")
    out = []
    for n in range(len(values)):
        acc = _scaled(values[0], a.entry(n, 0))
        for k in range(1, n + 1):
            acc = acc + _scaled(values[k], a.entry(n, k))
        out.append(acc)
    prov = dict(getattr(x, "provenance", {}) or {})
    prov["transformed-by"] = a.name
    return SeqWindow(tuple(out), prov)


def _scaled(v, c: Fraction):
    if isinstance(v, CertifiedReal):
        return v * c
    return Fraction(v) * c


def solve_triangle(a: Triangle, y) -> SeqWindow:
    """Forward-substitution solve of A x = y on the window (the brute-force
    oracle behind every closed-form inverse in this package)."""
    values = list(y)
    out: list = []
    for n in range(len(values)):
        diag = a.entry(n, n)
        if diag == 0:
            raise SingularDiagonal(f"zero diagonal at row {n}")
        acc = _scaled(values[n], Fraction(1))
        for k in range(n):
            acc = acc + _scaled(out[k], -a.entry(n, k))
        if isinstance(acc, CertifiedReal):
            out.append(acc.divided_by(diag))
        else:
            out.append(acc / diag)
    prov = dict(getattr(y, "provenance", {}) or {})
    prov["solved-against"] = a.name
    return SeqWindow(tuple(out), prov)


def invert_window(a: Triangle, size: int) -> DenseWindow:
    """The unique lower-triangular inverse on an N x N window, by forward
    substitution, exact.  Raises on a zero diagonal (checked row by row)."""
    if size < 1:
        raise DomainError("window size must be >= 1")
    inv = [[Fraction(0)] * (n + 1) for n in range(size)]
    for n in range(size):
        diag = a.entry(n, n)
        if diag == 0:
            raise SingularDiagonal(f"zero diagonal at row {n}")
        for k in range(n + 1):
            if k == n:
                rhs = Fraction(1)
            else:
                rhs = Fraction(0)
            acc = rhs - sum(
                (a.entry(n, j) * inv[j][k] for j in range(k, n)), Fraction(0)
            )
            inv[n][k] = acc / diag
    return DenseWindow(tuple(tuple(row) for row in inv))


# ---------------------------------------------------------------------------
# Forward and inverse transforms (summation forms)


def forward_transform(x, lam: LambdaSeq) -> SeqWindow:
    """y_k = sum_{j<k} (1/lambda_k)[gap(j) f_j/f_{j+1} - gap(j+1) f_{j+2}/f_{j+1}] x_j
    + (1/lambda_k) gap(k) f_k/f_{k+1} x_k.

    Must agree, entry for entry, with applying :func:`e_matrix`.
    """
    values = list(x)
    out = []
    for k in range(len(values)):
        acc = _scaled(values[k], lam.gap(k) * fib(k) / (lam.value(k) * fib(k + 1)))
        for j in range(k):
            coeff = (
                lam.gap(j) * Fraction(fib(j), fib(j + 1))
                - lam.gap(j + 1) * Fraction(fib(j + 2), fib(j + 1))
            ) / lam.value(k)
            acc = acc + _scaled(values[j], coeff)
        out.append(acc)
    prov = dict(getattr(x, "provenance", {}) or {})
    prov["transformed-by"] = f"E[{lam.describe()}]"
    return SeqWindow(tuple(out), prov)


def inverse_transform(y, lam: LambdaSeq) -> SeqWindow:
    """x_k = sum_{j=0}^{k} sum_{i=j-1}^{j} (-1)^{j-i}
    f_{k+1}^2 lambda_i y_i / (gap(j) f_j f_{j+1}).

    The i = -1 terms vanish under the lambda_{-1} = 0 convention.  Must
    agree exactly with the forward-substitution solve against the E window.
    """
    values = list(y)

    def term(i: int, j: int):
        if i < 0:
            return Fraction(0)
        sign = 1 if (j - i) % 2 == 0 else -1
        coeff = sign * lam.value(i) / (lam.gap(j) * fib(j) * fib(j + 1))
        return _scaled(values[i], coeff)

    out = []
    for k in range(len(values)):
        acc = Fraction(0)
        for j in range(k + 1):
            acc = term(j - 1, j) + term(j, j) + acc
        out.append(_scaled(acc, fib_sq(k + 1)))
    prov = dict(getattr(y, "provenance", {}) or {})
    prov["inverse-transformed-by"] = f"E[{lam.describe()}]"
    return SeqWindow(tuple(out), prov)


def basis_vector(k: int, lam: LambdaSeq, size: int) -> SeqWindow:
    """The k-th basis column: zero above index k, then the closed-form
    inverse-column entries.  Satisfies E b^(k) = e^(k) exactly."""
    if not 0 <= k < size:
        raise DomainError(f"basis index {k} outside window of length {size}")
    head = lam.value(k) / (lam.gap(k) * fib(k) * fib(k + 1))
    step = lam.value(k) / (lam.gap(k + 1) * fib(k + 1) * fib(k + 2))
    out = []
    for n in range(size):
        if n < k:
            out.append(Fraction(0))
        elif n == k:
            out.append(fib_sq(n + 1) * head)
        else:
            out.append(fib_sq(n + 1) * (head - step))
    return SeqWindow(tuple(out), {"basis": k, "lambda": lam.describe()})


# ---------------------------------------------------------------------------
# General row-windowed matrices (not necessarily triangular)


class RowWindowedMatrix:
    """A matrix with finitely many stored rows, each finitely supported;
    every entry outside the stored window is zero.

    This is the verification regime for the mapping-class, operator-norm
    and non-compactness machinery: with finite support every analytic
    criterion becomes finitely decidable.
    """

    def __init__(self, rows: Sequence[Sequence], name: str = "rows"):
        cleaned = []
        for row in rows:
            vals = [Fraction(v) for v in row]
            while vals and vals[-1] == 0:
                vals.pop()
            cleaned.append(tuple(vals))
        while cleaned and not cleaned[-1]:
            cleaned.pop()
        self.rows = tuple(cleaned)
        self.name = name

    @property
    def row_bound(self) -> int:
        """Index past the last (possibly) nonzero row."""
        return len(self.rows)

    def entry(self, n: int, k: int) -> Fraction:
        if n < 0 or k < 0:
            raise DomainError("matrix indices must be >= 0")
        if n >= len(self.rows):
            return Fraction(0)
        row = self.rows[n]
        if k >= len(row):
            return Fraction(0)
        return row[k]

    def row_support(self, n: int) -> int:
        """Index past the last nonzero entry of row n."""
        if n >= len(self.rows):
            return 0
        return len(self.rows[n])

    def column_bound(self) -> int:
        return max((len(r) for r in self.rows), default=0)

    def is_triangular(self) -> bool:
        return all(len(row) <= n + 1 for n, row in enumerate(self.rows))

    def as_triangle(self) -> Triangle:
        if not self.is_triangular():
            raise DomainError("matrix has entries above the diagonal")
        return Triangle(self.entry, name=self.name)

    def __repr__(self):
        return f"RowWindowedMatrix({self.name}, rows={len(self.rows)})"


def matrix_from_json(obj) -> RowWindowedMatrix:
    """Build a matrix from the JSON wire format.

    Kinds: "dense" (list of row lists), "rows" (sparse {"n": [entries]}),
    "band" ({offset: values} diagonals with a size).  Entries are rational
    strings; everything beyond the stored window is zero.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError("matrix JSON must be an object with a 'kind'")
    tail = obj.get("tail", "zero")
    if tail != "zero":
        raise ParseError(f"unsupported tail rule {tail!r}")
    kind = obj["kind"]
    if kind == "dense":
        rows = [[parse_rational(str(v)) for v in row] for row in obj.get("entries", [])]
        return RowWindowedMatrix(rows, name="dense")
    if kind == "rows":
        sparse = obj.get("rows", {})
        indices = [int(n) for n in sparse]
        size = max(indices) + 1 if indices else 0
        rows: list[list[Fraction]] = [[] for _ in range(size)]
        for n_str, row in sparse.items():
            rows[int(n_str)] = [parse_rational(str(v)) for v in row]
        return RowWindowedMatrix(rows, name="rows")
    if kind == "band":
        size = int(obj.get("size", 0))
        if size < 1:
            raise ParseError("band matrix needs a positive 'size'")
        rows = [[Fraction(0)] * size for _ in range(size)]
        for off_str, values in obj.get("bands", {}).items():
            off = int(off_str)
            for i, v in enumerate(values):
                n, k = (i, i + off) if off >= 0 else (i - off, i)
                if n < size and k < size:
                    rows[n][k] = parse_rational(str(v))
        return RowWindowedMatrix(rows, name="band")
    raise ParseError(f"unknown matrix kind {kind!r}")


def load_matrix(path: str) -> RowWindowedMatrix:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))
