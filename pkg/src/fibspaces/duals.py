"""Dual-set machinery: the pairing matrices, the kernel quantities, and the
eight membership conditions d1..d8.

Given a candidate sequence a, pairing a against a space element x turns
into a triangle acting on the image y = Ex.  Two triangles appear: one for
absolute summability of (a_k x_k) (entries are inverse-column entries
scaled by a_n) and one for convergence of the partial sums (its kernel is
the quantity abar_k(n) below).  The conditions d1..d8 are suprema, series
and limits built from those triangles; each is evaluated over a deepening
window and classified by the verdict machinery, exactly when the candidate
is finitely supported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ParseError
from .exactreal import (
    DEFAULT_PRECISION,
    CertifiedReal,
    Exponent,
    conjugate,
    rpow,
)
from .sequences import LambdaSeq, PrefixGenerator, fib, fib_sq
from .subsetsup import RANDOM_SUBSETS, subset_sup
from .triangles import DenseWindow
from .verdicts import (
    Verdict,
    classify_growth,
    classify_to_zero,
    conjunction,
)

CONDITION_IDS = ("d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8")


def _g_entry(lam: LambdaSeq, n: int, k: int) -> Fraction:
    """Closed-form inverse-triangle entry (duplicated from the triangle
    module's closed form; the pairing matrices scale these by a_n)."""
    if k > n:
        return Fraction(0)
    if k == n:
        return lam.value(n) * fib_sq(n + 1) / (lam.gap(n) * fib(n) * fib(n + 1))
    bracket = Fraction(1) / (lam.gap(k) * fib(k) * fib(k + 1)) - Fraction(1) / (
        lam.gap(k + 1) * fib(k + 1) * fib(k + 2)
    )
    return lam.value(k) * fib_sq(n + 1) * bracket


def diag_coeff(lam: LambdaSeq, n: int) -> Fraction:
    """The diagonal weight lambda_n f_{n+1}^2 / (gap(n) f_n f_{n+1})."""
    return lam.value(n) * fib_sq(n + 1) / (lam.gap(n) * fib(n) * fib(n + 1))


def alpha_matrix(a, lam: LambdaSeq) -> DenseWindow:
    """Pairing triangle for absolute summability: row n is the n-th
    inverse-triangle row scaled by a_n, so that row n applied to y = Ex
    gives a_n x_n exactly."""
    values = list(a)
    size = len(values)
    rows = []
    for n in range(size):
        an = Fraction(values[n])
        rows.append(tuple(_g_entry(lam, n, k) * an for k in range(n + 1)))
    return DenseWindow(tuple(rows))


def abar(a, lam: LambdaSeq, k: int, n: int) -> Fraction:
    """The kernel quantity for partial-sum pairing:

    lambda_k [ a_k f_{k+1}^2 / (gap(k) f_k f_{k+1})
               + (1/(gap(k) f_k f_{k+1}) - 1/(gap(k+1) f_{k+1} f_{k+2}))
                 * sum_{j=k+1}^{n} f_{j+1}^2 a_j ].

    Defined for k < n; treated as zero for k >= n (triangle support).
    """
    values = list(a)
    if not 0 <= k < n:
        raise DomainError(f"need 0 <= k < n, got k={k}, n={n}")
    if n >= len(values):
        raise DomainError(f"index n={n} outside window of length {len(values)}")
    head = Fraction(values[k]) * fib_sq(k + 1) / (lam.gap(k) * fib(k) * fib(k + 1))
    bracket = Fraction(1) / (lam.gap(k) * fib(k) * fib(k + 1)) - Fraction(1) / (
        lam.gap(k + 1) * fib(k + 1) * fib(k + 2)
    )
    tail = sum((fib_sq(j + 1) * Fraction(values[j]) for j in range(k + 1, n + 1)),
               Fraction(0))
    return lam.value(k) * (head + bracket * tail)


def abar_limit(a: PrefixGenerator, lam: LambdaSeq, k: int) -> Fraction:
    """abar_k(n) stabilizes exactly once n clears the support of a; that
    stable value is the limit.  Only defined for finitely supported a."""
    if a.support is None:
        raise DomainError("limit of abar needs a finitely supported sequence")
    n = max(a.support, k + 1)
    window = a.prefix(n + 1)
    return abar(window, lam, k, n)


def beta_matrix(a, lam: LambdaSeq) -> DenseWindow:
    """Partial-sum pairing triangle: abar_k(n) below the diagonal, the
    diagonal weight scaled by a_n on it."""
    values = [Fraction(v) for v in list(a)]
    size = len(values)
    rows = []
    for n in range(size):
        row = [abar(values, lam, k, n) for k in range(n)]
        row.append(diag_coeff(lam, n) * values[n])
        rows.append(tuple(row))
    return DenseWindow(tuple(rows))


def apply_dense_row(window: DenseWindow, y, n: int):
    """Dot product of stored row n against a window (exact)."""
    acc = Fraction(0)
    for k in range(n + 1):
        c = window.entry(n, k)
        if c:
            acc = acc + c * y[k]
    return acc


# ---------------------------------------------------------------------------
# Conditions d1..d8


@dataclass
class DualReport:
    condition: str
    verdict: Verdict
    sweep: tuple
    value: CertifiedReal | None
    lower_bound_only: bool
    params: dict

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "verdict": self.verdict.to_json(),
            "sweep": [[float(a), float(b)] for a, b in self.sweep],
            "value": str(self.value) if self.value is not None else None,
            "lower_bound_only": self.lower_bound_only,
            "params": {k: str(v) for k, v in self.params.items()},
        }


def _sweep_points(window: int) -> list[int]:
    pts, w = [], 4
    while w < window:
        pts.append(w)
        w = max(w + 2, int(w * 1.5))
    pts.append(window)
    return sorted(set(pts))


def _abar_table(a_vals, lam, w) -> list[list[Fraction]]:
    """abar_k(n) for all k < n < w, with the shared suffix sums reused."""
    table = []
    for n in range(w):
        table.append([abar(a_vals, lam, k, n) for k in range(n)])
    return table


def _certified_power_sum(values, q: Fraction, precision=DEFAULT_PRECISION) -> CertifiedReal:
    total = CertifiedReal.exact(0)
    for v in values:
        total = total + rpow(abs(Fraction(v)), q, precision)
    return total


def dual_condition(
    a: PrefixGenerator,
    lam: LambdaSeq,
    condition: str,
    window: int = 32,
    p=None,
    subset_mode: str = "auto",
    seed: int = 0,
) -> DualReport:
    """Evaluate one membership condition over a deepening window.

    d1: subset-sup of column sums of the absolute-pairing triangle (needs q);
    d2: sup over columns of absolute column sums of the same triangle;
    d3: convergence of the Fibonacci-square weighted series of a;
    d4: sup over n of the q-power row sums of abar;
    d5: sup of the scaled diagonal;   d6: sup of |abar| over all (n, k);
    d7: l1-distance of abar rows from their limits tends to zero;
    d8: sup over n of absolute abar row sums.
    """
    if condition not in CONDITION_IDS:
        raise DomainError(f"unknown condition {condition!r}")
    if window < 4:
        raise DomainError("window must be >= 4")
    q = None
    if condition in ("d1", "d4"):
        if p is None:
            raise DomainError(f"{condition} needs the space exponent p")
        q = conjugate(p).as_fraction() if not conjugate(p).is_infinite else None
        if q is None:
            raise DomainError(f"{condition} with q = inf is not a sum condition")

    support = a.support
    points = _sweep_points(window)
    deepest = points[-1]
    a_deep = [Fraction(v) for v in a.prefix(deepest)]

    sweep: list[tuple[int, float]] = []
    payloads: list = []
    value: CertifiedReal | None = None
    lower_bound_only = False

    if condition in ("d4", "d6", "d7", "d8"):
        full_table = _abar_table(a_deep, lam, deepest)

    if condition == "d7":
        if support is not None:
            limits = [abar_limit(a, lam, k) for k in range(deepest - 1)]

            def row_distance(m: int) -> Fraction:
                return sum(
                    (abs(full_table[m][k] - limits[k]) for k in range(m)), Fraction(0)
                )

        else:
            # Cauchy-style evidence: compare the row at m against the row
            # at 2m (a trivially shrinking reference would never diverge).
            def row_distance(m: int) -> Fraction:
                return sum(
                    (abs(full_table[m][k] - full_table[2 * m][k]) for k in range(m)),
                    Fraction(0),
                )

        for w in [m for m in points if 2 * m < deepest]:
            dist = row_distance(w)
            sweep.append((w, float(dist)))
            payloads.append(dist)
        # Finite support saturates the inner sums; confirm at the deepest
        # stored row that the distance to the limits is exactly zero.
        stabilized = False
        if support is not None and deepest - 1 > support:
            far = deepest - 1
            stabilized = all(
                full_table[far][k] == limits[k] for k in range(far)
            ) and all(d == 0 for (x, _), d in zip(sweep, payloads) if x > support)
        verdict = classify_to_zero(sweep, stabilized_exactly=stabilized)
        value = CertifiedReal.exact(payloads[-1]) if payloads else None
    elif condition == "d3":
        partials = [Fraction(0)]
        for j in range(1, deepest):
            partials.append(partials[-1] + a_deep[j] * fib_sq(j + 1))
        # Doubling-window increments |S_2m - S_m| are the Cauchy evidence.
        for w in [m for m in points if 2 * m < deepest]:
            resid = abs(partials[2 * w] - partials[w])
            sweep.append((w, float(resid)))
            payloads.append(resid)
        # Finite support makes the series a finite sum; confirm the partial
        # sums are constant from the support onward.
        stabilized = (
            support is not None
            and deepest - 1 >= support
            and all(
                partials[m] == partials[-1]
                for m in range(max(0, support - 1), deepest)
            )
        )
        verdict = classify_to_zero(sweep, stabilized_exactly=stabilized)
        value = CertifiedReal.exact(partials[-1])
    else:
        for w in points:
            if condition == "d1":
                rows = [
                    [_g_entry(lam, n, k) * a_deep[n] for k in range(n + 1)]
                    for n in range(w)
                ]
                rows = [r for r in rows if any(r)]
                samples = RANDOM_SUBSETS if w == deepest else 1000
                found = subset_sup(rows, float(q), mode=subset_mode, seed=seed, samples=samples)
                lower_bound_only = not found.enumerated
                quantity = _certified_power_sum(found.column_sums, q)
                sweep.append((w, float(quantity.value)))
                payloads.append(tuple(found.column_sums))
                if w == deepest:
                    value = quantity
            elif condition == "d2":
                col = [
                    sum((abs(_g_entry(lam, n, k) * a_deep[n]) for n in range(k, w)),
                        Fraction(0))
                    for k in range(w)
                ]
                quantity = max(col) if col else Fraction(0)
                sweep.append((w, float(quantity)))
                payloads.append(quantity)
                if w == deepest:
                    value = CertifiedReal.exact(quantity)
            elif condition == "d4":
                row_sums = [
                    _certified_power_sum(full_table[n], q) for n in range(1, w)
                ]
                best = CertifiedReal.max_of(row_sums)
                sweep.append((w, float(best.value)))
                payloads.append(best.value)
                if w == deepest:
                    value = best
            elif condition == "d5":
                quantity = max(
                    (abs(diag_coeff(lam, n) * a_deep[n]) for n in range(w)),
                    default=Fraction(0),
                )
                sweep.append((w, float(quantity)))
                payloads.append(quantity)
                if w == deepest:
                    value = CertifiedReal.exact(quantity)
            elif condition == "d6":
                quantity = max(
                    (abs(v) for n in range(w) for v in full_table[n]),
                    default=Fraction(0),
                )
                sweep.append((w, float(quantity)))
                payloads.append(quantity)
                if w == deepest:
                    value = CertifiedReal.exact(quantity)
            elif condition == "d8":
                quantity = max(
                    (sum((abs(v) for v in full_table[n]), Fraction(0)) for n in range(w)),
                    default=Fraction(0),
                )
                sweep.append((w, float(quantity)))
                payloads.append(quantity)
                if w == deepest:
                    value = CertifiedReal.exact(quantity)
        # Finite support makes every one of these suprema finitely
        # determined once the window clears the support plus one saturated
        # row; payloads past that point must agree exactly.
        settled = [
            pay for (x, _), pay in zip(sweep, payloads) if x >= support + 2
        ] if support is not None else []
        stabilized = (
            support is not None
            and points[-1] >= support + 2
            and all(pay == settled[-1] for pay in settled)
        )
        verdict = classify_growth(sweep, stabilized_exactly=stabilized)

    return DualReport(
        condition=condition,
        verdict=verdict,
        sweep=tuple(sweep),
        value=value,
        lower_bound_only=lower_bound_only,
        params={
            "lambda": lam.describe(),
            "window": window,
            "p": p,
            "subset_mode": subset_mode,
            "seed": seed,
        },
    )


# ---------------------------------------------------------------------------
# Combined dual membership


_BETA_TABLE = {
    "lp": ("d3", "d4", "d5"),
    "l1": ("d3", "d5", "d6"),
    "linf": ("d4", "d7", "d8"),
}
_GAMMA_TABLE = {
    "l1": ("d5", "d6"),
    "lp": ("d5", "d8"),
    "linf": ("d5", "d8"),
}


def _normalize_space(space: str, p) -> tuple[str, Exponent | None]:
    if space == "lp":
        if p is None:
            raise DomainError("space 'lp' needs an exponent")
        p = Exponent.of(p)
        if p.is_infinite:
            return "linf", None
        if p.as_fraction() == 1:
            return "l1", None
        return "lp", p
    if space == "l1":
        return "l1", None
    if space == "linf":
        return "linf", None
    raise ParseError(f"unknown space {space!r}")


def dual_membership(
    a: PrefixGenerator,
    lam: LambdaSeq,
    space: str,
    kind: str,
    p=None,
    window: int = 32,
    subset_mode: str = "auto",
    seed: int = 0,
) -> dict:
    """Combined alpha/beta/gamma dual membership evidence.

    The condition set is the classical characterization for the given
    space and dual kind; the result carries the per-condition reports
    and their conjunction.
    """
    space, p_norm = _normalize_space(space, p)
    if kind == "alpha":
        conditions = ("d2",) if space == "l1" else ("d1",)
    elif kind == "beta":
        conditions = _BETA_TABLE[space]
    elif kind == "gamma":
        conditions = _GAMMA_TABLE[space]
    else:
        raise ParseError(f"unknown dual kind {kind!r}")

    # d1/d4 consume the conjugate exponent; q = 1 for the sup-normed space.
    p_for_q = p_norm if p_norm is not None else (
        Exponent.infinity() if space == "linf" else Exponent.of(1)
    )
    reports = []
    for cond in conditions:
        need_p = cond in ("d1", "d4")
        reports.append(
            dual_condition(
                a, lam, cond, window=window,
                p=p_for_q if need_p else None,
                subset_mode=subset_mode, seed=seed,
            )
        )
    combined = conjunction([r.verdict for r in reports], label=f"{kind}-dual:{space}")
    return {
        "space": space,
        "kind": kind,
        "p": str(p_norm) if p_norm else None,
        "conditions": reports,
        "verdict": combined,
    }
