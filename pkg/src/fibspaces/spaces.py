"""Norms of the transformed sequence spaces and their inclusion bounds.

The norm of a sequence in the lambda-Fibonacci space is the classical
p-norm of its image under the composed triangle.  On a window this is
prefix-exact, so golden identities about the norm can be asserted with
zero tolerance whenever the image is rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivergentTail, DomainError
from .exactreal import (
    DEFAULT_PRECISION,
    CertifiedReal,
    Exponent,
    rpow,
    window_norm,
)
from .sequences import LambdaSeq, PrefixGenerator, SeqWindow
from .triangles import forward_transform
from .verdicts import Status, Verdict, classify_growth, classify_to_zero
from .witnesses import gen_witness

DEFAULT_SWEEP = (8, 12, 16, 24, 32, 48, 64)


@dataclass
class NormEstimate:
    """A window norm plus a tail diagnostic.

    For finite p, ``tail_fraction`` is the share of sum |y_k|^p carried by
    the last quarter of the window (small means the window looks deep
    enough); for p = inf, ``sup_index`` is where the supremum is attained.
    """

    value: CertifiedReal
    window: int
    tail_fraction: float | None = None
    sup_index: int | None = None

    def to_json(self) -> dict:
        out = {
            "value": str(self.value),
            "error_bound": float(self.value.err),
            "window": self.window,
        }
        if self.tail_fraction is not None:
            out["tail_fraction"] = self.tail_fraction
        if self.sup_index is not None:
            out["sup_index"] = self.sup_index
        return out


def space_norm(
    x, lam: LambdaSeq, p, precision: int = DEFAULT_PRECISION
) -> NormEstimate:
    """Norm of x in the lambda-Fibonacci space: the p-norm of its image."""
    p = Exponent.of(p)
    image = forward_transform(x, lam)
    value = window_norm(image.values, p, precision)
    n = len(image)
    if p.is_infinite:
        sups = [abs(CertifiedReal.wrap(v).value) for v in image.values]
        best = max(range(n), key=lambda i: sups[i])
        return NormEstimate(value, n, sup_index=best)
    pf = p.as_fraction()
    powers = [float(abs(CertifiedReal.wrap(v).value)) ** float(pf) for v in image.values]
    total = sum(powers)
    tail = sum(powers[-max(1, n // 4):])
    frac = tail / total if total > 0 else 0.0
    return NormEstimate(value, n, tail_fraction=frac)


def parallelogram_check(
    lam: LambdaSeq, p, precision: int = DEFAULT_PRECISION
) -> dict:
    """Evaluate both sides of the parallelogram identity on the two
    witnesses whose images are (1,1,0,...) and (1,-1,0,...).

    The left side is 8 for every p; the right side is 4 * 2^(2/p), so the
    identity holds exactly when p = 2.
    """
    p = Exponent.of(p)
    n = 8
    u = gen_witness("u", lam, n)
    v = gen_witness("v-hilbert", lam, n)
    plus = SeqWindow(tuple(a + b for a, b in zip(u.values, v.values)), {})
    minus = SeqWindow(tuple(a - b for a, b in zip(u.values, v.values)), {})

    def sq_norm(w) -> CertifiedReal:
        # (sum |y_k|^p) ** (2/p) keeps rational cases exact (p = 2 above all),
        # where norm-then-square would not.
        image = forward_transform(w, lam)
        if p.is_infinite:
            return window_norm(image.values, p, precision).square()
        pf = p.as_fraction()
        power_sum = CertifiedReal.exact(0)
        for v_ in image.values:
            power_sum = power_sum + rpow(abs(CertifiedReal.wrap(v_)), pf, precision)
        return rpow(power_sum, 2 / pf, precision)

    lhs = sq_norm(plus) + sq_norm(minus)
    rhs = (sq_norm(u) + sq_norm(v)) * Fraction(2)
    equal = lhs.agrees_with(rhs) and lhs.is_exact and rhs.is_exact
    separated = lhs.distance_from(rhs) > 0
    return {
        "p": str(p),
        "lhs": lhs,
        "rhs": rhs,
        "equal": bool(equal and not separated),
        "separation": lhs.distance_from(rhs),
    }


def tail_constant(
    lam: LambdaSeq,
    k_max: int = 32,
    tol: Fraction = Fraction(1, 10**30),
) -> Verdict:
    """The supremum over k of gap(k) * sum_{n >= k} 1/lambda_n.

    Each inner sum is truncated once the certified tail bound drops below
    ``tol``; the returned value is an enclosure of the sup over k <= k_max.
    Only reciprocal-summable weight families are accepted.
    """
    if k_max < 2:
        raise DomainError("sweep depth must be >= 2")
    if not lam.reciprocal_summable:
        raise DivergentTail(
            f"reciprocals of family {lam.family!r} are not summable"
        )
    enclosures = []
    sweep = []
    for k in range(k_max + 1):
        gap = lam.gap(k)
        partial = Fraction(0)
        n = k
        while True:
            partial += 1 / lam.value(n)
            tail = lam.reciprocal_tail_bound(n)
            if gap * tail < tol:
                break
            n += 1
        low = gap * partial
        high = gap * (partial + tail)
        enclosures.append(CertifiedReal.from_interval(low, high))
        sweep.append((k, float(low)))
    best = CertifiedReal.max_of(enclosures)
    return Verdict(
        Status.EVIDENCE_BOUNDED,
        tuple(sweep),
        value=best,
        detail={"k_max": k_max, "tol": str(tol)},
    )


def inclusion_bounds_check(
    x, lam: LambdaSeq, p=None, precision: int = DEFAULT_PRECISION
) -> dict:
    """Evaluate the two norm inequalities that witness the inclusions.

    Always checks sup-norm domination (space sup-norm <= 4 * sup |x_k|);
    when the weight family is reciprocal-summable and p is finite, also
    checks the p-norm bound with the 4 * M^(1/p) constant.
    """
    # "certified" means the enclosures themselves prove lhs <= rhs; "holds"
    # only says the enclosures do not certify a violation.
    def comparison(lhs: CertifiedReal, rhs: CertifiedReal) -> dict:
        return {
            "lhs": lhs,
            "rhs": rhs,
            "certified": lhs.certainly_le(rhs) or (lhs.hi == rhs.lo),
            "holds": lhs.lo <= rhs.hi,
        }

    report: dict = {}
    sup_lhs = space_norm(x, lam, Exponent.infinity(), precision).value
    sup_rhs = window_norm(list(x), Exponent.infinity(), precision) * Fraction(4)
    report["sup"] = comparison(sup_lhs, sup_rhs)
    if p is not None and lam.reciprocal_summable:
        p = Exponent.of(p)
        if not p.is_infinite:
            m = tail_constant(lam).value
            factor = rpow(m, 1 / p.as_fraction(), precision) * Fraction(4)
            lhs = space_norm(x, lam, p, precision).value
            rhs = factor * window_norm(list(x), p, precision)
            report["p"] = comparison(lhs, rhs)
            report["p"]["constant"] = m
    return report


def membership_evidence(
    gen: PrefixGenerator,
    lam: LambdaSeq,
    space: str = "lp",
    p=None,
    sweep=DEFAULT_SWEEP,
    precision: int = DEFAULT_PRECISION,
) -> Verdict:
    """Finite evidence that the generated sequence lies in the named space.

    ``space`` is "lp" (p-norm of the image must stay bounded), "linf"
    (image sup bounded) or "c0" (image entries tend to zero).  When the
    generator's image is known to be finitely supported the quantity is
    finitely determined and the verdict is exact.
    """
    if space == "lp":
        if p is None:
            raise DomainError("space 'lp' needs an exponent")
        p = Exponent.of(p)
    elif space not in ("linf", "c0"):
        raise DomainError(f"unknown space {space!r}")

    deepest = max(sweep)
    image_support = gen.image_support

    if space == "c0":
        image = forward_transform(gen.prefix(deepest), lam)
        points = [
            (n + 1, abs(float(CertifiedReal.wrap(v).value)))
            for n, v in enumerate(image.values)
        ]
        # Claimed finite image support is verified on the window, not assumed.
        exact = image_support is not None and all(
            CertifiedReal.wrap(v).is_exact and CertifiedReal.wrap(v).value == 0
            for v in image.values[image_support:]
        )
        return classify_to_zero(points, stabilized_exactly=exact)

    points = []
    exact_values = []
    for n in sorted(sweep):
        w = gen.prefix(n)
        if space == "lp":
            est = space_norm(w, lam, p, precision)
        else:
            est = space_norm(w, lam, Exponent.infinity(), precision)
        points.append((n, float(est.value.value)))
        exact_values.append(est.value.value)
    stabilized = False
    if image_support is not None and min(sweep) >= image_support:
        stabilized = all(v == exact_values[-1] for v in exact_values)
    return classify_growth(points, stabilized_exactly=stabilized)
