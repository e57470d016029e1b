"""Fibonacci layer, weight families, and witness generation."""

from fractions import Fraction

import pytest

from fibspaces.errors import (
    DomainError,
    MissingExponent,
    NonPositiveStart,
    NotStrictlyIncreasing,
    ParseError,
    UnknownWitness,
)
from fibspaces.exactreal import CertifiedReal, rpow
from fibspaces.sequences import (
    LambdaSeq,
    from_values,
    inv_fib_pow,
    fib,
    parse_generator_spec,
    unit_seq,
)
from fibspaces.triangles import forward_transform
from fibspaces.witnesses import gen_witness, witness_generator


class TestFib:
    def test_base_cases(self):
        assert fib(0) == 1 and fib(1) == 1

    def test_unrolled(self):
        assert [fib(n) for n in range(8)] == [1, 1, 2, 3, 5, 8, 13, 21]

    def test_cassini_sample(self):
        assert fib(2) * fib(4) - fib(3) ** 2 == 1

    def test_cassini_range(self):
        for n in range(1, 201):
            assert fib(n - 1) * fib(n + 1) - fib(n) ** 2 == (-1) ** (n + 1)

    def test_ratio_bounds(self):
        for k in range(201):
            assert Fraction(fib(k), fib(k + 1)) <= 1
            assert Fraction(fib(k + 1), fib(k)) <= 2

    def test_golden_ratio_limit(self):
        ratio = CertifiedReal.exact(Fraction(fib(101), fib(100)))
        phi = (rpow(Fraction(5), Fraction(1, 2), 128) + 1).divided_by(2)
        assert abs(ratio - phi).hi < Fraction(1, 10**12)

    def test_negative_rejected(self):
        with pytest.raises(DomainError):
            fib(-1)


class TestLambdaSeq:
    def test_linear(self):
        lam = LambdaSeq.linear(1, 1)
        assert [lam.value(n) for n in range(4)] == [1, 2, 3, 4]
        assert lam.value(-1) == 0
        assert lam.gap(0) == 1

    def test_geometric(self):
        lam = LambdaSeq.geometric(2, 1)
        assert [lam.value(n) for n in range(4)] == [1, 2, 4, 8]
        assert lam.reciprocal_summable

    def test_explicit_tail(self):
        lam = LambdaSeq.explicit([1, 2, 4])
        # past the prefix the last gap repeats
        assert lam.value(3) == 6 and lam.value(4) == 8

    def test_explicit_not_increasing(self):
        with pytest.raises(NotStrictlyIncreasing):
            LambdaSeq.explicit([1, 1, 2])

    def test_nonpositive_start(self):
        with pytest.raises(NonPositiveStart):
            LambdaSeq.linear(1, 0)
        with pytest.raises(NotStrictlyIncreasing):
            LambdaSeq.geometric(1, 1)

    def test_from_spec(self):
        assert LambdaSeq.from_spec("linear:1,1").value(5) == 6
        assert LambdaSeq.from_spec("geometric:2,1").value(3) == 8
        with pytest.raises(ParseError):
            LambdaSeq.from_spec("fancy:1")

    def test_from_file(self, tmp_path):
        path = tmp_path / "lam.txt"
        path.write_text("1\n3/2\n2\n")
        lam = LambdaSeq.from_spec(f"file:{path}")
        assert lam.value(1) == Fraction(3, 2)
        assert lam.value(5) == Fraction(2) + 3 * Fraction(1, 2)

    def test_reciprocal_tail_bound(self):
        lam = LambdaSeq.geometric(2, 1)
        # sum_{n > 3} 2^-n = 2^-3
        assert lam.reciprocal_tail_bound(3) == Fraction(1, 8)


class TestWitnesses:
    def test_t_window(self):
        lam = LambdaSeq.linear(1, 1)
        t = gen_witness("t", lam, 3)
        assert list(t.values) == [1, 6, 15]

    def test_t_closed_form_all_indices(self):
        # The one displayed closed form that is exact at every index.
        lam = LambdaSeq.geometric(2, 1)
        t = gen_witness("t", lam, 12)
        for k in range(1, 12):
            expected = fib(k + 1) ** 2 * (
                sum(Fraction(1, fib(j) * fib(j + 1)) for j in range(1, k + 1)) + 1
            )
            assert t.values[k] == expected

    def test_u_window(self):
        lam = LambdaSeq.linear(1, 1)
        u = gen_witness("u", lam, 3)
        assert list(u.values) == [1, 6, Fraction(21, 2)]

    def test_u_early_closed_forms(self):
        # Displayed values agree with the exact solve on the first indices
        # (the displayed constant tail is not the true sequence).
        lam = LambdaSeq.linear(1, 1)
        u = gen_witness("u", lam, 4)
        assert u.values[1] == fib(2) ** 2 + fib(2)
        assert u.values[2] == fib(3) ** 2 * (1 + Fraction(1, fib(2))) - (
            lam.value(1) * fib(3) / ((lam.value(2) - lam.value(1)) * fib(2))
        )
        assert u.values[3] != u.values[2]

    def test_v_hilbert_early_closed_forms(self):
        lam = LambdaSeq.linear(1, 1)
        v = gen_witness("v-hilbert", lam, 3)
        l0, l1, l2 = lam.value(0), lam.value(1), lam.value(2)
        assert v.values[1] == fib(2) ** 2 - (l1 + l0) / (l1 - l0) * fib(2)
        assert v.values[2] == fib(3) ** 2 * (
            1 - (l1 + l0) / ((l1 - l0) * fib(2))
        ) + l1 * fib(3) / ((l2 - l1) * fib(2))

    def test_v_e0_early_closed_form(self):
        lam = LambdaSeq.linear(1, 1)
        v = gen_witness("v-e0", lam, 3)
        assert v.values[1] == fib(2) ** 2 - lam.value(0) * fib(2) / (
            (lam.value(1) - lam.value(0)) * fib(1)
        )
        assert list(v.values) == [1, 2, Fraction(9, 2)]

    def test_unit(self):
        lam = LambdaSeq.linear(1, 1)
        w = gen_witness("unit:0", lam, 4)
        assert list(w.values) == [1, 0, 0, 0]

    def test_unknown(self):
        with pytest.raises(UnknownWitness):
            gen_witness("nope", LambdaSeq.linear(1, 1), 4)

    def test_power_law_needs_p(self):
        with pytest.raises(MissingExponent):
            gen_witness("power-law", LambdaSeq.linear(1, 1), 4)

    @pytest.mark.parametrize("name,image", [
        ("u", [1, 1, 0, 0, 0, 0, 0, 0]),
        ("v-hilbert", [1, -1, 0, 0, 0, 0, 0, 0]),
        ("t", [1] * 8),
        ("v-e0", [1, 0, 0, 0, 0, 0, 0, 0]),
        ("alternating", [1, -1, 1, -1, 1, -1, 1, -1]),
    ])
    def test_images_reproduced_exactly(self, name, image):
        for lam in (LambdaSeq.linear(1, 1), LambdaSeq.linear(2, 3),
                    LambdaSeq.geometric(2, 1)):
            w = gen_witness(name, lam, 8)
            y = forward_transform(w, lam)
            assert list(y.values) == [Fraction(v) for v in image]

    def test_t_is_lambda_independent(self):
        a = gen_witness("t", LambdaSeq.linear(1, 1), 16)
        b = gen_witness("t", LambdaSeq.geometric(2, 1), 16)
        assert a.values == b.values

    def test_witness_generator_prefixes_consistent(self):
        lam = LambdaSeq.linear(1, 1)
        gen = witness_generator("t", lam)
        assert gen.prefix(4).values == gen.prefix(8).values[:4]


class TestGenerators:
    def test_unit_support(self):
        g = unit_seq(2)
        assert g.support == 3
        assert list(g.prefix(5).values) == [0, 0, 1, 0, 0]

    def test_from_values_trims_support(self):
        g = from_values([1, 2, 0, 0])
        assert g.support == 2
        assert len(g.prefix(6)) == 6

    def test_inv_fib_pow(self):
        g = inv_fib_pow(3)
        assert g.prefix(3).values[2] == Fraction(1, fib(3) ** 3)

    def test_parse_specs(self):
        assert parse_generator_spec("zero").prefix(3).values == (0, 0, 0)
        assert parse_generator_spec("e").prefix(2).values == (1, 1)
        assert parse_generator_spec("unit:1").prefix(3).values == (0, 1, 0)
        assert parse_generator_spec("values:1,1/2").prefix(3).values == (
            1, Fraction(1, 2), 0,
        )
        with pytest.raises(ParseError):
            parse_generator_spec("nonsense")


class TestConcurrency:
    def test_fib_cache_concurrent_extension(self):
        from concurrent.futures import ThreadPoolExecutor

        from fibspaces.sequences import FibCache

        cache = FibCache()
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(cache, [1500] * 32))
        assert len(set(results)) == 1
        assert results[0] == cache(1500)

    def test_triangle_memo_concurrent_reads(self):
        from concurrent.futures import ThreadPoolExecutor

        from fibspaces.triangles import e_matrix

        e = e_matrix(LambdaSeq.linear(1, 1))

        def probe(seed):
            return [e.entry(n, k) for n in range(30) for k in range(n + 1)]

        with ThreadPoolExecutor(max_workers=8) as pool:
            rows = list(pool.map(probe, range(16)))
        assert all(r == rows[0] for r in rows)


def test_custom_lambda_oracle_validated():
    lam = LambdaSeq.custom(lambda n: Fraction(n * n + 1), name="squares")
    assert lam.value(3) == 10
    assert lam.value(-1) == 0
    with pytest.raises(NotStrictlyIncreasing):
        LambdaSeq.custom(lambda n: Fraction(1))
