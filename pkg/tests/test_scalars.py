import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from helpers import random_scalar
from opwin import (
    ExactScalar,
    evaluate,
    format_scalar,
    from_power_of_two,
    parse_scalar,
)
from opwin.scalars import ONE, ZERO, square_free_split


def rationals(max_num=8, max_den=8):
    return st.builds(
        Fraction, st.integers(-max_num, max_num), st.integers(1, max_den)
    )


@st.composite
def scalars(draw):
    total = ExactScalar(0)
    for _ in range(draw(st.integers(0, 3))):
        term = ExactScalar(draw(rationals()))
        if draw(st.booleans()):
            term = term * from_power_of_two(
                draw(st.integers(-6, 6)),
                draw(st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 10, 12])),
            )
        total = total + term
    return total


class TestSquareFree:
    def test_examples(self):
        assert square_free_split(8) == (2, 2)
        assert square_free_split(4) == (2, 1)
        assert square_free_split(1) == (1, 1)
        assert square_free_split(12) == (2, 3)
        assert square_free_split(10) == (1, 10)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            square_free_split(0)

    @given(st.integers(1, 4000))
    def test_reconstructs(self, n):
        k, s = square_free_split(n)
        assert k * k * s == n
        for d in range(2, 30):
            assert s % (d * d) != 0


class TestFromPowerOfTwo:
    def test_square_part_extraction(self):
        # -3/sqrt(8) = -(3/2)/sqrt(2)
        x = from_power_of_two(-6, 8)
        assert format_scalar(x) == "1 * 2^(0 + -3/2/sqrt(2))"

    def test_perfect_square_radicand_is_rational(self):
        # (-4/2)/sqrt(4) = -1, value 2^-1
        assert from_power_of_two(-4, 4) == ExactScalar(Fraction(1, 2))
        # (-2/2)/sqrt(4) = -1/2, value 2^(-1/2) stored folded
        y = from_power_of_two(-2, 4)
        assert format_scalar(y) == "1/2 * 2^(1/2)"
        enc = evaluate(y, 128)
        assert float(enc.lo) <= 2 ** -0.5 <= float(enc.hi)

    def test_zero_exponent(self):
        assert from_power_of_two(0, 10) == ONE

    def test_zero_radicand_rejected(self):
        with pytest.raises(ValueError):
            from_power_of_two(1, 0)


class TestArithmetic:
    def test_like_terms_merge(self):
        x = from_power_of_two(2, 2)  # 2^(1/sqrt 2)
        assert 3 * x + 5 * x == 8 * x

    def test_distinct_exponents_stay(self):
        x = from_power_of_two(2, 2) + from_power_of_two(2, 3)
        assert len(x.terms) == 2

    def test_additive_inverse(self):
        x = from_power_of_two(2, 2) + ExactScalar(Fraction(3, 7))
        assert (x + (-1) * x).is_zero()

    def test_exponent_addition(self):
        x = from_power_of_two(2, 2)
        assert x * x == from_power_of_two(4, 2)

    def test_rational_collapse(self):
        # (1/2)*2^3 * 4 = 16, one canonical form
        x = ExactScalar(Fraction(1, 2)) * parse_scalar("1 * 2^(3)") * 4
        assert x == ExactScalar(16)

    def test_expand_and_merge(self):
        x = from_power_of_two(2, 2)
        assert (ONE + x) * (ONE - x) == ONE - from_power_of_two(4, 2)

    def test_is_zero(self):
        x = from_power_of_two(2, 2)
        y = from_power_of_two(2, 3)
        assert ZERO.is_zero()
        assert (x - x).is_zero()
        assert not (x - y).is_zero()

    def test_division_by_rational(self):
        x = from_power_of_two(2, 2)
        assert (x * 3) / 3 == x
        with pytest.raises(ZeroDivisionError):
            x / 0

    @given(scalars(), scalars(), scalars())
    def test_ring_axioms(self, x, y, z):
        assert (x + y) + z == x + (y + z)
        assert x + y == y + x
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + ZERO == x
        assert x * ONE == x
        assert (x + (-x)).is_zero()

    @given(scalars())
    def test_canonical_idempotence(self, x):
        rebuilt = ExactScalar._make(x.terms)
        assert rebuilt == x
        assert rebuilt.terms == x.terms


class TestSerialization:
    def test_zero(self):
        assert format_scalar(ZERO) == "0"
        assert parse_scalar("0") == ZERO

    def test_examples(self):
        assert format_scalar(ExactScalar(-4)) == "-4 * 2^(0)"
        assert parse_scalar("-4 * 2^(0)") == ExactScalar(-4)
        s = "3 * 2^(0 + -3/2/sqrt(2) + 1/sqrt(10)) + 1/2 * 2^(1/2)"
        assert format_scalar(parse_scalar(s)) == s

    def test_malformed(self):
        for bad in ("", "nonsense", "1 *2^(0)", "1 * 2^(0) +", "1 * 2^(0minky)"):
            with pytest.raises(ValueError):
                parse_scalar(bad)

    def test_parse_normalizes(self):
        # non-square-free radicand and out-of-range exponent both normalize
        assert parse_scalar("1 * 2^(0 + 2/sqrt(4))") == ExactScalar(2)
        assert parse_scalar("1 * 2^(-1)") == ExactScalar(Fraction(1, 2))
        assert parse_scalar("1 * 2^(0) + 1 * 2^(0)") == ExactScalar(2)

    @given(scalars())
    def test_round_trip_bit_exact(self, x):
        text = format_scalar(x)
        assert parse_scalar(text) == x
        assert format_scalar(parse_scalar(text)) == text


class TestEvaluate:
    def test_rational_point_enclosures(self):
        enc = evaluate(ExactScalar(Fraction(1, 2)), 64)
        assert enc.lo == enc.hi == Fraction(1, 2)
        enc = evaluate(ExactScalar(-3), 64)
        assert enc.lo == enc.hi == -3

    def test_sqrt_half_against_independent_recomputation(self):
        x = parse_scalar("1/2 * 2^(1/2)")  # 2^(-1/2)
        enc = evaluate(x, 64)
        with mpmath.workprec(256):
            ref = mpmath.mpf(2) ** mpmath.mpf("-0.5")
            assert Fraction(*mpmath.libmp.to_rational(ref._mpf_)) in enc

    def test_difference_of_equal_values(self):
        x = from_power_of_two(3, 5)
        enc = evaluate(x - x, 64)
        assert enc.lo == enc.hi == 0

    def test_precision_floor(self):
        with pytest.raises(ValueError):
            evaluate(ONE, 8)

    def test_width_shrinks_with_precision(self):
        x = from_power_of_two(2, 2)
        w64 = evaluate(x, 64).width
        w256 = evaluate(x, 256).width
        assert w256 < w64

    @given(scalars(), scalars())
    def test_monotone_consistency_add(self, x, y):
        ex, ey, es = evaluate(x, 96), evaluate(y, 96), evaluate(x + y, 96)
        assert es.intersects(ex + ey)

    @given(scalars(), scalars())
    def test_monotone_consistency_mul(self, x, y):
        ex, ey = evaluate(x, 96), evaluate(y, 96)
        products = [a * b for a in (ex.lo, ex.hi) for b in (ey.lo, ey.hi)]
        es = evaluate(x * y, 96)
        assert es.intersects(type(es)(min(products), max(products)))

    def test_soundness_zero_scalars(self):
        rng = random.Random(5150)
        for _ in range(50):
            x = random_scalar(rng)
            z = x - x
            assert z.is_zero()
            enc = evaluate(z, 256)
            assert 0 in enc
            assert enc.width < Fraction(1, 2 ** 200)

    def test_suite_nonzeros_exclude_zero(self):
        rng = random.Random(5151)
        for _ in range(50):
            x = random_scalar(rng)
            if x.is_zero():
                continue
            assert evaluate(x, 256).excludes_zero()
