import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticework import GF, QQ, arith, expand, parse_field, parse_scalar, valuation
from latticework.errors import DivisionByZero, FieldMismatch, ScalarSyntaxError
from latticework.scalar import LaurentScalar, format_scalar

from strategies import F5, scalars

P = parse_scalar


def convolve(a, b, n):
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


class TestParse:
    def test_laurent_sum(self):
        x = P("t^-1 + 1")
        assert x.shift == -1
        assert x.num == QQ.poly([1, 1])
        assert x.den == QQ.poly([1])

    def test_zero_is_canonical(self):
        z = P("0")
        assert (z.shift, z.num, z.den) == (0, QQ.poly([]), QQ.poly([1]))
        assert z == P("t - t") == LaurentScalar.zero(QQ)

    def test_rational_function(self):
        x = P("(1)/(1-t)")
        assert (x.shift, x.num, x.den) == (0, QQ.poly([1]), QQ.poly([1, -1]))

    def test_common_factors_cancel(self):
        x = P("(t^2 - 1)/(t - 1)")
        assert x == P("t + 1")
        assert x.den == QQ.poly([1])

    def test_t_power_in_denominator_moves_to_shift(self):
        x = P("(1)/(t^2 + t^3)")
        assert x.shift == -2
        assert x.den == QQ.poly([1, 1])

    @pytest.mark.parametrize("text", ["1/2*t^3 - 2/3", "-t", "3*t", "t^-4 + t^4", "(2*t)/(1 + t)"])
    def test_accepted_forms(self, text):
        x = P(text)
        assert P(format_scalar(x)) == x

    def test_syntax_error_reports_position(self):
        with pytest.raises(ScalarSyntaxError, match="position 2"):
            P("t^^2")

    @pytest.mark.parametrize("text", ["", "1 +", "t^", "(1)/(0)", "2**t", "(1/(2)"])
    def test_rejects(self, text):
        with pytest.raises((ScalarSyntaxError, DivisionByZero)):
            P(text)

    def test_prime_field(self):
        x = P("7*t + 5", F5)
        assert x == P("2*t", F5)
        assert valuation(x) == 1
        assert parse_field("Fp:5") is GF(5)

    def test_bad_field(self):
        with pytest.raises(ValueError):
            parse_field("Fp:6")


class TestValuation:
    @pytest.mark.parametrize(
        "text, v",
        [("(t^2)/(1 + t)", 2), ("0", math.inf), ("t^-1 + 1", -1), ("(1)/(1-t)", 0), ("5", 0)],
    )
    def test_examples(self, text, v):
        assert valuation(P(text)) == v


class TestArith:
    def test_examples(self):
        t, tinv = P("t"), P("t^-1")
        assert arith(t, tinv, "mul") == P("1")
        assert arith(tinv, -tinv, "add") == P("0")
        assert arith(P("1"), P("1 - t"), "div") == P("(1)/(1-t)")
        assert arith(t, t, "sub").is_zero()

    def test_division_by_zero(self):
        with pytest.raises(DivisionByZero):
            arith(P("1"), P("0"), "div")

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            arith(P("1"), P("1"), "pow")

    def test_mixed_fields_rejected(self):
        with pytest.raises(FieldMismatch):
            P("1") + P("1", F5)

    def test_int_and_fraction_coercion(self):
        x = P("t")
        assert x * 2 == P("2*t")
        assert 1 - x == P("1 - t")
        assert x / Fraction(1, 2) == P("2*t")

    def test_power(self):
        assert P("1 + t") ** -1 == P("(1)/(1+t)")
        assert P("t") ** 0 == P("1")


class TestExpand:
    def test_examples(self):
        assert expand(P("(1)/(1-t)"), 0, 3) == [1, 1, 1, 1]
        assert expand(P("t^-1 + 1"), -1, 1) == [1, 1, 0]

    def test_below_valuation_is_zero(self):
        assert expand(P("t^2"), -2, 2) == [0, 0, 0, 0, 1]

    def test_bad_window(self):
        with pytest.raises(ValueError):
            expand(P("1"), 3, 1)

    @given(scalars(allow_zero=False), st.integers(0, 6))
    def test_times_inverse_is_one(self, x, n):
        assert expand(x * x.inverse(), 0, n) == [1] + [0] * n


@settings(max_examples=1000)
@given(scalars(), scalars())
def test_valuation_laws(x, y):
    vx, vy = valuation(x), valuation(y)
    assert valuation(x * y) == vx + vy
    s = valuation(x + y)
    assert s >= min(vx, vy)
    if vx != vy:
        assert s == min(vx, vy)


@given(scalars(window=0), scalars(window=0), st.integers(1, 6))
def test_expand_is_a_ring_homomorphism(x, y, n):
    # Integral inputs: truncated series multiply by convolution.
    ex, ey = expand(x, 0, n - 1), expand(y, 0, n - 1)
    assert expand(x * y, 0, n - 1) == convolve(ex, ey, n)
    assert expand(x + y, 0, n - 1) == [a + b for a, b in zip(ex, ey)]


@given(scalars())
def test_parse_print_roundtrip(x):
    assert P(format_scalar(x)) == x
    assert P(str(x)) == x


@given(scalars(F5), scalars(F5))
def test_prime_field_arithmetic(x, y):
    assert (x + y) - y == x
    if not y.is_zero():
        assert (x * y) / y == x
    assert P(format_scalar(x), F5) == x


@given(scalars())
def test_hash_matches_equality(x):
    y = P(format_scalar(x))
    assert hash(x) == hash(y)


def test_pickle_roundtrip():
    import pickle

    x = P("(1 + t)/(1 - 2*t)", F5)
    assert pickle.loads(pickle.dumps(x)) == x
