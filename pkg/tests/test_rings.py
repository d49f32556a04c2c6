"""Polynomial core: fields, orders, arithmetic, parsing."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edlocus import (QQ, CoefficientField, InputError, MonomialOrder,
                     Polynomial, RingContext, parse_polynomial,
                     render_polynomial)

F7 = CoefficientField.prime(7)
F32003 = CoefficientField.prime(32003)


@pytest.fixture
def R():
    return RingContext(("x", "y", "z"))


def poly_strategy(ring, max_terms=6, max_exp=4):
    fld = ring.coefficient_field
    if fld.characteristic:
        coeff = st.integers(min_value=0, max_value=fld.characteristic - 1)
    else:
        coeff = st.fractions(min_value=-9, max_value=9, max_denominator=7)
    exp = st.tuples(*[st.integers(min_value=0, max_value=max_exp)
                      for _ in range(ring.nvars)])
    term = st.tuples(exp, coeff)
    return st.lists(term, max_size=max_terms).map(
        lambda ts: Polynomial.from_dict(ring, {e: fld.coerce(c) for e, c in
                                               dict(ts).items()}))


class TestCoefficientField:
    def test_rational_coerce(self):
        assert QQ.coerce(3) == Fraction(3)
        assert QQ.coerce(Fraction(2, 4)) == Fraction(1, 2)

    def test_prime_coerce_wraps(self):
        assert F7.coerce(-1) == 6
        assert F7.coerce(Fraction(1, 2)) == 4  # 2*4 = 8 = 1 mod 7

    def test_prime_coerce_bad_denominator(self):
        with pytest.raises(InputError):
            F7.coerce(Fraction(1, 7))

    def test_characteristic_must_be_prime(self):
        with pytest.raises(InputError):
            CoefficientField.prime(6)

    def test_inverse(self):
        assert F7.mul(F7.inv(3), 3) == 1
        assert QQ.inv(Fraction(-2, 3)) == Fraction(-3, 2)


class TestMonomialOrder:
    def test_lex_key(self):
        R = RingContext(("x", "y", "z"), order=MonomialOrder.lex())
        assert R.key((1, 0, 0)) > R.key((0, 5, 5))

    def test_grevlex_classic_comparison(self):
        # both degree 3: x*y^2 beats x^2*z because its last exponent is smaller
        R = RingContext(("x", "y", "z"))
        assert R.key((1, 2, 0)) > R.key((2, 0, 1))
        R_lex = R.with_order(MonomialOrder.lex())
        assert R_lex.key((1, 2, 0)) < R_lex.key((2, 0, 1))

    def test_grevlex_degree_first(self):
        R = RingContext(("x", "y"))
        assert R.key((0, 3)) > R.key((2, 0))

    def test_block_order_eliminates(self):
        R = RingContext(("t", "x", "y"), order=MonomialOrder.elimination(1))
        # any power of t beats anything t-free
        assert R.key((1, 0, 0)) > R.key((0, 9, 9))

    def test_weighted(self):
        R = RingContext(("x", "z"), order=MonomialOrder.weighted((1, 3)))
        assert R.key((0, 1)) > R.key((2, 0))
        assert R.key((3, 0)) == R.key((3, 0))

    def test_additivity(self):
        """Keys add when monomials multiply; reduction relies on this."""
        for order in (MonomialOrder.lex(), MonomialOrder.grevlex(),
                      MonomialOrder.elimination(2),
                      MonomialOrder.weighted((2, 1, 1, 5))):
            R = RingContext(("a", "b", "c", "d"), order=order)
            e1, e2 = (1, 2, 0, 3), (0, 1, 4, 1)
            combined = tuple(a + b for a, b in zip(e1, e2))
            summed = tuple(a + b for a, b in zip(R.key(e1), R.key(e2)))
            assert R.key(combined) == summed


class TestArithmetic:
    def test_binomial_square(self, R):
        p = parse_polynomial("(x + 1)^2 - x^2 - 2*x", R)
        assert p == R.one()

    def test_prime_field_product(self):
        S = RingContext(("x",), F7)
        p = parse_polynomial("3*x", S) * parse_polynomial("5*x", S)
        assert p == parse_polynomial("x^2", S)

    def test_mul_by_zero(self, R):
        assert (R.variable("x") * R.zero()).is_zero()

    def test_derivative(self, R):
        p = parse_polynomial("x^3*y + 2*x*z - 5", R)
        assert p.derivative("x") == parse_polynomial("3*x^2*y + 2*z", R)
        assert p.derivative("y") == parse_polynomial("x^3", R)

    def test_substitute(self, R):
        p = parse_polynomial("x^2 + y", R)
        q = p.substitute({"x": R.variable("y")}, R)
        assert q == parse_polynomial("y^2 + y", R)

    def test_substitute_into_smaller_ring(self, R):
        S = RingContext(("u",))
        p = parse_polynomial("x*y + y^2", R)
        u = S.variable("u")
        assert p.substitute({"x": u, "y": S.one()}, S) == \
            parse_polynomial("u + 1", S)

    def test_evaluate(self, R):
        p = parse_polynomial("x^2*y - z", R)
        assert p.evaluate([2, 3, 5]) == Fraction(7)

    def test_homogeneous_detection(self, R):
        assert parse_polynomial("x^2 + y*z", R).is_homogeneous()
        assert not parse_polynomial("x^2 + y", R).is_homogeneous()

    def test_degree_in(self, R):
        p = parse_polynomial("x^3*y + z", R)
        assert p.degree_in("x") == 3
        assert p.degree_in("z") == 1
        assert p.total_degree() == 4

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, data):
        ring = data.draw(st.sampled_from(
            [RingContext(("x", "y"), f) for f in (QQ, F7)]))
        s = poly_strategy(ring)
        a, b, c = data.draw(s), data.draw(s), data.draw(s)
        assert (a + b) * c == a * c + b * c
        assert a * (b * c) == (a * b) * c
        assert (a - a).is_zero()
        assert a * b == b * a

    @given(st.data())
    @settings(max_examples=40, deadline=None)
    def test_substitution_is_a_homomorphism(self, data):
        ring = RingContext(("x", "y"), F7)
        s = poly_strategy(ring, max_terms=4, max_exp=3)
        a, b, img = data.draw(s), data.draw(s), data.draw(s)
        bind = {"x": img}
        assert (a * b).substitute(bind, ring) == \
            a.substitute(bind, ring) * b.substitute(bind, ring)
        assert (a + b).substitute(bind, ring) == \
            a.substitute(bind, ring) + b.substitute(bind, ring)


class TestParser:
    def test_rational_coefficients(self, R):
        p = parse_polynomial("1/2*x + 3/4", R)
        assert p.terms == (((1, 0, 0), Fraction(1, 2)),
                           ((0, 0, 0), Fraction(3, 4)))

    def test_unary_minus_and_parens(self, R):
        p = parse_polynomial("-(x - y)*(x + y)", R)
        assert p == parse_polynomial("y^2 - x^2", R)

    def test_implicit_coefficient_one(self, R):
        assert parse_polynomial("x*y*z", R).leading_coefficient() == Fraction(1)

    def test_unknown_variable(self, R):
        with pytest.raises(InputError):
            parse_polynomial("x + w", R)

    def test_garbage(self, R):
        for bad in ("x +", "(x", "x ** 2", "3..5", ""):
            with pytest.raises(InputError):
                parse_polynomial(bad, R)

    def test_power_of_sum(self, R):
        assert parse_polynomial("(x + y)^3", R) == \
            parse_polynomial("x^3 + 3*x^2*y + 3*x*y^2 + y^3", R)

    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_render_parse_roundtrip(self, data):
        ring = data.draw(st.sampled_from(
            [RingContext(("x", "y", "z"), f) for f in (QQ, F32003)]))
        p = data.draw(poly_strategy(ring))
        assert parse_polynomial(render_polynomial(p), ring) == p

    def test_render_examples(self, R):
        cases = [
            ("0", "0"),
            ("x - y", "x-y"),
            ("-x + 1/3", "-x+1/3"),
            ("2*x^2*y", "2*x^2*y"),
        ]
        for src, expect in cases:
            assert render_polynomial(parse_polynomial(src, R)) == expect


class TestRingContext:
    def test_duplicate_variables_rejected(self):
        with pytest.raises(InputError):
            RingContext(("x", "x"))

    def test_bad_name_rejected(self):
        with pytest.raises(InputError):
            RingContext(("x", "2y"))

    def test_with_field(self, R):
        S = R.with_field(F7)
        assert S.coefficient_field == F7
        assert S.variables == R.variables

    def test_terms_are_sorted_descending(self, R):
        p = parse_polynomial("1 + x^2 + y", R)
        keys = p.keys()
        assert list(keys) == sorted(keys, reverse=True)
