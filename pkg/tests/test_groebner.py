"""Engine tests: division, bases, elimination, saturation, Hilbert data.

Expected values here are either worked by hand (the small division and
saturation oracles) or classical facts (twisted cubic, hypersurface
degrees); nothing below was produced by the code under test.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edlocus import (CoefficientField, EngineLimits, InputError,
                     MonomialOrder, Polynomial, QQ, ResourceExhausted,
                     RingContext, buchberger, eliminate, exact_divide,
                     hilbert_dim_degree, ideal, ideal_equal, ideal_quotient,
                     intersect, normal_form, parse_polynomial,
                     quotient_vector_dimension, saturate_element,
                     saturate_ideal, spoly)
from edlocus.groebner import IdealPresentation, _saturate_rabinowitsch

F7 = CoefficientField.prime(7)
F32003 = CoefficientField.prime(32003)
F31991 = CoefficientField.prime(31991)


@pytest.fixture
def R():
    return RingContext(("x", "y", "z"))


def gens_of(I):
    return [str(g) for g in I.groebner_basis()]


class TestDivision:
    def test_normal_form_oracle(self, R):
        # x^2*y + 1 = x*(x*y - 1) + (x + 1), worked by hand
        p = parse_polynomial("x^2*y + 1", R)
        d = parse_polynomial("x*y - 1", R)
        assert normal_form(p, [d]) == parse_polynomial("x + 1", R)

    def test_normal_form_zero_for_member(self, R):
        d = parse_polynomial("x - y", R)
        p = parse_polynomial("(x - y)*(x + 3*y^2)", R)
        assert normal_form(p, [d]).is_zero()

    def test_normal_form_is_tail_reduced(self, R):
        basis = [parse_polynomial("y^2 - 1", R)]
        p = parse_polynomial("x*y^2 + y^2", R)
        assert normal_form(p, basis) == parse_polynomial("x + 1", R)

    def test_exact_divide(self, R):
        n = parse_polynomial("x^2*y + x*y^2", R)
        assert exact_divide(n, parse_polynomial("x*y", R)) == \
            parse_polynomial("x + y", R)

    def test_exact_divide_rejects_remainder(self, R):
        with pytest.raises(InputError):
            exact_divide(parse_polynomial("x^2 + 1", R),
                         parse_polynomial("x", R))

    @given(st.data())
    @settings(max_examples=50, deadline=None)
    def test_exact_divide_inverts_multiplication(self, data):
        ring = RingContext(("x", "y"), F7)
        exp = st.tuples(st.integers(0, 3), st.integers(0, 3))
        coeff = st.integers(1, 6)
        terms = st.lists(st.tuples(exp, coeff), min_size=1, max_size=4)
        f = Polynomial.from_dict(ring, dict(data.draw(terms)))
        g = Polynomial.from_dict(ring, dict(data.draw(terms)))
        assert exact_divide(f * g, g) == f

    def test_spoly_cancels_heads(self, R):
        f = parse_polynomial("x^2*y - z", R)
        g = parse_polynomial("x*y^2 - 1", R)
        s = spoly(f, g)
        # heads x^2*y^2 cancel, leaving x - y*z
        assert s == parse_polynomial("x - y*z", R)


class TestBuchberger:
    def test_linear_system(self, R):
        I = ideal(R, ["x - y", "y - z"])
        assert gens_of(I) == ["y-z", "x-z"]

    def test_unit_ideal(self, R):
        I = ideal(R, ["x", "x + 1"])
        assert gens_of(I) == ["1"]

    def test_zero_generators_dropped(self, R):
        I = ideal(R, [R.zero(), R.variable("x")])
        assert gens_of(I) == ["x"]

    def test_twisted_cubic_reduced_basis(self):
        S = RingContext(("a", "b", "c", "d"))
        I = ideal(S, ["a*c - b^2", "a*d - b*c", "b*d - c^2"])
        gb = I.groebner_basis()
        assert [str(g) for g in gb] == ["c^2-b*d", "b*c-a*d", "b^2-a*c"]

    def test_basis_invariant_under_generator_presentation(self, R):
        """Scaling and reordering generators cannot change the output."""
        a = ideal(R, ["x^2 - y", "x*y - z"])
        b = ideal(R, ["3*x*y - 3*z", "-2*x^2 + 2*y"])
        assert a.groebner_basis() == b.groebner_basis()

    def test_redundant_generator_harmless(self, R):
        a = ideal(R, ["x - y", "y - z"])
        b = ideal(R, ["x - y", "y - z", "x - z", "x^2 - y*z"])
        assert ideal_equal(a, b)

    def test_katsura_head_sets_agree_across_primes(self):
        # same system over two primes: identical leading exponents
        def katsura(fld):
            S = RingContext(("u0", "u1", "u2", "u3"), fld)
            return ideal(S, [
                "u0 + 2*u1 + 2*u2 + 2*u3 - 1",
                "u0^2 + 2*u1^2 + 2*u2^2 + 2*u3^2 - u0",
                "2*u0*u1 + 2*u1*u2 + 2*u2*u3 - u1",
                "u1^2 + 2*u0*u2 + 2*u1*u3 - u2",
            ]).groebner_basis()
        heads_a = [g.leading_exponent() for g in katsura(F32003)]
        heads_b = [g.leading_exponent() for g in katsura(F31991)]
        assert heads_a == heads_b

    def test_members_reduce_to_zero(self, R):
        I = ideal(R, ["x^2 + y", "y^3 - z", "x*z - y"])
        gb = I.groebner_basis()
        f = parse_polynomial(
            "(x^2 + y)*(x + 7) - (y^3 - z)*y + (x*z - y)*(z - 1)", R)
        assert normal_form(f, gb).is_zero()

    @given(st.integers(0, 10**6))
    @settings(max_examples=25, deadline=None)
    def test_every_spair_reduces_to_zero(self, seed):
        """Buchberger criterion on the output itself."""
        import random
        rng = random.Random(seed)
        ring = RingContext(("x", "y", "z"), F7)
        gens = []
        for _ in range(rng.randint(1, 3)):
            terms = {}
            for _ in range(rng.randint(1, 4)):
                e = tuple(rng.randint(0, 2) for _ in range(3))
                terms[e] = rng.randint(1, 6)
            gens.append(Polynomial.from_dict(ring, terms))
        gb = buchberger([g for g in gens if not g.is_zero()], ring=ring)
        if not gb:
            return
        for i in range(len(gb)):
            for j in range(i + 1, len(gb)):
                assert normal_form(spoly(gb[i], gb[j]), gb).is_zero()
        for g in gens:
            assert normal_form(g, gb).is_zero()

    def test_pair_cap_raises(self):
        S = RingContext(("x0", "x1", "x2", "x3", "x4"), F32003)
        I = ideal(S, [
            "x0 + 2*x1 + 2*x2 + 2*x3 + 2*x4 - 1",
            "x0^2 + 2*x1^2 + 2*x2^2 + 2*x3^2 + 2*x4^2 - x0",
            "2*x0*x1 + 2*x1*x2 + 2*x2*x3 + 2*x3*x4 - x1",
            "x1^2 + 2*x0*x2 + 2*x1*x3 + 2*x2*x4 - x2",
            "2*x1*x2 + 2*x0*x3 + 2*x1*x4 - x3"])
        with pytest.raises(ResourceExhausted):
            I.groebner_basis(limits=EngineLimits(max_pairs=3))

    def test_degree_cap_raises(self, R):
        # leads x^2 and x*y share x, so the degree-3 pair must be processed
        I = ideal(R, ["x^2 - y", "x*y - z"])
        with pytest.raises(ResourceExhausted):
            I.groebner_basis(limits=EngineLimits(max_degree=2))

    def test_cache_is_reused(self, R):
        I = ideal(R, ["x^2 - y"])
        assert I.groebner_basis() is I.groebner_basis()


class TestElimination:
    def test_space_curve_projection(self, R):
        I = ideal(R, ["x - y^2", "z - y^3"])
        E = eliminate(I, ["y"])
        assert E.ring.variables == ("x", "z")
        assert gens_of(E) == ["x^3-z^2"]

    def test_nothing_to_eliminate(self, R):
        I = ideal(R, ["x - y"])
        assert eliminate(I, []) is I

    def test_eliminating_absent_variable(self, R):
        I = ideal(R, ["x - y"])
        E = eliminate(I, ["z"])
        assert E.ring.variables == ("x", "y")
        assert gens_of(E) == ["x-y"]

    def test_full_contraction_of_unit(self, R):
        E = eliminate(ideal(R, ["x", "x - 1"]), ["x"])
        assert gens_of(E) == ["1"]

    def test_order_of_kept_variables_preserved(self):
        S = RingContext(("a", "b", "c", "d"))
        E = eliminate(ideal(S, ["b - a^2", "d - c"]), ["b", "d"])
        assert E.ring.variables == ("a", "c")
        assert E.is_zero()


class TestIdealArithmetic:
    def test_intersection_of_principal_ideals(self, R):
        A = ideal(R, ["x"])
        B = ideal(R, ["y"])
        assert gens_of(intersect(A, B)) == ["x*y"]

    def test_intersection_nested(self, R):
        A = ideal(R, ["x^2"])
        B = ideal(R, ["x"])
        assert gens_of(intersect(A, B)) == ["x^2"]

    def test_quotient_by_element(self, R):
        Q = ideal_quotient(ideal(R, ["x^2*y"]), ideal(R, ["x"]))
        assert gens_of(Q) == ["x*y"]

    def test_quotient_by_ideal(self, R):
        # (<x*y, x*z> : <y, z>) = <x>: x*y and x*z both land inside
        Q = ideal_quotient(ideal(R, ["x*y", "x*z"]), ideal(R, ["y", "z"]))
        assert gens_of(Q) == ["x"]

    def test_quotient_of_containing_ideal_is_unit(self, R):
        Q = ideal_quotient(ideal(R, ["x"]), ideal(R, ["x"]))
        assert gens_of(Q) == ["1"]


class TestSaturation:
    def test_element_saturation_strips_component(self, R):
        I = ideal(R, ["x*y", "x*z"])
        S = saturate_element(I, R.variable("x"))
        assert gens_of(S) == ["z", "y"]

    def test_ideal_saturation_keeps_multiplicity(self, R):
        # (<x^2*y, x^2*z> : <y,z>^inf) = <x^2>, not <x>
        I = ideal(R, ["x^2*y", "x^2*z"])
        S = saturate_ideal(I, ideal(R, ["y", "z"]))
        assert gens_of(S) == ["x^2"]

    def test_saturation_by_member_gives_unit(self, R):
        I = ideal(R, ["x"])
        S = saturate_ideal(I, ideal(R, ["x"]))
        assert gens_of(S) == ["1"]

    def test_saturation_by_nonvanishing_is_identity(self, R):
        I = ideal(R, ["x^2 + y^2 + z^2"])
        S = saturate_element(I, R.variable("x"))
        assert ideal_equal(S, I)

    def test_homogeneous_route_matches_generic_route(self, R):
        """Both saturation algorithms must give the same ideal."""
        cases = [
            (["x*y", "x*z"], "x"),
            (["x^2*y - y^3", "x*z^2"], "z"),
            (["x^3 - y^2*z"], "x + y"),
            (["x*y - z^2", "y^2 - x*z"], "y"),
        ]
        for gens, f in cases:
            I = ideal(R, gens)
            g = parse_polynomial(f, R)
            fast = saturate_element(I, g)
            slow = _saturate_rabinowitsch(I, g, None)
            assert ideal_equal(fast, slow), (gens, f)

    def test_inhomogeneous_saturation(self, R):
        # (x - 1) forces the x = 1 sheet; saturating by x keeps it
        I = ideal(R, ["x*(x - 1)", "y*(x - 1)"])
        S = saturate_element(I, R.variable("x"))
        assert gens_of(S) == ["x-1"]


class TestHilbert:
    def test_unit_ideal(self, R):
        h = hilbert_dim_degree(ideal(R, ["2"]))
        assert (h.krull_dimension, h.degree) == (-1, 0)
        h2 = hilbert_dim_degree(ideal(R, ["x", "x - 1"]), homogenize=True)
        assert (h2.krull_dimension, h2.degree) == (-1, 0)

    def test_irrelevant_maximal_ideal(self, R):
        # the origin as a cone: dimension 0, degree 1
        h = hilbert_dim_degree(ideal(R, ["x", "y", "z"]))
        assert (h.krull_dimension, h.degree) == (0, 1)

    def test_zero_ideal(self, R):
        h = hilbert_dim_degree(IdealPresentation(R, ()))
        assert h.krull_dimension == 3
        assert h.degree == 1

    def test_hypersurface(self, R):
        h = hilbert_dim_degree(ideal(R, ["x^4 - y^3*z + z^4"]))
        assert h.krull_dimension == 2
        assert h.degree == 4
        assert h.projective_dimension == 1

    def test_twisted_cubic(self):
        S = RingContext(("a", "b", "c", "d"))
        I = ideal(S, ["a*c - b^2", "a*d - b*c", "b*d - c^2"])
        h = hilbert_dim_degree(I)
        assert (h.projective_dimension, h.degree) == (1, 3)

    def test_point_pair_on_line(self):
        S = RingContext(("s", "t"))
        h = hilbert_dim_degree(ideal(S, ["s^2 - t^2"]))
        assert (h.projective_dimension, h.degree) == (0, 2)

    def test_affine_needs_flag(self, R):
        I = ideal(R, ["x^2 - y"])
        with pytest.raises(InputError):
            hilbert_dim_degree(I)
        h = hilbert_dim_degree(I, homogenize=True)
        assert h.homogenized
        assert h.krull_dimension == 2  # affine surface in 3-space
        assert h.degree == 2

    def test_affine_point_count(self, R):
        I = ideal(R, ["x^2 - 1", "y^3 - 1", "z - x*y"])
        assert quotient_vector_dimension(I) == 6

    def test_positive_dimension_returns_none(self, R):
        assert quotient_vector_dimension(ideal(R, ["x^2 - y"])) is None

    def test_numerator_of_complete_intersection(self, R):
        # two generic quadrics: numerator (1 - t^2)^2
        h = hilbert_dim_degree(ideal(R, ["x^2 - y*z", "y^2 - x*z"]))
        assert h.numerator == (1, 0, -2, 0, 1)
        assert h.degree == 4
