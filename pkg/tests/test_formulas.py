"""Closed-form invariants: determinantal codim/degree/defect, compound
matrices, slice degrees, Chern conversion, and Kalman-type coefficients.

Every frozen number below is either a classical value (Segre and
Grassmannian degrees, Veronese data) or was recomputed symbolically with
the Groebner route before being written down.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from edlocus.errors import InputError
from edlocus.formulas import (ChernInput, DeterminantalSpec, MatrixFlavor,
                              alpha_coefficient, chern_to_multidegrees,
                              ci_chern_degree, ci_conditional_degree,
                              compound_matrix, compound_symmetry_membership,
                              data_locus_degree_from_multidegrees,
                              determinantal_invariants,
                              determinantal_relative_defect, kalman_degree)
from edlocus.formulas import _kalman_expansion
from edlocus.geometry import VarietyPair
from edlocus.duality import (pair_multidegrees, relative_conormal_ideal,
                             relative_dual_ideal)
from edlocus.groebner import hilbert_dim_degree, ideal
from edlocus.rings import QQ, CoefficientField, RingContext

F32003 = CoefficientField.prime(32003)

GENERAL = MatrixFlavor.GENERAL
SYMMETRIC = MatrixFlavor.SYMMETRIC
SKEW = MatrixFlavor.SKEW_SYMMETRIC


class TestDeterminantalInvariants:
    def test_three_by_three_determinant(self):
        inv = determinantal_invariants(DeterminantalSpec(2, 2, 2))
        assert (inv.codim, inv.degree, inv.defect) == (1, 3, 3)
        assert inv.ambient_dim == 8 and inv.dim == 7

    def test_rank_one_three_by_three(self):
        inv = determinantal_invariants(DeterminantalSpec(2, 2, 1))
        assert (inv.codim, inv.degree, inv.defect) == (4, 6, 0)

    def test_rank_two_four_by_four(self):
        # classical degree of the rank <= 2 locus of 4x4 matrices
        inv = determinantal_invariants(DeterminantalSpec(3, 3, 2))
        assert (inv.codim, inv.degree, inv.defect) == (4, 20, 3)

    def test_rectangular_segre(self):
        # P^1 x P^2 in P^5: degree binom(3,1), dual defect 1
        inv = determinantal_invariants(DeterminantalSpec(1, 2, 1))
        assert inv.ambient_dim == 5
        assert (inv.codim, inv.degree, inv.defect) == (2, 3, 1)

    def test_segre_degrees_are_binomials(self):
        # rank-one loci are Segre products; degree binom(M+N, M)
        from math import comb
        for M in range(4):
            for N in range(M, 5):
                inv = determinantal_invariants(DeterminantalSpec(M, N, 1))
                assert inv.degree == comb(M + N, M)

    def test_full_rank_bound_fills_ambient(self):
        inv = determinantal_invariants(DeterminantalSpec(2, 2, 3))
        assert (inv.codim, inv.degree) == (0, 1)
        assert inv.defect == inv.ambient_dim

    def test_veronese_surface(self):
        inv = determinantal_invariants(DeterminantalSpec(2, 2, 1, SYMMETRIC))
        assert inv.ambient_dim == 5
        assert inv.dim == 2 and inv.degree == 4 and inv.defect == 0

    def test_symmetric_determinant(self):
        inv = determinantal_invariants(DeterminantalSpec(2, 2, 2, SYMMETRIC))
        assert (inv.codim, inv.degree, inv.defect) == (1, 3, 2)

    def test_skew_plucker_quadric(self):
        inv = determinantal_invariants(DeterminantalSpec(3, 3, 2, SKEW))
        assert inv.ambient_dim == 5
        assert (inv.codim, inv.degree, inv.defect) == (1, 2, 0)

    def test_skew_pfaffian_hypersurface(self):
        inv = determinantal_invariants(DeterminantalSpec(5, 5, 4, SKEW))
        assert inv.ambient_dim == 14
        assert (inv.codim, inv.degree, inv.defect) == (1, 3, 5)

    def test_skew_grassmannians(self):
        inv = determinantal_invariants(DeterminantalSpec(5, 5, 2, SKEW))
        assert (inv.codim, inv.degree, inv.defect) == (6, 14, 0)
        inv = determinantal_invariants(DeterminantalSpec(4, 4, 2, SKEW))
        assert (inv.codim, inv.degree, inv.defect) == (3, 5, 2)

    def test_skew_odd_rank_reduces(self):
        odd = determinantal_invariants(DeterminantalSpec(4, 4, 3, SKEW))
        even = determinantal_invariants(DeterminantalSpec(4, 4, 2, SKEW))
        assert odd.rank_reduced and not even.rank_reduced
        assert (odd.codim, odd.degree, odd.defect) == \
            (even.codim, even.degree, even.defect)

    def test_skew_rank_one_is_empty(self):
        with pytest.raises(InputError):
            determinantal_invariants(DeterminantalSpec(3, 3, 1, SKEW))

    def test_invalid_specs(self):
        with pytest.raises(InputError):
            DeterminantalSpec(3, 2, 1)  # M > N
        with pytest.raises(InputError):
            DeterminantalSpec(2, 2, 0)
        with pytest.raises(InputError):
            DeterminantalSpec(2, 2, 4)
        with pytest.raises(InputError):
            DeterminantalSpec(2, 3, 1, SYMMETRIC)

    def test_symmetric_dual_matches_symbolic_route(self):
        # dual of the symmetric determinant hypersurface recovers the
        # rank-one invariants (dim 2, degree 4) computed by elimination
        ring = RingContext(("a11", "a12", "a13", "a22", "a23", "a33"),
                           F32003)
        det = ("a11*a22*a33 - a11*a23^2 - a12^2*a33 "
               "+ 2*a12*a13*a23 - a13^2*a22")
        I = ideal(ring, [det])
        dual = relative_dual_ideal(relative_conormal_ideal(VarietyPair(I, I)))
        hd = hilbert_dim_degree(dual)
        expected = determinantal_invariants(
            DeterminantalSpec(2, 2, 1, SYMMETRIC))
        assert hd.projective_dimension == expected.dim
        assert hd.degree == expected.degree

    def test_skew_quadric_dual_matches_symbolic_route(self):
        ring = RingContext(("p01", "p02", "p03", "p12", "p13", "p23"),
                           F32003)
        I = ideal(ring, ["p01*p23 - p02*p13 + p03*p12"])
        dual = relative_dual_ideal(relative_conormal_ideal(VarietyPair(I, I)))
        hd = hilbert_dim_degree(dual)
        expected = determinantal_invariants(DeterminantalSpec(3, 3, 2, SKEW))
        assert hd.projective_dimension == expected.ambient_dim - 1 - expected.defect
        assert hd.degree == 2


class TestRelativeDefectProfile:
    def test_square_full_slice(self):
        profile = determinantal_relative_defect(DeterminantalSpec(3, 3, 2), 3, 3)
        assert profile.defect == 3
        assert profile.codim_in_dual == 0
        assert profile.full_dual

    def test_small_row_space_empties_the_dual(self):
        assert determinantal_relative_defect(
            DeterminantalSpec(3, 3, 2), 0, 3) is None

    def test_rank_one_full_slice(self):
        profile = determinantal_relative_defect(DeterminantalSpec(2, 2, 1), 2, 2)
        assert (profile.defect, profile.codim_in_dual) == (0, 0)
        assert profile.full_dual

    def test_first_row_zero_slice(self):
        # matches the symbolically computed multidegree window for the
        # 3x3 determinant against matrices with vanishing first row:
        # values (1, 2, 1) starting at index 3, so the relative dual has
        # dimension 2 inside the dimension-4 classical dual
        profile = determinantal_relative_defect(DeterminantalSpec(2, 2, 2), 2, 1)
        assert profile.defect == 3
        assert profile.codim_in_dual == 2
        assert not profile.full_dual

    def test_row_space_overflow_term(self):
        # rectangular format: l1 beyond M activates the overflow summand
        profile = determinantal_relative_defect(DeterminantalSpec(1, 3, 1), 3, 1)
        assert profile.defect == 2
        assert profile.codim_in_dual == 0
        assert profile.full_dual

    def test_only_general_flavor(self):
        with pytest.raises(InputError):
            determinantal_relative_defect(
                DeterminantalSpec(2, 2, 1, SYMMETRIC), 1, 1)

    def test_slice_bounds(self):
        with pytest.raises(InputError):
            determinantal_relative_defect(DeterminantalSpec(2, 3, 1), 4, 1)
        with pytest.raises(InputError):
            determinantal_relative_defect(DeterminantalSpec(2, 3, 1), 1, 3)


def _fraction_matrix(rows):
    return [[Fraction(v) for v in row] for row in rows]


class TestCompoundMatrices:
    def test_order_one_is_the_matrix(self):
        A = _fraction_matrix([[1, 2], [3, 4]])
        assert compound_matrix(QQ, A, 1) == A

    def test_top_order_is_the_determinant(self):
        A = _fraction_matrix([[1, 2], [3, 4]])
        assert compound_matrix(QQ, A, 2) == [[Fraction(-2)]]

    def test_hand_expanded_three_by_three(self):
        A = _fraction_matrix([[1, 2, 0], [0, 1, 0], [0, 0, 1]])
        expected = _fraction_matrix([[1, 0, 0], [0, 1, 2], [0, 0, 1]])
        assert compound_matrix(QQ, A, 2) == expected

    def test_oversized_order_is_zero(self):
        A = _fraction_matrix([[1, 2], [3, 4]])
        assert compound_matrix(QQ, A, 3) == []

    def test_order_zero(self):
        assert compound_matrix(QQ, [[Fraction(5)]], 0) == [[Fraction(1)]]

    def test_negative_order(self):
        with pytest.raises(InputError):
            compound_matrix(QQ, [[Fraction(1)]], -1)

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_cauchy_binet(self, data):
        # C_r(AB) == C_r(A) C_r(B)
        n = data.draw(st.integers(2, 4), label="size")
        r = data.draw(st.integers(1, n), label="order")
        entry = st.integers(-4, 4)
        A = data.draw(st.lists(st.lists(entry, min_size=n, max_size=n),
                               min_size=n, max_size=n), label="A")
        B = data.draw(st.lists(st.lists(entry, min_size=n, max_size=n),
                               min_size=n, max_size=n), label="B")
        A = _fraction_matrix(A)
        B = _fraction_matrix(B)
        AB = [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)]
              for i in range(n)]
        ca, cb = compound_matrix(QQ, A, r), compound_matrix(QQ, B, r)
        m = len(ca)
        product = [[sum(ca[i][k] * cb[k][j] for k in range(m))
                    for j in range(m)] for i in range(m)]
        assert compound_matrix(QQ, AB, r) == product

    def test_symmetric_rank_two_membership(self):
        # a rank-2 symmetric matrix, v v^T + w w^T, passes the corank-1 test
        v, w = [1, 2, 3], [0, 1, -1]
        B = [[Fraction(v[i] * v[j] + w[i] * w[j]) for j in range(3)]
             for i in range(3)]
        assert compound_symmetry_membership(QQ, B, 1)

    def test_skew_matrix_membership(self):
        # skew 3x3 matrices have rank 2 and symmetric adjugate
        B = _fraction_matrix([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]])
        assert compound_symmetry_membership(QQ, B, 1)

    def test_generic_rank_two_fails_membership(self):
        B = _fraction_matrix([[1, 2, 3], [4, 5, 6], [5, 7, 9]])
        assert not compound_symmetry_membership(QQ, B, 1)

    def test_wrong_rank_fails_membership(self):
        B = _fraction_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert not compound_symmetry_membership(QQ, B, 1)

    def test_membership_needs_square(self):
        with pytest.raises(InputError):
            compound_symmetry_membership(QQ, _fraction_matrix([[1, 2]]), 1)


class TestCiConditionalDegree:
    def test_line_on_a_quadric(self):
        assert ci_conditional_degree(1, 1, [2]) == 2

    def test_line_on_a_degree_d_hypersurface(self):
        for d in range(1, 8):
            assert ci_conditional_degree(1, 1, [d]) == d

    def test_point_slice(self):
        assert ci_conditional_degree(7, 0, [3, 4]) == 7

    def test_matches_brute_force_sum(self):
        from itertools import product
        deg_Z, d, degrees = 3, 4, [2, 3, 2]
        expected = deg_Z * sum(
            (degrees[0] - 1) ** i * (degrees[1] - 1) ** j
            * (degrees[2] - 1) ** k
            for i, j, k in product(range(d + 1), repeat=3)
            if i + j + k <= d)
        assert ci_conditional_degree(deg_Z, d, degrees) == expected

    def test_input_guards(self):
        with pytest.raises(InputError):
            ci_conditional_degree(0, 1, [2])
        with pytest.raises(InputError):
            ci_conditional_degree(1, -1, [2])
        with pytest.raises(InputError):
            ci_conditional_degree(1, 1, [0])


class TestChernConversion:
    def test_plane_conic(self):
        assert chern_to_multidegrees(ChernInput(1, (2, 2))) == (2, 2)

    def test_plane_cubic(self):
        assert chern_to_multidegrees(ChernInput(1, (3, 0))) == (6, 3)

    def test_point(self):
        assert chern_to_multidegrees(ChernInput(0, (1,))) == (1,)

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            ChernInput(2, (1, 2))

    def test_degree_must_be_positive(self):
        with pytest.raises(InputError):
            ChernInput(1, (0, 1))

    @pytest.mark.parametrize("equation,chern", [
        ("x0*x2 - x1^2", (2, 2)),
        ("x0^3 + x1^3 + x2^3", (3, 0)),
    ])
    def test_matches_symbolic_multidegrees(self, equation, chern):
        ring = RingContext(("x0", "x1", "x2"), QQ)
        I = ideal(ring, [equation])
        pair = VarietyPair(I, I)
        mdv = pair_multidegrees(pair, relative_conormal_ideal(pair))
        assert tuple(mdv.full()) == chern_to_multidegrees(ChernInput(1, chern))


class TestSliceDegrees:
    def test_alpha_at_codim_zero(self):
        for n in range(8):
            for k in range(n + 1):
                assert alpha_coefficient(n, 0, k) == 2 ** (n - k + 1) - 1

    def test_alpha_point_slice(self):
        assert alpha_coefficient(3, 3, 0) == 1
        assert all(alpha_coefficient(3, 3, k) == 0 for k in range(1, 4))

    def test_alpha_bounds(self):
        with pytest.raises(InputError):
            alpha_coefficient(2, 3, 0)

    def test_point_slice_degree(self):
        # e = n keeps only the variety degree
        assert ci_chern_degree(5, 3, 3, (4, 0, 0, 0)) == 20

    @pytest.mark.parametrize("chern,def_X", [((2, 2), 0), ((3, 0), 0)])
    def test_chern_route_equals_multidegree_route(self, chern, def_X):
        n = 1
        delta = chern_to_multidegrees(ChernInput(n, chern))
        for e in range(n + 1):
            for deg_Y in (1, 2, 5):
                assert ci_chern_degree(deg_Y, n, e, chern) == \
                    data_locus_degree_from_multidegrees(deg_Y, e, def_X, delta)

    def test_determinant_tail_sum(self):
        delta = (0, 0, 0, 6, 12, 12, 6, 3)
        assert data_locus_degree_from_multidegrees(1, 1, 3, delta) == 39

    def test_discriminant_tail_sum(self):
        assert data_locus_degree_from_multidegrees(2, 2, 1, (0, 3, 4)) == 8

    def test_slice_codim_beyond_dimension(self):
        assert data_locus_degree_from_multidegrees(3, 9, 1, (0, 3, 4)) == 0

    def test_guards(self):
        with pytest.raises(InputError):
            data_locus_degree_from_multidegrees(0, 1, 0, (1,))
        with pytest.raises(InputError):
            data_locus_degree_from_multidegrees(1, -1, 0, (1,))


class TestKalmanDegree:
    def test_product_of_line_and_plane(self):
        assert kalman_degree((1, 2), (0, 1)) == 4

    def test_single_factor_is_literal(self):
        # one factor: the expansion collapses to sum_a h^a t^(n-a)
        for n in range(5):
            for d in range(n + 1):
                assert kalman_degree((n,), (d,)) == 1

    def test_bracketing_coefficients(self):
        for dims in ((1, 2), (2, 2), (1, 1, 2)):
            zeros = tuple(0 for _ in dims)
            assert kalman_degree(dims, zeros) >= 1
            assert kalman_degree(dims, dims) == 1

    def test_expansion_matches_rational_function(self):
        # evaluate both sides at rational points; the denominator
        # (t_hat + h) - t_i never vanishes at the chosen points
        dims = (2, 1, 2)
        expansion = _kalman_expansion(dims)
        points = [(Fraction(2), Fraction(3), Fraction(5), Fraction(1)),
                  (Fraction(1, 2), Fraction(4), Fraction(7), Fraction(3)),
                  (Fraction(-3), Fraction(2), Fraction(9), Fraction(2))]
        for point in points:
            ts, h = point[:-1], point[-1]
            value = Fraction(1)
            for i, ni in enumerate(dims):
                t_hat = sum(ts[j] for j in range(len(dims)) if j != i)
                num = (t_hat + h) ** (ni + 1) - ts[i] ** (ni + 1)
                den = (t_hat + h) - ts[i]
                assert den != 0
                value *= num / den
            direct = sum(
                c * h ** e[-1]
                * Fraction(1) * ts[0] ** e[0] * ts[1] ** e[1] * ts[2] ** e[2]
                for e, c in expansion.items())
            assert direct == value

    def test_guards(self):
        with pytest.raises(InputError):
            kalman_degree((1, 2), (0,))
        with pytest.raises(InputError):
            kalman_degree((1, 2), (0, 3))
        with pytest.raises(InputError):
            kalman_degree((), ())
