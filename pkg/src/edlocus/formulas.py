"""Closed-form invariants: rank-bounded matrix loci, compound matrices,
complete-intersection data-locus degrees, Chern-class conversion, and
Kalman-type coefficient extraction.

Everything in this module is exact integer arithmetic (Fraction for the
intermediate products, int for every result).  These values are the
independent cross-checks for the Groebner route: wherever both are defined
they must agree, and the regression suites assert exactly that.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Sequence

from .errors import InputError
from .matrices import det_field, matrix_rank


class MatrixFlavor(enum.Enum):
    GENERAL = "general"
    SYMMETRIC = "symmetric"
    SKEW_SYMMETRIC = "skew-symmetric"


@dataclass(frozen=True)
class DeterminantalSpec:
    """A locus of (bound_rows+1) x (bound_cols+1) matrices of rank <= r.

    ``M`` and ``N`` are the projective dimensions of the row-target and
    column-source factors, so the matrices have M+1 rows and N+1 columns
    and M <= N.  The symmetric and skew-symmetric flavors live inside the
    square format M == N and carry their own ambient projective space (the
    span of the symmetric, respectively skew-symmetric, matrices).
    """

    M: int
    N: int
    r: int
    flavor: MatrixFlavor = MatrixFlavor.GENERAL

    def __post_init__(self) -> None:
        if self.M < 0 or self.N < self.M:
            raise InputError("matrix format needs 0 <= M <= N")
        if not 1 <= self.r <= self.M + 1:
            raise InputError(
                f"rank bound {self.r} outside the valid range 1..{self.M + 1}")
        if self.flavor is not MatrixFlavor.GENERAL and self.M != self.N:
            raise InputError(
                "symmetric and skew-symmetric formats must be square")


@dataclass(frozen=True)
class DeterminantalInvariants:
    """Codimension, degree, and dual defect of a rank-bounded locus.

    ``ambient_dim`` is the projective dimension of the matrix space the
    flavor lives in.  ``rank_reduced`` flags that an odd skew-symmetric rank
    bound was silently replaced by the even bound one below it (the two loci
    coincide, since skew-symmetric matrices have even rank).
    """

    ambient_dim: int
    codim: int
    degree: int
    defect: int
    rank_reduced: bool = False

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.codim


def _general_degree(m: int, n: int, r: int) -> int:
    # Giambelli-style product for rank <= r maps between C^m and C^n, m <= n
    value = Fraction(1)
    for i in range(n - r):
        value *= Fraction(factorial(m + i) * factorial(i),
                          factorial(r + i) * factorial(m - r + i))
    assert value.denominator == 1
    return int(value)


def _symmetric_degree(N: int, r: int) -> int:
    value = Fraction(1)
    for i in range(N - r + 1):
        value *= Fraction(comb(N + 1 + i, N + 1 - r - i), comb(2 * i + 1, i))
    assert value.denominator == 1
    return int(value)


def _skew_degree(N: int, r: int) -> int:
    # r even and r <= N here
    value = Fraction(1, 2 ** (N - r))
    for i in range(N - r):
        value *= Fraction(comb(N + 1 + i, N - r - i), comb(2 * i + 1, i))
    assert value.denominator == 1
    return int(value)


def determinantal_invariants(spec: DeterminantalSpec) -> DeterminantalInvariants:
    """Exact codimension, degree, and dual defect for a rank-bounded locus.

    The dual of the general rank <= r locus is the rank <= M+1-r locus of
    the transposed format, and the symmetric/skew duals are again symmetric/
    skew rank loci; the defect below is read off those identifications.  A
    rank bound that makes the locus fill its ambient space reports degree 1
    and defect equal to the ambient dimension (the dual is empty).
    """
    M, N, r = spec.M, spec.N, spec.r
    if spec.flavor is MatrixFlavor.GENERAL:
        ambient = (M + 1) * (N + 1) - 1
        codim = (M + 1 - r) * (N + 1 - r)
        degree = _general_degree(M + 1, N + 1, r)
        defect = r * (N - M + r) - 1
        return DeterminantalInvariants(ambient, codim, degree, defect)

    if spec.flavor is MatrixFlavor.SYMMETRIC:
        ambient = comb(N + 2, 2) - 1
        codim = comb(N - r + 2, 2)
        degree = _symmetric_degree(N, r)
        defect = comb(r + 1, 2) - 1
        return DeterminantalInvariants(ambient, codim, degree, defect)

    reduced = r % 2 == 1
    r_eff = r - 1 if reduced else r
    if r_eff == 0:
        raise InputError(
            "skew-symmetric rank bound 1 collapses to rank 0, "
            "the empty projective variety")
    ambient = comb(N + 1, 2) - 1
    codim = comb(N + 1 - r_eff, 2)
    if codim == 0:
        return DeterminantalInvariants(ambient, 0, 1, ambient, reduced)
    degree = _skew_degree(N, r_eff)
    corank = N + 1 - r_eff
    if corank % 2 == 1:
        corank -= 1
    defect = comb(N + 1 - corank, 2) - 1
    return DeterminantalInvariants(ambient, codim, degree, defect, reduced)


@dataclass(frozen=True)
class RelativeDualProfile:
    """Defect and codimension of a relative dual inside the classical dual.

    ``full_dual`` is True exactly when the relative dual fills the whole
    classical dual (codim_in_dual == 0 is necessary but not sufficient on
    its own; the flag follows the row/column-space criterion).
    """

    defect: int
    codim_in_dual: int
    full_dual: bool


def determinantal_relative_defect(spec: DeterminantalSpec,
                                  l1: int, l2: int):
    """Relative-dual invariants for a rank locus sliced by span constraints.

    The slice keeps the matrices whose row span lies in a fixed subspace of
    projective dimension ``l1`` and whose column span lies in one of
    projective dimension ``l2``.  Returns None when every sliced matrix has
    rank below r, which puts the slice inside the singular stratum and
    empties the relative dual.
    """
    if spec.flavor is not MatrixFlavor.GENERAL:
        raise InputError(
            "row/column-space slices are defined for the general flavor")
    if not (0 <= l1 <= spec.N and 0 <= l2 <= spec.M):
        raise InputError("slice dimensions fall outside the matrix format")
    r = spec.r
    if min(l1, l2) < r - 1:
        return None
    overflow = max(l1 - spec.M, 0)
    defect = r * overflow + r * r - 1
    codim = r * (2 * spec.M - l1 - l2) + r * overflow
    return RelativeDualProfile(defect, codim,
                               full_dual=min(l1, l2) >= spec.M)


# ---------------------------------------------------------------------------
# compound matrices


def compound_matrix(fld, matrix: Sequence[Sequence], r: int) -> list:
    """Matrix of all r x r minors over a coefficient field.

    Row and column index subsets are enumerated in lexicographic order; the
    (I, J) entry is the determinant of the submatrix on rows I and columns
    J.  Order 0 gives the 1 x 1 identity, and an order exceeding either
    dimension gives the zero compound, represented by an empty matrix.
    """
    if r < 0:
        raise InputError("compound order must be nonnegative")
    if r == 0:
        return [[fld.one]]
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if r > nrows or r > ncols:
        return []
    col_subsets = list(combinations(range(ncols), r))
    return [
        [det_field(fld, [[matrix[i][j] for j in cols] for i in rows])
         for cols in col_subsets]
        for rows in combinations(range(nrows), r)
    ]


def compound_symmetry_membership(fld, matrix: Sequence[Sequence], r: int) -> bool:
    """Dense membership test for the dual of a rank locus relative to its
    symmetric slice.

    A square matrix of size s belongs to the dense stratum exactly when its
    rank equals s - r and its complementary compound (order s - r) is a
    symmetric matrix.  Points of the closure may fail this test; it
    certifies membership, never exclusion.
    """
    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise InputError("membership test needs a square matrix")
    if not 1 <= r <= size:
        raise InputError(f"rank bound {r} outside the valid range 1..{size}")
    k = size - r
    if matrix_rank(fld, matrix) != k:
        return False
    compound = compound_matrix(fld, matrix, k)
    m = len(compound)
    return all(compound[i][j] == compound[j][i]
               for i in range(m) for j in range(i + 1, m))


# ---------------------------------------------------------------------------
# complete-intersection slices


def ci_conditional_degree(deg_Z: int, d: int, degrees: Sequence[int]) -> int:
    """Conditional-degree total for a variety cut out by a generic complete
    intersection: deg(Z) times the sum of all products of (d_j - 1) powers
    over exponent vectors of total weight at most d.

    deg_Z and d are the degree and dimension of the sliced variety, degrees
    the degrees of the cutting hypersurfaces.  The value equals the
    conditional distance degree times the data-locus degree; the distance
    degree itself is 1 under the genericity the formula assumes.
    """
    if deg_Z < 1:
        raise InputError("the sliced variety must have positive degree")
    if d < 0:
        raise InputError("dimension must be nonnegative")
    if any(dj < 1 for dj in degrees):
        raise InputError("hypersurface degrees must be at least 1")
    # coeffs[k] accumulates the weight-k sum, built one factor at a time
    coeffs = [1] + [0] * d
    for dj in degrees:
        base = dj - 1
        convolved = [0] * (d + 1)
        for k, c in enumerate(coeffs):
            if not c:
                continue
            power = 1
            for i in range(d - k + 1):
                convolved[k + i] += c * power
                power *= base
        coeffs = convolved
    return deg_Z * sum(coeffs)


@dataclass(frozen=True)
class ChernInput:
    """Degrees of the Chern classes of the tangent bundle of a smooth
    projective variety, c_0 through c_dim, as cycle classes in its ambient
    space.  The zeroth entry is the degree of the variety itself.
    """

    dim: int
    chern_degrees: Sequence[int]

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise InputError("dimension must be nonnegative")
        if len(self.chern_degrees) != self.dim + 1:
            raise InputError(
                f"expected {self.dim + 1} Chern degrees, "
                f"got {len(self.chern_degrees)}")
        if self.chern_degrees[0] <= 0:
            raise InputError(
                "the zeroth Chern degree is the degree of the variety "
                "and must be positive")


def chern_to_multidegrees(ci: ChernInput) -> tuple:
    """Multidegrees of the conormal variety of a smooth X from the Chern
    degrees of its tangent bundle, by the classical alternating binomial
    conversion."""
    n = ci.dim
    c = ci.chern_degrees
    return tuple(
        sum((-1) ** (n - j) * comb(j + 1, i + 1) * c[n - j]
            for j in range(i, n + 1))
        for i in range(n + 1)
    )


def alpha_coefficient(n: int, e: int, k: int) -> int:
    """Binomial weight attached to the k-th Chern degree when a smooth
    n-fold is sliced by a generic complete intersection of codimension e.
    Zero outside 0 <= k <= n - e."""
    if not 0 <= e <= n:
        raise InputError("slice codimension outside 0..dim")
    if k < 0 or k > n - e:
        return 0
    return sum(comb(n - k + 1, i + 1) for i in range(e, n - k + 1))


def ci_chern_degree(deg_Y: int, n: int, e: int,
                    chern_degrees: Sequence[int]) -> int:
    """Data-locus degree for a smooth n-fold sliced by a generic complete
    intersection of codimension e and degree deg_Y, from Chern degrees."""
    if not 0 <= e <= n:
        raise InputError("slice codimension outside 0..dim")
    if len(chern_degrees) < n - e + 1:
        raise InputError("not enough Chern degrees for the alternating sum")
    total = sum((-1) ** k * alpha_coefficient(n, e, k) * chern_degrees[k]
                for k in range(n - e + 1))
    return deg_Y * total


def data_locus_degree_from_multidegrees(deg_Y: int, c: int, def_X: int,
                                        delta: Sequence[int]) -> int:
    """Data-locus degree for a generic complete-intersection slice, from
    the full multidegree vector delta_0..delta_n of the unsliced variety:
    deg(Y) times the tail sum of the multidegrees from max(def_X, c) up.

    When c <= def_X the tail is the whole nonzero range, so the result is
    deg(Y) times the distance degree of the unsliced variety.  A slice
    codimension beyond the dimension gives the empty sum, hence 0.
    """
    if deg_Y < 1:
        raise InputError("the slice degree must be positive")
    if def_X < 0 or c < 0:
        raise InputError("defect and codimension must be nonnegative")
    n = len(delta) - 1
    return deg_Y * sum(delta[max(def_X, c):n + 1])


# ---------------------------------------------------------------------------
# products of projective spaces


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            value = out.get(key, 0) + ca * cb
            if value:
                out[key] = value
            elif key in out:
                del out[key]
    return out


def _kalman_expansion(dims: Sequence[int]) -> dict:
    """Full generating polynomial whose coefficients are the factorwise
    data-locus degrees: the product over i of
    sum_a (t_hat_i + h)^a t_i^(n_i - a), with t_hat_i the sum of the other
    t variables.  Keys are exponent tuples, t variables first, h last."""
    k = len(dims)
    width = k + 1
    total = {tuple([0] * width): 1}
    for i, ni in enumerate(dims):
        linear: dict = {}
        for j in range(k):
            if j != i:
                e = [0] * width
                e[j] = 1
                linear[tuple(e)] = 1
        eh = [0] * width
        eh[k] = 1
        linear[tuple(eh)] = 1
        factor: dict = {}
        power = {tuple([0] * width): 1}
        for a in range(ni + 1):
            shift = [0] * width
            shift[i] = ni - a
            for e, c in power.items():
                key = tuple(x + y for x, y in zip(e, shift))
                factor[key] = factor.get(key, 0) + c
            if a < ni:
                power = _poly_mul(power, linear)
        total = _poly_mul(total, factor)
    return total


def kalman_degree(dims: Sequence[int], codims: Sequence[int]) -> int:
    """Degree factor for the data locus of a product of projective spaces
    sliced factor by factor.

    ``dims`` lists the factor dimensions, ``codims`` the codimension of the
    slice inside each factor.  The value is the coefficient of
    h^(sum codims) * prod t_i^(dims_i - codims_i) in the expansion of
    :func:`_kalman_expansion`; multiplying it by the slice degrees gives
    the data-locus degree in the product metric that weights every matrix
    entry equally.
    """
    if not dims or len(dims) != len(codims):
        raise InputError("dimension and codimension vectors must match")
    for ni, di in zip(dims, codims):
        if not 0 <= di <= ni:
            raise InputError(
                f"slice codimension {di} outside 0..{ni}")
    expansion = _kalman_expansion(dims)
    target = tuple([ni - di for ni, di in zip(dims, codims)]
                   + [sum(codims)])
    return expansion.get(target, 0)
