"""Small exact linear algebra over the coefficient fields and over rings.

Field matrices are lists of lists of coefficients.  Polynomial matrices
are lists of lists of Polynomial; their determinants use a column-subset
expansion and their kernels a Cramer construction, so no polynomial
division (beyond exactness) is ever required.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import InputError
from .rings import CoefficientField, Polynomial, RingContext


def identity_matrix(fld: CoefficientField, n: int) -> list:
    one, zero = fld.one, fld.zero
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_vec(fld: CoefficientField, m: Sequence[Sequence], v: Sequence) -> list:
    return [
        _dot(fld, row, v)
        for row in m
    ]


def _dot(fld: CoefficientField, row: Sequence, v: Sequence):
    total = fld.zero
    for a, b in zip(row, v):
        total = fld.add(total, fld.mul(a, b))
    return total


def rref(fld: CoefficientField, matrix: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = fld.inv(rows[r][c])
        rows[r] = [fld.mul(x, inv) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [fld.sub(x, fld.mul(factor, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def matrix_rank(fld: CoefficientField, matrix: Sequence[Sequence]) -> int:
    return len(rref(fld, matrix)[1])


def invert_matrix(fld: CoefficientField, matrix: Sequence[Sequence]) -> list:
    n = len(matrix)
    aug = [list(row) + ident for row, ident in zip(matrix, identity_matrix(fld, n))]
    reduced, pivots = rref(fld, aug)
    if pivots[:n] != list(range(n)):
        raise InputError("matrix is not invertible")
    return [row[n:] for row in reduced]


def field_kernel(fld: CoefficientField, matrix: Sequence[Sequence]) -> list:
    """Basis of {v : matrix @ v = 0} over the field."""
    if not matrix:
        return []
    reduced, pivots = rref(fld, matrix)
    ncols = len(matrix[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [fld.zero] * ncols
        v[f] = fld.one
        for r, p in enumerate(pivots):
            v[p] = fld.neg(reduced[r][f])
        basis.append(v)
    return basis


def det_field(fld: CoefficientField, matrix: Sequence[Sequence]):
    """Determinant over a field by Gaussian elimination."""
    n = len(matrix)
    rows = [list(r) for r in matrix]
    det = fld.one
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c]), None)
        if pivot is None:
            return fld.zero
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = fld.neg(det)
        det = fld.mul(det, rows[c][c])
        inv = fld.inv(rows[c][c])
        for i in range(c + 1, n):
            if rows[i][c]:
                factor = fld.mul(rows[i][c], inv)
                rows[i] = [fld.sub(x, fld.mul(factor, y))
                           for x, y in zip(rows[i], rows[c])]
    return det


# ---------------------------------------------------------------------------
# polynomial matrices


def det_poly(ring: RingContext, matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Determinant of a square polynomial matrix.

    Laplace expansion along rows with memoization on the active column
    subset; fine for the minor sizes that occur here (<= 6).
    """
    n = len(matrix)
    if n == 0:
        return ring.one()
    for row in matrix:
        if len(row) != n:
            raise InputError("determinant of a non-square matrix")
    full = (1 << n) - 1
    memo: dict = {}

    def expand(row: int, cols: int) -> Polynomial:
        if row == n:
            return ring.one()
        cached = memo.get((row, cols))
        if cached is not None:
            return cached
        total = ring.zero()
        sign = 1
        for j in range(n):
            bit = 1 << j
            if not cols & bit:
                continue
            entry = matrix[row][j]
            if entry:
                sub = expand(row + 1, cols & ~bit)
                if sub:
                    piece = entry * sub
                    total = total + piece if sign > 0 else total - piece
            sign = -sign
        memo[(row, cols)] = total
        return total

    return expand(0, full)


def poly_matrix_rank_rows(ring: RingContext,
                          matrix: Sequence[Sequence[Polynomial]]) -> list:
    """Indices of a maximal set of polynomial-linearly-independent rows.

    Fraction-free (Bareiss) elimination; independence means generic
    independence, i.e. over the fraction field.
    """
    work = [list(row) for row in matrix]
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    order = list(range(nrows))
    prev: Polynomial | None = None
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        order[r], order[pivot] = order[pivot], order[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                num = work[r][c] * work[i][j] - work[i][c] * work[r][j]
                work[i][j] = num if prev is None else _exact_poly_div(num, prev)
            work[i][c] = ring.zero()
        prev = work[r][c]
        r += 1
        if r == nrows:
            break
    return order[:r]


def _exact_poly_div(num: Polynomial, den: Polynomial) -> Polynomial:
    """Exact division num/den (den must divide num)."""
    from .groebner import exact_divide  # local import: avoid module cycle

    return exact_divide(num, den)


def poly_kernel(ring: RingContext,
                matrix: Sequence[Sequence[Polynomial]]) -> list:
    """Kernel basis {v : matrix @ v = 0} with polynomial entries.

    One Cramer vector per free column, built from maximal minors of a
    row-independent submatrix, then verified against every row and
    normalized to unit rational content with a positive first leading
    coefficient.
    """
    if not matrix:
        return []
    ncols = len(matrix[0])
    rows_idx = poly_matrix_rank_rows(ring, matrix)
    rank = len(rows_idx)
    base_rows = [matrix[i] for i in rows_idx]
    # pivot columns of the selected rows, again by fraction-free elimination
    pivot_cols = _pivot_columns(ring, base_rows)
    assert len(pivot_cols) == rank
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        cols = sorted(pivot_cols + [f])
        sub = [[row[c] for c in cols] for row in base_rows]
        vec = [ring.zero()] * ncols
        sign = 1
        for pos, c in enumerate(cols):
            minor = det_poly(ring, [r[:pos] + r[pos + 1:] for r in sub])
            vec[c] = minor if sign > 0 else -minor
            sign = -sign
        for row in matrix:
            residual = ring.zero()
            for a, b in zip(row, vec):
                residual = residual + a * b
            assert residual.is_zero(), "kernel vector failed verification"
        basis.append(normalize_poly_vector(vec))
    return basis


def _pivot_columns(ring: RingContext,
                   rows: Sequence[Sequence[Polynomial]]) -> list:
    work = [list(r) for r in rows]
    nrows = len(work)
    ncols = len(work[0]) if work else 0
    pivots = []
    prev: Polynomial | None = None
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                num = work[r][c] * work[i][j] - work[i][c] * work[r][j]
                work[i][j] = num if prev is None else _exact_poly_div(num, prev)
            work[i][c] = ring.zero()
        prev = work[r][c]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def normalize_poly_vector(vec: Sequence[Polynomial]) -> list:
    """Divide by the common rational content; make the first lead positive."""
    ring = vec[0].ring
    fld = ring.coefficient_field
    if fld.characteristic:
        first = next((p for p in vec if p), None)
        if first is None:
            return list(vec)
        scale = fld.inv(first.leading_coefficient())
        return [p.scale(scale) for p in vec]
    num_gcd = 0
    den_lcm = 1
    for p in vec:
        for _, c in p.terms:
            num_gcd = gcd(num_gcd, c.numerator)
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    if num_gcd == 0:
        return list(vec)
    content = Fraction(num_gcd, den_lcm)
    first = next(p for p in vec if p)
    if first.leading_coefficient() < 0:
        content = -content
    return [p.scale(1 / content) for p in vec]
