"""Variety-level constructions.

Jacobians, minors, singular loci, random linear slicing with exact
zero-dimensional counting, radical containment, and prime-field point
sampling on sliced varieties.
"""

from __future__ import annotations

import hashlib
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from . import matrices
from .errors import InputError, SliceError
from .groebner import (EngineLimits, IdealPresentation, hilbert_dim_degree,
                       ideal, normal_form, quotient_vector_dimension)
from .rings import CoefficientField, MonomialOrder, Polynomial, RingContext


def derive_seed(master: int, tag: str) -> int:
    """Stable sub-seed; hashlib, so identical across processes and runs."""
    digest = hashlib.blake2b(f"{master}:{tag}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


# ---------------------------------------------------------------------------
# quadratic forms and variety pairs


class QuadraticForm:
    """Symmetric nondegenerate matrix identifying the dual space."""

    def __init__(self, matrix: Sequence[Sequence], field: CoefficientField):
        n = len(matrix)
        rows = []
        for row in matrix:
            if len(row) != n:
                raise InputError("quadratic form matrix must be square")
            rows.append(tuple(field.coerce(v) for v in row))
        self.matrix = tuple(rows)
        self.field = field
        for i in range(n):
            for j in range(i):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise InputError("quadratic form matrix must be symmetric")
        self._inverse = matrices.invert_matrix(field, [list(r) for r in rows])

    @classmethod
    def identity(cls, size: int, field: CoefficientField) -> "QuadraticForm":
        return cls(matrices.identity_matrix(field, size), field)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def inverse(self) -> list:
        return [list(row) for row in self._inverse]

    def apply_to_variables(self, ring: RingContext, names: Sequence[str]) -> list:
        """Row vector v.G for v the listed variables (as polynomials)."""
        if len(names) != self.size:
            raise InputError("form size does not match variable block")
        gens = [ring.variable(v) for v in names]
        out = []
        for j in range(self.size):
            acc = ring.zero()
            for i in range(self.size):
                c = self.matrix[i][j]
                if c:
                    acc = acc + gens[i].scale(c)
            out.append(acc)
        return out

    def form_polynomial(self, ring: RingContext, names: Sequence[str]) -> Polynomial:
        """The quadric v.G.v in the given variables."""
        if len(names) != self.size:
            raise InputError("form size does not match variable block")
        idx = [ring.index(v) for v in names]
        terms: dict = {}
        fld = ring.coefficient_field
        for i in range(self.size):
            for j in range(self.size):
                c = self.matrix[i][j]
                if not c:
                    continue
                e = [0] * ring.nvars
                e[idx[i]] += 1
                e[idx[j]] += 1
                key = tuple(e)
                terms[key] = fld.add(terms.get(key, fld.zero), c)
        return Polynomial.from_dict(ring, terms)


class VarietyPair:
    """A nested pair of varieties Z inside X in a common ambient space.

    Containment is a construction invariant: every generator of the
    larger variety's ideal must vanish on the smaller variety.
    """

    def __init__(self, ideal_X: IdealPresentation, ideal_Z: IdealPresentation,
                 *, projective: bool = True,
                 quad_form: QuadraticForm | None = None,
                 validate: bool = True,
                 limits: EngineLimits | None = None):
        if ideal_X.ring != ideal_Z.ring:
            raise InputError("pair ideals must share a ring")
        ring = ideal_X.ring
        self.ring = ring
        self.ideal_X = ideal_X
        self.ideal_Z = ideal_Z
        self.projective = projective
        if projective:
            if not (ideal_X.is_homogeneous() and ideal_Z.is_homogeneous()):
                raise InputError("projective pair needs homogeneous ideals")
            self.ambient_dim = ring.nvars - 1
        else:
            self.ambient_dim = ring.nvars
        if quad_form is None:
            quad_form = QuadraticForm.identity(ring.nvars, ring.coefficient_field)
        if quad_form.size != ring.nvars:
            raise InputError("quadratic form size must match variable count")
        self.quad_form = quad_form
        if validate and not radical_contains(ideal_Z, ideal_X, limits=limits):
            raise InputError("Z is not contained in X")
        hx = hilbert_dim_degree(ideal_X, homogenize=not projective, limits=limits)
        hz = hilbert_dim_degree(ideal_Z, homogenize=not projective, limits=limits)
        if projective:
            self.dim_X = hx.projective_dimension
            self.dim_Z = hz.projective_dimension
        else:
            self.dim_X = hx.krull_dimension
            self.dim_Z = hz.krull_dimension
        self.deg_X = hx.degree
        self.deg_Z = hz.degree
        self.codim_X = self.ambient_dim - self.dim_X
        self.codim_Z = self.ambient_dim - self.dim_Z

    @property
    def codim_Z_in_X(self) -> int:
        return self.dim_X - self.dim_Z

    def __repr__(self) -> str:
        kind = "projective" if self.projective else "affine"
        return (f"VarietyPair({kind}, ambient {self.ambient_dim}, "
                f"dim X {self.dim_X}, dim Z {self.dim_Z})")


# ---------------------------------------------------------------------------
# jacobians, minors, singular loci


def jacobian_matrix(gens: Sequence[Polynomial],
                    variables: Sequence[str] | None = None) -> list:
    """Matrix of formal partials, one row per input polynomial."""
    if not gens:
        return []
    ring = gens[0].ring
    names = list(variables) if variables is not None else list(ring.variables)
    return [[g.derivative(v) for v in names] for g in gens]


def minors_ideal(M: Sequence[Sequence[Polynomial]], k: int,
                 ring: RingContext) -> IdealPresentation:
    """Ideal of all k by k minors, subsets in lexicographic order.

    Oversized k gives the zero ideal; k <= 0 gives the unit ideal
    (the empty minor is 1).
    """
    rows = len(M)
    cols = len(M[0]) if rows else 0
    if k <= 0:
        return IdealPresentation(ring, (ring.one(),))
    if k > min(rows, cols):
        return IdealPresentation(ring, ())
    out = []
    for ri in itertools.combinations(range(rows), k):
        picked = [M[i] for i in ri]
        for ci in itertools.combinations(range(cols), k):
            sub = [[row[j] for j in ci] for row in picked]
            out.append(matrices.det_poly(ring, sub))
    return IdealPresentation(ring, tuple(out))


def singular_locus_ideal(I: IdealPresentation, codim: int | None = None,
                         *, limits: EngineLimits | None = None) -> IdealPresentation:
    """I plus the codim-sized minors of the Jacobian; no saturation.

    The result is used as a saturation modulus, so embedded junk is
    deliberately kept.
    """
    ring = I.ring
    if I.is_zero():
        return IdealPresentation(ring, ())
    if codim is None:
        h = hilbert_dim_degree(I, homogenize=not I.is_homogeneous(),
                               limits=limits)
        ambient = ring.nvars - (1 if I.is_homogeneous() else 0)
        dim = h.projective_dimension if I.is_homogeneous() else h.krull_dimension
        codim = ambient - dim
    J = jacobian_matrix(list(I.generators))
    mins = minors_ideal(J, codim, ring)
    return IdealPresentation(ring, I.generators + mins.generators)


# ---------------------------------------------------------------------------
# radical membership


def radical_contains(I: IdealPresentation, J: IdealPresentation | Polynomial,
                     *, limits: EngineLimits | None = None) -> bool:
    """Do all generators of J vanish on the zero set of I?

    Rabinowitsch test per generator, with a plain membership check
    first (most callers pass polynomials already inside I).
    """
    gens: Iterable[Polynomial]
    if isinstance(J, Polynomial):
        gens = (J,)
    else:
        if J.ring != I.ring:
            raise InputError("radical test needs a common ring")
        gens = J.generators
    ring = I.ring
    gb = I.groebner_basis(limits=limits)
    if len(gb) == 1 and not any(gb[0].leading_exponent()):
        return True
    hard = [g for g in gens if not normal_form(g, gb).is_zero()]
    if not hard:
        return True
    t = "t_"
    k = 0
    while t in ring.variables:
        k += 1
        t = f"t_{k}"
    big = RingContext((t,) + ring.variables, ring.coefficient_field,
                      MonomialOrder.grevlex())
    position = list(range(1, ring.nvars + 1))
    base = [g.map_exponents(big, position) for g in I.generators]
    tv = big.variable(t)
    for g in hard:
        gens_t = base + [tv * g.map_exponents(big, position) - big.one()]
        if not IdealPresentation(big, tuple(gens_t)).is_unit(limits=limits):
            return False
    return True


# ---------------------------------------------------------------------------
# random slicing


def _random_coeff(rng: random.Random, fld: CoefficientField):
    if fld.characteristic:
        return rng.randrange(fld.characteristic)
    return Fraction(rng.randint(-10_000, 10_000))


def _blocks_of(ring: RingContext) -> list:
    b = ring.block_boundary
    if b is None:
        return [(0, ring.nvars)]
    return [(0, b), (b, ring.nvars)]


def _slice_substitution(I: IdealPresentation, codims: Sequence[int],
                        rng: random.Random):
    """Parametrize each block by a random subspace and dehomogenize.

    Returns the sliced affine ideal and a map sending a solution tuple
    back to coordinates of the original ring.
    """
    ring = I.ring
    fld = ring.coefficient_field
    blocks = _blocks_of(ring)
    if len(codims) != len(blocks):
        raise InputError("one slice codimension per variable block")
    new_names: list[str] = []
    block_data = []
    for bi, ((lo, hi), c) in enumerate(zip(blocks, codims)):
        nb = hi - lo
        if c < 0 or c >= nb:
            raise InputError(f"slice codim {c} out of range for block of {nb}")
        m = nb - c  # parameters, the last being the dehomogenizing 1
        for attempt in range(16):
            A = [[_random_coeff(rng, fld) for _ in range(m)] for _ in range(nb)]
            if matrices.matrix_rank(fld, A) == m:
                break
        else:  # pragma: no cover - vanishing probability
            raise SliceError("could not draw a full-rank slice matrix")
        names = [f"s{bi}_{k}" for k in range(m - 1)]
        new_names.extend(names)
        block_data.append(((lo, hi), A, names))
    target = RingContext(tuple(new_names), fld, MonomialOrder.grevlex())
    bindings: dict = {}
    for (lo, hi), A, names in block_data:
        params = [target.variable(v) for v in names] + [target.one()]
        for i in range(lo, hi):
            acc = target.zero()
            for k, pvar in enumerate(params):
                coeff = A[i - lo][k]
                if coeff:
                    acc = acc + pvar.scale(coeff)
            bindings[ring.variables[i]] = acc
    sliced = IdealPresentation(
        target, tuple(g.substitute(bindings, target) for g in I.generators))

    def back(point: Sequence) -> dict:
        values = dict(zip(target.variables, point))
        out = {}
        for (lo, hi), A, names in block_data:
            svec = [values[v] for v in names] + [fld.one]
            for i in range(lo, hi):
                out[ring.variables[i]] = matrices._dot(fld, A[i - lo], svec)
        return out

    return sliced, back


def _slice_count_once(I: IdealPresentation, codims: Sequence[int], seed: int,
                      limits: EngineLimits | None) -> int:
    rng = random.Random(seed)
    sliced, _ = _slice_substitution(I, codims, rng)
    count = quotient_vector_dimension(sliced, limits=limits)
    if count is None:
        raise SliceError("sliced system is not zero-dimensional")
    return count


def slice_and_count(I: IdealPresentation, slice_codim_x: int,
                    slice_codim_y: int = 0, seed: int = 0,
                    *, limits: EngineLimits | None = None) -> int:
    """Count points of I cut by random linear subspaces of the given
    codimensions (one per block), running twice with derived seeds.

    Counting is with multiplicity; random slices make points simple
    with overwhelming probability, and disagreement between the two
    derived seeds raises instead of returning a wrong number.
    """
    blocks = _blocks_of(I.ring)
    codims = [slice_codim_x, slice_codim_y][:len(blocks)]
    if len(blocks) == 1 and slice_codim_y:
        raise InputError("single-block ring cannot take a y-slice")
    a = _slice_count_once(I, codims, derive_seed(seed, "slice:0"), limits)
    b = _slice_count_once(I, codims, derive_seed(seed, "slice:1"), limits)
    if a != b:
        raise SliceError(f"slice counts disagree between seeds: {a} vs {b}")
    return a


# ---------------------------------------------------------------------------
# prime-field points on sliced varieties


def _standard_monomials(leads: Sequence, nvars: int) -> list:
    bounds = []
    for i in range(nvars):
        pure = [e[i] for e in leads if e[i] and all(
            x == 0 for j, x in enumerate(e) if j != i)]
        if not pure:
            return []
        bounds.append(min(pure))
    out = []
    for exp in itertools.product(*[range(b) for b in bounds]):
        if not any(all(x >= y for x, y in zip(exp, lead)) for lead in leads):
            out.append(exp)
    return out


def _minimal_polynomial_fp(gb: Sequence[Polynomial], ring: RingContext,
                           var: str) -> list:
    """Coefficients (ascending, monic) of the minimal polynomial of a
    coordinate on a zero-dimensional quotient over a prime field."""
    p = ring.coefficient_field.characteristic
    leads = [g.leading_exponent() for g in gb]
    basis = _standard_monomials(leads, ring.nvars)
    if not basis:
        raise InputError("quotient is not zero-dimensional")
    pos = {e: i for i, e in enumerate(basis)}
    dim = len(basis)
    # reduced row echelon over F_p, kept mutually reduced so one pass
    # decides membership; histories express rows in the power basis
    echelon: dict = {}  # pivot index -> (vector, history)
    v = ring.variable(var)
    pw = ring.one()
    for k in range(dim + 1):
        nf = normal_form(pw, gb)
        vec = [0] * dim
        for e, c in nf.terms:
            vec[pos[e]] = c
        hist = [0] * (dim + 2)
        hist[k] = 1
        for piv in sorted(echelon):
            if vec[piv]:
                rvec, rhist = echelon[piv]
                f = vec[piv]
                vec = [(a - f * b) % p for a, b in zip(vec, rvec)]
                hist = [(a - f * b) % p for a, b in zip(hist, rhist)]
        if not any(vec):
            coeffs = hist[:k + 1]
            inv = pow(coeffs[-1], -1, p)
            return [c * inv % p for c in coeffs]
        piv = next(i for i, x in enumerate(vec) if x)
        f = pow(vec[piv], -1, p)
        vec = [a * f % p for a in vec]
        hist = [a * f % p for a in hist]
        for opiv, (ovec, ohist) in list(echelon.items()):
            if ovec[piv]:
                f = ovec[piv]
                echelon[opiv] = (
                    [(a - f * b) % p for a, b in zip(ovec, vec)],
                    [(a - f * b) % p for a, b in zip(ohist, hist)])
        echelon[piv] = (vec, hist)
        pw = normal_form(pw * v, gb)
    raise InputError("minimal polynomial search exceeded quotient dimension")


def _poly_roots_fp(coeffs: Sequence[int], p: int) -> list:
    out = []
    for t in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * t + c) % p
        if acc == 0:
            out.append(t)
            if len(out) == len(coeffs) - 1:
                break
    return out


def _solve_zero_dim_fp(I: IdealPresentation,
                       limits: EngineLimits | None) -> Iterator[tuple]:
    """All prime-field points of a zero-dimensional system, by minimal
    polynomials and back-substitution."""
    ring = I.ring
    p = ring.coefficient_field.characteristic
    if not p:
        raise InputError("point solving needs a prime field")
    gb = I.groebner_basis(limits=limits)
    if len(gb) == 1 and not any(gb[0].leading_exponent()):
        return
    if ring.nvars == 0:
        yield ()
        return
    var = ring.variables[0]
    mp = _minimal_polynomial_fp(gb, ring, var)
    roots = _poly_roots_fp(mp, p)
    rest = RingContext(ring.variables[1:], ring.coefficient_field,
                       MonomialOrder.grevlex())
    for r in roots:
        image = rest.constant(r)
        subs = {var: image}
        reduced = IdealPresentation(
            rest, tuple(g.substitute(subs, rest) for g in I.generators))
        for tail in _solve_zero_dim_fp(reduced, limits):
            yield (r,) + tail


def sample_point(I: IdealPresentation, codims: Sequence[int], seed: int,
                 *, attempts: int = 6,
                 limits: EngineLimits | None = None) -> dict | None:
    """One prime-field point of I on a random slice, in original
    coordinates; None when no sampled slice carries a rational point."""
    if not I.ring.coefficient_field.characteristic:
        raise InputError("point sampling runs over a prime field")
    for k in range(attempts):
        rng = random.Random(derive_seed(seed, f"sample:{k}"))
        sliced, back = _slice_substitution(I, codims, rng)
        if quotient_vector_dimension(sliced, limits=limits) is None:
            continue
        for point in _solve_zero_dim_fp(sliced, limits):
            return back(point)
    return None


# ---------------------------------------------------------------------------
# helpers shared by the higher modules


def ideal_mod_p(I: IdealPresentation, p: int) -> IdealPresentation:
    """Reduce a rational ideal's generators modulo p."""
    fld = CoefficientField.prime(p)
    ring = I.ring
    if ring.coefficient_field.characteristic:
        raise InputError("ideal is already over a prime field")
    target = ring.with_field(fld)
    gens = []
    for g in I.generators:
        gens.append(Polynomial.from_dict(
            target, {e: fld.coerce(c) for e, c in g.terms}))
    return IdealPresentation(target, tuple(gens))


def homogenize_polynomial(p: Polynomial, target: RingContext,
                          new_var: str) -> Polynomial:
    """Homogenize into a ring with one extra variable."""
    zi = target.index(new_var)
    position = []
    for v in p.ring.variables:
        position.append(target.index(v))
    d = p.total_degree()
    terms = {}
    for e, c in p.terms:
        ne = [0] * target.nvars
        for i, k in enumerate(e):
            ne[position[i]] = k
        ne[zi] = d - sum(e)
        terms[tuple(ne)] = c
    return Polynomial.from_dict(target, terms)


def random_homogeneous(ring: RingContext, degree: int,
                       rng: random.Random) -> Polynomial:
    """Dense random form of the given degree."""
    if degree < 0:
        raise InputError("degree must be nonnegative")
    fld = ring.coefficient_field
    terms = {}
    for combo in itertools.combinations_with_replacement(
            range(ring.nvars), degree):
        e = [0] * ring.nvars
        for i in combo:
            e[i] += 1
        c = _random_coeff(rng, fld)
        if c:
            terms[tuple(e)] = c
    return Polynomial.from_dict(ring, terms)
