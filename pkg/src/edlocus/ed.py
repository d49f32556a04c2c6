"""Conditional Euclidean-distance machinery.

Critical-point ideals of a variety relative to a subvariety, the data
loci they project to, joint point/normal correspondences, and the
degree bookkeeping that ties data-locus degrees to relative
multidegrees.

Two coordinate models are supported.  In the affine model a data point
u decomposes as u = x + y with y normal to X at x; in the projective
model (cones only) u lies on the plane spanned by x and a normal
direction.  On cone pairs, where both models apply, they cut the same
data locus.
"""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from . import matrices
from .duality import (MultidegreeVector, diagonal_check, dual_variable_names,
                      product_ring, relative_conormal_ideal,
                      relative_dual_ideal)
from .errors import (HypothesisFailure, InputError, NotOnVariety,
                     PositiveDimensionalFiber, SliceError)
from .geometry import (QuadraticForm, VarietyPair, derive_seed,
                       jacobian_matrix, minors_ideal, radical_contains,
                       sample_point, singular_locus_ideal)
from .groebner import (EngineLimits, IdealPresentation, eliminate,
                       extend_to_ring, hilbert_dim_degree, normal_form,
                       quotient_vector_dimension, saturate_element,
                       saturate_ideal)
from .rings import MonomialOrder, Polynomial, RingContext


class EDModel(Enum):
    AFFINE = "affine"
    PROJECTIVE = "projective"


class EDSetup:
    """A variety pair with a fresh block of data coordinates.

    The model picks the critical-point equations.  By default it
    follows the pair: projective pairs run the projective route,
    affine pairs the affine one.  A projective pair may be downgraded
    to the affine model explicitly (its cone treated as an affine
    variety); the converse is rejected.
    """

    def __init__(self, pair: VarietyPair,
                 data_vars: Sequence[str] | None = None,
                 model: EDModel | None = None,
                 quad_form: QuadraticForm | None = None):
        ring = pair.ring
        self.pair = pair
        self.ring = ring
        if quad_form is None:
            quad_form = pair.quad_form
        if quad_form.size != ring.nvars:
            raise InputError("quadratic form size must match the ambient")
        self.quad_form = quad_form
        if model is None:
            model = EDModel.PROJECTIVE if pair.projective else EDModel.AFFINE
        if model is EDModel.PROJECTIVE and not pair.projective:
            raise InputError("the projective model needs a projective pair")
        self.model = model
        if data_vars is None:
            prefix = "u_"
            k = 0
            while any(prefix + v in ring.variables for v in ring.variables):
                k += 1
                prefix = f"u{k}_"
            data_vars = tuple(prefix + v for v in ring.variables)
        else:
            data_vars = tuple(data_vars)
            if len(data_vars) != ring.nvars:
                raise InputError("one data variable per ambient coordinate")
            clash = set(data_vars) & set(ring.variables)
            if clash:
                raise InputError(
                    f"data variables collide with the pair's: {sorted(clash)}")
        self.data_vars = data_vars

    def ed_ring(self) -> RingContext:
        """The (x, u) ring; the boundary marks where the data block starts."""
        return RingContext(self.ring.variables + self.data_vars,
                           self.ring.coefficient_field,
                           MonomialOrder.grevlex(),
                           block_boundary=self.ring.nvars)

    def __repr__(self) -> str:
        return f"EDSetup({self.model.value}, {self.pair!r})"


@dataclass(frozen=True)
class EDDResult:
    """Degree report for one pair.

    sum_delta and edd are None when the multidegree ratio route did not
    run (affine model, or a conormal meeting the diagonal); fiber_count
    is None when no data point could be sampled.  consistent is True
    unless two routes that both ran disagree.
    """

    sum_delta: int | None
    deg_DL: int
    edd: int | None
    fiber_count: int | None
    consistent: bool
    diagonal_ok: bool | None


# ---------------------------------------------------------------------------
# shared construction helpers


def _lift(p: Polynomial, target: RingContext) -> Polynomial:
    position = [target.index(v) for v in p.ring.variables]
    return p.map_exponents(target, position)


def _is_identity_form(form: QuadraticForm) -> bool:
    fld = form.field
    return all(form.matrix[i][j] == (fld.one if i == j else fld.zero)
               for i in range(form.size) for j in range(form.size))


def _projectively_trivial(I: IdealPresentation,
                          limits: EngineLimits | None) -> bool:
    ring = I.ring
    irrelevant = IdealPresentation(ring, ring.gens())
    return saturate_ideal(I, irrelevant, limits).is_unit(limits=limits)


def _checked_singular_modulus(setup: EDSetup,
                              limits: EngineLimits | None) -> IdealPresentation:
    pair = setup.pair
    if pair.ideal_X.is_zero():
        raise InputError("X must be a proper subvariety of the ambient space")
    sing = singular_locus_ideal(pair.ideal_X, pair.codim_X, limits=limits)
    if radical_contains(pair.ideal_Z, sing, limits=limits):
        raise HypothesisFailure(
            "Z lies inside the singular locus of X; no smooth critical "
            "points exist over it")
    return sing


def _difference_row(setup: EDSetup, R: RingContext) -> list:
    """Row vector (u - x).G as polynomials of the (x, u) ring."""
    G = setup.quad_form.matrix
    n = setup.ring.nvars
    xs = [R.variable(v) for v in setup.ring.variables]
    us = [R.variable(v) for v in setup.data_vars]
    out = []
    for j in range(n):
        acc = R.zero()
        for i in range(n):
            c = G[i][j]
            if c:
                acc = acc + (us[i] - xs[i]).scale(c)
        out.append(acc)
    return out


def _twisted_jacobian_rows(setup: EDSetup, R: RingContext) -> list:
    """Rows of J(f).G^{-1} lifted into R; they span the normal space."""
    jac = jacobian_matrix(list(setup.pair.ideal_X.generators))
    rows = [[_lift(e, R) for e in row] for row in jac]
    if _is_identity_form(setup.quad_form):
        return rows
    inv = setup.quad_form.inverse()
    n = setup.ring.nvars
    twisted = []
    for row in rows:
        new = []
        for j in range(n):
            acc = R.zero()
            for k in range(n):
                c = inv[k][j]
                if c:
                    acc = acc + row[k].scale(c)
            new.append(acc)
        twisted.append(new)
    return twisted


# ---------------------------------------------------------------------------
# the conditional critical ideals


def conditional_ed_ideal_affine(setup: EDSetup, *,
                                limits: EngineLimits | None = None
                                ) -> IdealPresentation:
    """Ideal of the affine critical correspondence in (x, u).

    The ideal of Z plus the rank condition stacking the form-twisted
    displacement row over the Jacobian of X's generators, cleaned by
    saturating away the singular locus.
    """
    if setup.model is not EDModel.AFFINE:
        raise InputError("the affine construction needs the affine model")
    pair = setup.pair
    sing = _checked_singular_modulus(setup, limits)
    R = setup.ed_ring()
    c = pair.codim_X
    matrix = [_difference_row(setup, R)] + _twisted_jacobian_rows(setup, R)
    mins = minors_ideal(matrix, c + 1, R)
    gens = extend_to_ring(pair.ideal_Z, R).generators + mins.generators
    E = IdealPresentation(R, gens)
    if not sing.is_unit(limits=limits):
        E = saturate_ideal(E, extend_to_ring(sing, R), limits)
    return E


def _projective_raw_system(setup: EDSetup, limits: EngineLimits | None
                           ) -> tuple:
    """Unsaturated projective critical system with its cleanup data.

    Returns the raw ideal, the lifted isotropic quadric, and the lifted
    singular modulus (None when X is smooth away from the origin).
    """
    if setup.model is not EDModel.PROJECTIVE:
        raise InputError("the projective construction needs the "
                         "projective model")
    pair = setup.pair
    ring = pair.ring
    sing = _checked_singular_modulus(setup, limits)
    q = setup.quad_form.form_polynomial(ring, ring.variables)
    union = IdealPresentation(ring, tuple(q * g for g in sing.generators))
    if radical_contains(pair.ideal_Z, union, limits=limits):
        raise HypothesisFailure(
            "Z lies inside the union of the isotropic quadric and the "
            "singular locus of X")
    R = setup.ed_ring()
    u_row = [R.variable(v) for v in setup.data_vars]
    x_row = [R.variable(v) for v in ring.variables]
    matrix = [u_row, x_row] + _twisted_jacobian_rows(setup, R)
    mins = minors_ideal(matrix, pair.codim_X + 2, R)
    gens = extend_to_ring(pair.ideal_Z, R).generators + mins.generators
    raw = IdealPresentation(R, gens)
    sing_lift = None if _projectively_trivial(sing, limits) \
        else extend_to_ring(sing, R)
    return raw, _lift(q, R), sing_lift


def conditional_ed_ideal_projective(setup: EDSetup, *,
                                    limits: EngineLimits | None = None
                                    ) -> IdealPresentation:
    """Ideal of the projective critical correspondence in (x, u).

    Rows u, x and the twisted Jacobian enter one rank condition; the
    result is cleaned by the singular modulus (when X has one beyond
    the origin) and by the isotropic quadric.
    """
    E, q_lift, sing_lift = _projective_raw_system(setup, limits)
    if sing_lift is not None:
        E = saturate_ideal(E, sing_lift, limits)
    # q vanishes at x = 0, so this also clears the irrelevant-block junk
    E = saturate_element(E, q_lift, limits)
    return E


def _affine_normal_pairs_ideal(setup: EDSetup,
                               limits: EngineLimits | None
                               ) -> IdealPresentation:
    """Ideal of {(x, y) : x in Z smooth on X, y normal to X at x}.

    The affine sibling of the bihomogeneous conormal: same rank
    condition, singular modulus only, no irrelevant-block cleanup
    (the zero normal vector belongs to every fiber).
    """
    pair = setup.pair
    sing = _checked_singular_modulus(setup, limits)
    P = product_ring(pair.ring)
    yrow = setup.quad_form.apply_to_variables(P, dual_variable_names(P))
    jac = jacobian_matrix(list(pair.ideal_X.generators))
    matrix = [yrow] + [[_lift(e, P) for e in row] for row in jac]
    mins = minors_ideal(matrix, pair.codim_X + 1, P)
    gens = extend_to_ring(pair.ideal_Z, P).generators + mins.generators
    N = IdealPresentation(P, gens)
    if not sing.is_unit(limits=limits):
        N = saturate_ideal(N, extend_to_ring(sing, P), limits)
    return N


def joint_ed_ideal(setup: EDSetup, *,
                   limits: EngineLimits | None = None) -> IdealPresentation:
    """Ideal of the joint critical correspondence in (x, y, u).

    Affine model: the normal-pairs ideal plus the graph equations
    u = x + y.  Projective model: the pair's conormal plus the rank
    condition putting u on the plane spanned by x and y, saturated by
    the product of the two isotropic quadrics; the dimension is
    audited afterwards.  Eliminating the first two blocks yields the
    same data locus as the two-block routes.
    """
    pair = setup.pair
    fld = setup.ring.coefficient_field
    if setup.model is EDModel.AFFINE:
        N = _affine_normal_pairs_ideal(setup, limits)
        P = N.ring
        T = RingContext(P.variables + setup.data_vars, fld,
                        MonomialOrder.grevlex(), block_boundary=P.nvars)
        xs = [T.variable(v) for v in setup.ring.variables]
        ys = [T.variable(v) for v in dual_variable_names(P)]
        us = [T.variable(v) for v in setup.data_vars]
        graph = tuple(u - x - y for u, x, y in zip(us, xs, ys))
        return IdealPresentation(T, extend_to_ring(N, T).generators + graph)

    ring = pair.ring
    q = setup.quad_form.form_polynomial(ring, ring.variables)
    if radical_contains(pair.ideal_Z, q, limits=limits):
        raise HypothesisFailure("Z lies inside the isotropic quadric")
    W = relative_conormal_ideal(pair, limits=limits)
    image = relative_dual_ideal(W, limits=limits)
    q_image = setup.quad_form.form_polynomial(image.ring, image.ring.variables)
    if radical_contains(image, q_image, limits=limits):
        raise HypothesisFailure(
            "the normal image of the pair lies inside the isotropic quadric")
    P = W.ring
    T = RingContext(P.variables + setup.data_vars, fld,
                    MonomialOrder.grevlex(), block_boundary=P.nvars)
    rows = [[T.variable(v) for v in setup.data_vars],
            [T.variable(v) for v in ring.variables],
            [T.variable(v) for v in dual_variable_names(P)]]
    mins = minors_ideal(rows, 3, T)
    G = IdealPresentation(T, extend_to_ring(W, T).generators + mins.generators)
    q_x = _lift(q, T)
    q_y = setup.quad_form.form_polynomial(T, dual_variable_names(P))
    G = saturate_element(G, q_x * q_y, limits)
    h = hilbert_dim_degree(G, limits=limits)
    got = h.krull_dimension - 2
    expected = pair.ambient_dim + 1 - pair.codim_Z_in_X
    if got != expected:
        raise HypothesisFailure(
            f"joint correspondence has dimension {got}, expected {expected}")
    return G


def data_locus_ideal(ed_ideal: IdealPresentation, *,
                     limits: EngineLimits | None = None) -> IdealPresentation:
    """Project a critical ideal onto its data block.

    Works on both the two-block (x, u) ideals and the three-block
    joint ideals; the ring's boundary marks where the data block
    starts.
    """
    R = ed_ideal.ring
    b = R.block_boundary
    if b is None or b >= R.nvars:
        raise InputError("the critical ideal must carry a marked data block")
    return eliminate(ed_ideal, list(R.variables[:b]), limits=limits)


# ---------------------------------------------------------------------------
# fiber counting


def _critical_system(setup: EDSetup, E: IdealPresentation,
                     u_point: Sequence) -> IdealPresentation:
    R = E.ring
    if R.block_boundary != setup.ring.nvars or \
            R.variables[:setup.ring.nvars] != setup.ring.variables:
        raise InputError("fiber counting expects a two-block critical ideal")
    fld = setup.ring.coefficient_field
    values = [fld.coerce(v) for v in u_point]
    if len(values) != len(setup.data_vars):
        raise InputError("one coordinate per data variable")
    base = setup.ring
    bindings = {name: base.constant(val)
                for name, val in zip(setup.data_vars, values)}
    gens = tuple(g.substitute(bindings, base) for g in E.generators)
    return IdealPresentation(base, gens)


def _random_linear(ring: RingContext, rng: random.Random,
                   names: Sequence[str] | None = None,
                   constant: bool = False) -> Polynomial:
    fld = ring.coefficient_field
    p = fld.characteristic
    if names is None:
        names = ring.variables
    while True:
        coeffs = [rng.randrange(p) if p else rng.randint(-9, 9)
                  for _ in range(len(names))]
        if any(coeffs):
            break
    acc = ring.constant(fld.coerce(rng.randint(1, p - 1) if p
                                   else rng.randint(1, 9))) \
        if constant else ring.zero()
    for v, c in zip(names, coeffs):
        if c:
            acc = acc + ring.variable(v).scale(fld.coerce(c))
    return acc


def _minpoly_degree(I: IdealPresentation, bound: int, seed: int,
                    limits: EngineLimits | None,
                    names: Sequence[str] | None = None) -> int:
    """Degree of the minimal polynomial of a random linear form (in the
    given variables) on the zero-dimensional quotient; counts distinct
    values over the algebraic closure, so multiplicity never inflates
    it."""
    ring = I.ring
    fld = ring.coefficient_field
    order = ring.order if ring.order.is_degree_compatible() \
        else MonomialOrder.grevlex()
    gb = I.groebner_basis(order, limits=limits)
    ell = _random_linear(ring, random.Random(seed), names)
    echelon: dict = {}
    pw = ring.one()
    for k in range(bound + 1):
        nf = normal_form(pw, gb)
        vec = {e: c for e, c in nf.terms}
        for piv in sorted(echelon, key=ring.key, reverse=True):
            c = vec.get(piv)
            if c:
                row = echelon[piv]
                for e, rc in row.items():
                    nv = fld.sub(vec.get(e, fld.zero), fld.mul(c, rc))
                    if nv:
                        vec[e] = nv
                    else:
                        vec.pop(e, None)
        if not vec:
            return k
        piv = max(vec, key=ring.key)
        inv = fld.inv(vec[piv])
        echelon[piv] = {e: fld.mul(c, inv) for e, c in vec.items()}
        pw = nf * ell
    raise InputError("quotient was not zero-dimensional")


def fiber_critical_count(setup: EDSetup, u_point: Sequence, *,
                         ed_ideal: IdealPresentation | None = None,
                         seed: int = 0,
                         limits: EngineLimits | None = None) -> int:
    """Number of critical points on Z over one data point.

    Substitutes the point into the conditional critical ideal and
    counts the vector-space dimension of the remaining system.  The
    affine model probes simple-point status with two random separating
    forms; the projective model counts through two random affine
    charts of the critical cone and insists they agree.
    """
    if ed_ideal is None:
        if setup.model is EDModel.AFFINE:
            ed_ideal = conditional_ed_ideal_affine(setup, limits=limits)
        else:
            ed_ideal = conditional_ed_ideal_projective(setup, limits=limits)
    system = _critical_system(setup, ed_ideal, u_point)

    if setup.model is EDModel.PROJECTIVE:
        counts = []
        for k in (0, 1):
            rng = random.Random(derive_seed(seed, f"chart:{k}"))
            chart = _random_linear(system.ring, rng) - system.ring.one()
            cut = IdealPresentation(system.ring,
                                    system.generators + (chart,))
            count = quotient_vector_dimension(cut, limits=limits)
            if count is None:
                raise PositiveDimensionalFiber(
                    "the data point sees a positive-dimensional set of "
                    "critical points")
            counts.append(count)
        if counts[0] != counts[1]:
            raise SliceError(
                f"chart counts disagree between seeds: {counts[0]} "
                f"vs {counts[1]}")
        if counts[0] == 0:
            raise NotOnVariety(
                "no critical points over the data point; it is outside "
                "the dense image of the correspondence")
        return counts[0]

    count = quotient_vector_dimension(system, limits=limits)
    if count is None:
        raise PositiveDimensionalFiber(
            "the data point sees a positive-dimensional set of critical "
            "points")
    if count == 0:
        raise NotOnVariety(
            "no critical points over the data point; it is outside the "
            "dense image of the correspondence")
    probe = max(
        _minpoly_degree(system, count, derive_seed(seed, "probe:0"), limits),
        _minpoly_degree(system, count, derive_seed(seed, "probe:1"), limits))
    if probe < count:
        raise HypothesisFailure(
            f"critical points over the data point are not simple: "
            f"{probe} separable values against multiplicity count {count}")
    return count


def _sliced_locus_degree(setup: EDSetup, E: IdealPresentation,
                         expected_dim: int, seed: int,
                         limits: EngineLimits | None,
                         cleanup: Sequence = ()) -> int:
    """Degree of the data locus read from a random zero-dimensional
    slice of the critical ideal; two independent draws must agree.

    The data block is cut down by generic linear forms (through the
    origin in the projective model, where an affine chart in each block
    then picks one point per critical line), and the degree is the
    number of distinct values of a random linear form in the data
    variables alone.  An empty or positive-dimensional slice means the
    locus misses its expected dimension.

    When the critical ideal arrives unsaturated, its cleanup moduli
    (polynomials or ideals over the same ring) are saturated out of
    each slice instead; on the sliced system that costs far less than
    cleaning the full correspondence.
    """
    R = E.ring
    projective = setup.model is EDModel.PROJECTIVE
    cuts = expected_dim - 1 if projective else expected_dim
    found = []
    for trial in (0, 1):
        rng = random.Random(derive_seed(seed, f"locus-slice:{trial}"))
        gens = list(E.generators)
        for _ in range(cuts):
            gens.append(_random_linear(R, rng, setup.data_vars,
                                       constant=not projective))
        if projective:
            gens.append(_random_linear(R, rng, setup.data_vars,
                                       constant=True))
            gens.append(_random_linear(R, rng, setup.ring.variables,
                                       constant=True))
        sliced = IdealPresentation(R, tuple(gens))
        for modulus in cleanup:
            if isinstance(modulus, Polynomial):
                sliced = saturate_element(sliced, modulus, limits)
            else:
                sliced = saturate_ideal(sliced, modulus, limits)
        count = quotient_vector_dimension(sliced, limits=limits)
        if count is None or count == 0:
            shape = "positive dimensional" if count is None else "empty"
            raise HypothesisFailure(
                f"data locus failed its dimension audit: a generic slice "
                f"at codimension {expected_dim} came out {shape}")
        deg = max(
            _minpoly_degree(sliced, count,
                            derive_seed(seed, f"locus-sep:{trial}:{k}"),
                            limits, setup.data_vars)
            for k in (0, 1))
        found.append(deg)
    if found[0] != found[1]:
        raise SliceError(f"data-locus degree disagrees between seeds: "
                         f"{found[0]} vs {found[1]}")
    return found[0]


# ---------------------------------------------------------------------------
# data-point sampling


def _rand_value(rng: random.Random, fld) -> object:
    p = fld.characteristic
    return fld.coerce(rng.randrange(p) if p else rng.randint(-9, 9))


def sample_data_point(setup: EDSetup,
                      param: tuple | None = None,
                      seed: int = 0, *,
                      attempts: int = 8,
                      ed_ideal: IdealPresentation | None = None,
                      limits: EngineLimits | None = None) -> tuple:
    """A data point on the data locus, over the pair's field.

    With parametrizations (phi for X, psi for the parameter preimage
    of Z) the point is built exactly: a random parameter value gives a
    smooth x* on Z, and the point is x* plus a random combination of
    an exact normal basis at x* (plus a random multiple of x* itself
    in the projective model).  Without them the data-locus ideal is
    sliced to dimension zero over a prime field and scanned for a
    rational point.
    """
    fld = setup.ring.coefficient_field
    rng = random.Random(derive_seed(seed, "data-point"))
    if param is not None:
        phi, psi = param
        return _sample_from_param(setup, list(phi), list(psi), rng, attempts)

    if not fld.characteristic:
        raise InputError(
            "point scanning needs a prime field; reduce the pair first "
            "or supply parametrizations")
    if ed_ideal is None:
        if setup.model is EDModel.AFFINE:
            ed_ideal = conditional_ed_ideal_affine(setup, limits=limits)
        else:
            ed_ideal = conditional_ed_ideal_projective(setup, limits=limits)
    DL = data_locus_ideal(ed_ideal, limits=limits)
    h = hilbert_dim_degree(DL, homogenize=not DL.is_homogeneous(),
                           limits=limits)
    if h.krull_dimension <= 0:
        raise HypothesisFailure("the data locus leaves no room to slice")
    point = sample_point(DL, [h.krull_dimension - 1], seed,
                         attempts=attempts, limits=limits)
    if point is None:
        raise HypothesisFailure(
            "no rational point found on the sliced data locus within "
            "the trial budget")
    return tuple(point[v] for v in DL.ring.variables)


def _sample_from_param(setup: EDSetup, phi: list, psi: list,
                       rng: random.Random, attempts: int) -> tuple:
    pair = setup.pair
    fld = setup.ring.coefficient_field
    n = setup.ring.nvars
    if len(phi) != n:
        raise InputError("phi needs one component per ambient coordinate")
    if phi[0].ring.coefficient_field != fld:
        raise InputError("parametrization field must match the pair's")
    if psi and len(psi) != phi[0].ring.nvars:
        raise InputError("psi must land in phi's parameter space")
    jac = jacobian_matrix(list(pair.ideal_X.generators))
    inv = None if _is_identity_form(setup.quad_form) \
        else setup.quad_form.inverse()
    for _ in range(attempts):
        vstar = [_rand_value(rng, fld) for _ in range(psi[0].ring.nvars)]
        tstar = [p.evaluate(vstar) for p in psi]
        xstar = [p.evaluate(tstar) for p in phi]
        bad = any(g.evaluate(xstar) for g in pair.ideal_Z.generators)
        if bad:
            raise InputError("psi does not land in the parameter locus of Z")
        numeric = [[e.evaluate(xstar) for e in row] for row in jac]
        if inv is not None:
            numeric = [[_dot_col(fld, row, inv, j) for j in range(n)]
                       for row in numeric]
        if matrices.matrix_rank(fld, [r[:] for r in numeric]) != pair.codim_X:
            continue  # x* fell on the singular locus; redraw
        rows, _ = matrices.rref(fld, [r[:] for r in numeric])
        basis = [r for r in rows if any(r)]
        u = list(xstar)
        if setup.model is EDModel.PROJECTIVE:
            scale = _rand_value(rng, fld)
            u = [fld.mul(scale, c) for c in u]
        for b in basis:
            w = _rand_value(rng, fld)
            u = [fld.add(c, fld.mul(w, e)) for c, e in zip(u, b)]
        return tuple(u)
    raise HypothesisFailure(
        "all sampled parameter points landed on singular points of X")


def _dot_col(fld, row: list, inv: list, j: int):
    acc = fld.zero
    for k, c in enumerate(row):
        if c:
            acc = fld.add(acc, fld.mul(c, inv[k][j]))
    return acc


# ---------------------------------------------------------------------------
# parametrized correspondences


@dataclass(frozen=True)
class ParamCorrespondence:
    """Polynomial maps cutting out the affine critical correspondence.

    Over the combined (v, w) parameter ring: point_map parametrizes Z
    inside X, normal_map the normal vector attached to it, data_map
    their sum.  kernel_basis holds the normal frame over phi's own
    parameter ring, before composing with psi.
    """

    ring: RingContext
    point_map: tuple
    normal_map: tuple
    data_map: tuple
    kernel_basis: tuple


def param_ed_correspondence(phi: Sequence[Polynomial],
                            psi: Sequence[Polynomial], *,
                            quad_form: QuadraticForm | None = None,
                            seed: int = 0,
                            limits: EngineLimits | None = None
                            ) -> ParamCorrespondence:
    """Compose a parametrization of X with one of Z's parameter locus
    and attach an exact polynomial frame of the normal spaces.

    The frame is the kernel of the transposed Jacobian of phi, computed
    fraction-free and normalized to unit content; a generic-rank probe
    rejects degenerate parametrizations first.
    """
    phi = list(phi)
    psi = list(psi)
    if not phi or not psi:
        raise InputError("both parametrizations need components")
    t_ring = phi[0].ring
    v_ring = psi[0].ring
    fld = t_ring.coefficient_field
    if any(p.ring != t_ring for p in phi) or any(p.ring != v_ring for p in psi):
        raise InputError("parametrization components must share a ring")
    if len(psi) != t_ring.nvars:
        raise InputError("psi must land in phi's parameter space")
    m = t_ring.nvars
    n = len(phi)
    jac = jacobian_matrix(phi)
    rng = random.Random(derive_seed(seed, "rank-probe"))
    for _ in range(6):
        point = [_rand_value(rng, fld) for _ in range(m)]
        numeric = [[e.evaluate(point) for e in row] for row in jac]
        if matrices.matrix_rank(fld, numeric) == m:
            break
    else:
        raise HypothesisFailure(
            "parametrization is degenerate: the Jacobian never reached "
            "full column rank at sampled parameter points")
    transposed = [[jac[i][j] for i in range(n)] for j in range(m)]
    kernel = matrices.poly_kernel(t_ring, transposed)
    if len(kernel) != n - m:
        raise HypothesisFailure(
            f"normal frame has rank {len(kernel)}, expected {n - m}")
    if quad_form is not None and not _is_identity_form(quad_form):
        inv = quad_form.inverse()
        kernel = [tuple(
            _poly_dot_col(t_ring, row, inv, i) for i in range(n))
            for row in kernel]

    w_names = []
    taken = set(v_ring.variables)
    k = 0
    while len(w_names) < len(kernel):
        name = f"w{k}"
        if name not in taken:
            w_names.append(name)
        k += 1
    VW = RingContext(v_ring.variables + tuple(w_names), fld,
                     MonomialOrder.grevlex())
    psi_vw = [_lift(p, VW) for p in psi]
    bindings = dict(zip(t_ring.variables, psi_vw))

    def compose(p: Polynomial) -> Polynomial:
        return p.substitute(bindings, VW)

    point_map = tuple(compose(p) for p in phi)
    ws = [VW.variable(w) for w in w_names]
    normal_map = []
    for j in range(n):
        acc = VW.zero()
        for w, row in zip(ws, kernel):
            entry = compose(row[j])
            if not entry.is_zero():
                acc = acc + w * entry
        normal_map.append(acc)
    data_map = tuple(x + y for x, y in zip(point_map, normal_map))
    return ParamCorrespondence(VW, point_map, tuple(normal_map), data_map,
                               tuple(tuple(row) for row in kernel))


def _poly_dot_col(ring: RingContext, row: Sequence[Polynomial],
                  inv: list, i: int) -> Polynomial:
    acc = ring.zero()
    for k, p in enumerate(row):
        c = inv[k][i]
        if c:
            acc = acc + p.scale(c)
    return acc


def correspondence_image_ideal(corr: ParamCorrespondence, setup: EDSetup, *,
                               limits: EngineLimits | None = None
                               ) -> IdealPresentation:
    """Implicitize a parametrized correspondence into the (x, u) ring."""
    R = setup.ed_ring()
    taken = set(corr.ring.variables) & set(R.variables)
    if taken:
        raise InputError(f"parameter names collide with the pair's: "
                         f"{sorted(taken)}")
    big = RingContext(corr.ring.variables + R.variables,
                      R.coefficient_field, MonomialOrder.grevlex())
    gens = []
    for name, p in zip(setup.ring.variables, corr.point_map):
        gens.append(big.variable(name) - _lift(p, big))
    for name, p in zip(setup.data_vars, corr.data_map):
        gens.append(big.variable(name) - _lift(p, big))
    I = IdealPresentation(big, tuple(gens))
    E = eliminate(I, list(corr.ring.variables), limits=limits)
    return extend_to_ring(E, R)


# ---------------------------------------------------------------------------
# the degree report


def normal_image_in_data_locus(conormal: IdealPresentation,
                               dl_ideal: IdealPresentation, *,
                               limits: EngineLimits | None = None) -> bool:
    """Is the normal image of a cone pair inside its data locus?

    The image (the projection of the conormal to the normal block) is
    compared against the data locus by radical membership, after the
    data coordinates are renamed onto the base block.
    """
    image = relative_dual_ideal(conormal, limits=limits)
    base = image.ring
    if dl_ideal.ring.nvars != base.nvars:
        raise InputError("data locus and base ring sizes differ")
    position = list(range(base.nvars))
    renamed = tuple(g.map_exponents(base, position)
                    for g in dl_ideal.generators)
    return radical_contains(image, IdealPresentation(base, renamed),
                            limits=limits)


def conditional_ed_degree(setup: EDSetup,
                          mdv: MultidegreeVector | None = None, *,
                          conormal: IdealPresentation | None = None,
                          sample: bool = True,
                          param: tuple | None = None,
                          seed: int = 0,
                          limits: EngineLimits | None = None) -> EDDResult:
    """Degree report for one pair: multidegree sum, data-locus degree,
    their ratio, and an optional sampled fiber count.

    The ratio route needs the projective model, the pair's multidegree
    vector, and a conormal missing the diagonal; when the diagonal
    meets, the ratio is withheld (a warning is emitted) and only fiber
    evidence is reported.  A non-integral ratio is a hypothesis
    failure, never rounded.  The affine model reports the sampled
    fiber count as the degree estimate.  Data-locus degrees come from
    the slice protocol, which also audits the locus dimension.
    """
    pair = setup.pair
    fld = setup.ring.coefficient_field

    if setup.model is EDModel.PROJECTIVE:
        if mdv is None:
            raise InputError("the projective route needs the pair's "
                             "multidegree vector")
        if conormal is None:
            conormal = relative_conormal_ideal(pair, limits=limits)
        diagonal_ok = diagonal_check(conormal, limits=limits)
        # slice the raw system; junk clears far faster slice by slice
        E = None
        raw, q_lift, sing_lift = _projective_raw_system(setup, limits)
        cleanup = (q_lift,) if sing_lift is None else (q_lift, sing_lift)
        expected_dim = pair.ambient_dim + 1 - pair.codim_Z_in_X
        deg_DL = _sliced_locus_degree(setup, raw, expected_dim, seed, limits,
                                      cleanup)
        sum_delta = mdv.total()
        edd: int | None = None
        if diagonal_ok:
            if sum_delta % deg_DL:
                raise HypothesisFailure(
                    f"multidegree sum {sum_delta} is not a multiple of the "
                    f"data-locus degree {deg_DL}; a genericity hypothesis "
                    f"failed")
            edd = sum_delta // deg_DL
        else:
            warnings.warn(
                "conormal meets the diagonal; the multidegree ratio is "
                "withheld", RuntimeWarning, stacklevel=2)
    else:
        if mdv is not None:
            raise InputError("multidegrees pair with the projective model "
                             "only")
        diagonal_ok = None
        sum_delta = None
        edd = None
        E = conditional_ed_ideal_affine(setup, limits=limits)
        expected_dim = setup.ring.nvars - pair.codim_Z_in_X
        deg_DL = _sliced_locus_degree(setup, E, expected_dim, seed, limits)

    fiber_count: int | None = None
    if sample and (param is not None or fld.characteristic):
        if E is None:
            E = conditional_ed_ideal_projective(setup, limits=limits)
        try:
            u = sample_data_point(setup, param, seed, ed_ideal=E,
                                  limits=limits)
            fiber_count = fiber_critical_count(setup, u, ed_ideal=E,
                                               seed=seed, limits=limits)
        except PositiveDimensionalFiber:
            raise
        except HypothesisFailure:
            fiber_count = None  # sampling is best effort here

    if setup.model is EDModel.AFFINE:
        edd = fiber_count
    consistent = True
    if edd is not None and fiber_count is not None:
        consistent = edd == fiber_count
    return EDDResult(sum_delta, deg_DL, edd, fiber_count, consistent,
                     diagonal_ok)
