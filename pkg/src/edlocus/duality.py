"""Relative conormal and dual varieties, multidegrees, polar degrees,
contact loci, defects, and the reflexivity/reciprocity checks.

Conventions. The dual projective space is identified with the primal
one through the pair's quadratic form, so dual ideals are expressed in
the original variable names. Internally the conormal lives in a product
ring whose second block repeats the variables with a "d_" prefix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import HypothesisFailure, InputError, NotOnVariety
from .geometry import (QuadraticForm, VarietyPair, derive_seed,
                       ideal_mod_p, jacobian_matrix, minors_ideal,
                       radical_contains, random_homogeneous, sample_point,
                       singular_locus_ideal, slice_and_count)
from .groebner import (EngineLimits, IdealPresentation, eliminate,
                       hilbert_dim_degree, ideal_equal, saturate_ideal)
from .rings import MonomialOrder, Polynomial, RingContext

DUAL_PREFIX = "d_"


# ---------------------------------------------------------------------------
# result types


@dataclass(frozen=True)
class MultidegreeVector:
    """Bidegree coefficients of a relative conormal variety, trimmed to
    the nonzero window; index j pairs an x-slice of codimension j with
    the complementary y-slice."""

    values: tuple
    offset: int
    ambient_dim: int
    dim_X: int
    dim_Z: int

    @property
    def top_index(self) -> int:
        # dimension of the conormal variety
        return self.ambient_dim - 1 - self.dim_X + self.dim_Z

    def at(self, j: int) -> int:
        if j < self.offset or j >= self.offset + len(self.values):
            return 0
        return self.values[j - self.offset]

    def full(self) -> list:
        return [self.at(j) for j in range(self.top_index + 1)]

    @property
    def first_nonzero_index(self) -> int:
        if not self.values:
            raise InputError("empty multidegree vector")
        return self.offset

    @property
    def last_nonzero_index(self) -> int:
        if not self.values:
            raise InputError("empty multidegree vector")
        return self.offset + len(self.values) - 1

    @property
    def first_nonzero_value(self) -> int:
        return self.values[0]

    @property
    def last_nonzero_value(self) -> int:
        return self.values[-1]

    def total(self) -> int:
        return sum(self.values)


@dataclass(frozen=True)
class DefectReport:
    def_X: int
    def_XZ: int
    codim_XZ_dual_in_Xdual: int
    dual_regular: bool
    reflexive_rel: bool
    reciprocal_rel: bool
    notes: tuple = ()


@dataclass(frozen=True)
class GenericSliceReport:
    passed: bool
    multidegree_identity_ok: bool
    codim_identity_ok: bool
    codim_Y: int
    deg_Y: int
    def_X: int
    mdv_X: MultidegreeVector
    mdv_rel: MultidegreeVector
    checked_range: tuple
    deg_dual_X: int = 0
    deg_dual_rel: int = 0


# ---------------------------------------------------------------------------
# the conormal construction


def product_ring(ring: RingContext) -> RingContext:
    """The (x, y) ring: original block first, prefixed dual block second."""
    prefix = DUAL_PREFIX
    k = 0
    while any(prefix + v in ring.variables for v in ring.variables):
        k += 1
        prefix = f"d{k}_"
    dual_names = tuple(prefix + v for v in ring.variables)
    return RingContext(ring.variables + dual_names, ring.coefficient_field,
                       MonomialOrder.grevlex(), block_boundary=ring.nvars)


def dual_variable_names(product: RingContext) -> tuple:
    b = product.block_boundary
    return product.variables[b:]


def _extend(p: Polynomial, target: RingContext) -> Polynomial:
    position = [target.index(v) for v in p.ring.variables]
    return p.map_exponents(target, position)


def _projectively_empty(I: IdealPresentation,
                        limits: EngineLimits | None) -> bool:
    ring = I.ring
    irrelevant = IdealPresentation(ring, ring.gens())
    return saturate_ideal(I, irrelevant, limits).is_unit(limits=limits)


def relative_conormal_ideal(pair: VarietyPair, *,
                            limits: EngineLimits | None = None) -> IdealPresentation:
    """Bihomogeneous ideal of the relative conormal variety.

    Built from the ideal of Z plus the rank condition stacking the
    form-twisted dual row over the Jacobian of X's generators, then
    cleaned by saturation: the singular modulus first, the two
    irrelevant ideals after.
    """
    if not pair.projective:
        raise InputError("relative conormal needs a projective pair")
    ring = pair.ring
    c = pair.codim_X
    sing = singular_locus_ideal(pair.ideal_X, c, limits=limits)
    if radical_contains(pair.ideal_Z, sing, limits=limits):
        raise HypothesisFailure(
            "Z lies in the singular locus of X; the relative conormal "
            "variety is empty")
    P = product_ring(ring)
    dual_names = dual_variable_names(P)
    yrow = pair.quad_form.apply_to_variables(P, dual_names)
    jac = jacobian_matrix(list(pair.ideal_X.generators))
    matrix = [yrow] + [[_extend(e, P) for e in row] for row in jac]
    mins = minors_ideal(matrix, c + 1, P)
    gens = tuple(_extend(g, P) for g in pair.ideal_Z.generators)
    W = IdealPresentation(P, gens + mins.generators)

    x_block = IdealPresentation(P, tuple(P.variable(v) for v in ring.variables))
    y_block = IdealPresentation(P, tuple(P.variable(v) for v in dual_names))
    # a smooth X turns the singular modulus into the irrelevant ideal
    # (same radical, hence the same saturation), already handled next
    if not _projectively_empty(sing, limits):
        sing_ext = IdealPresentation(
            P, tuple(_extend(g, P) for g in sing.generators))
        W = saturate_ideal(W, sing_ext, limits)
    W = saturate_ideal(W, x_block, limits)
    W = saturate_ideal(W, y_block, limits)
    return W


def conormal_base_ring(conormal: IdealPresentation) -> RingContext:
    """The x-block ring a conormal ideal was built over."""
    P = conormal.ring
    b = P.block_boundary
    if b is None or 2 * b != P.nvars:
        raise InputError("not a conormal product ring")
    return RingContext(P.variables[:b], P.coefficient_field,
                       MonomialOrder.grevlex())


def relative_dual_ideal(conormal: IdealPresentation, *,
                        limits: EngineLimits | None = None) -> IdealPresentation:
    """Project the conormal to the second factor and rename the dual
    block back to the original coordinates."""
    P = conormal.ring
    b = P.block_boundary
    if b is None:
        raise InputError("conormal ideal must live in a product ring")
    x_names = P.variables[:b]
    E = eliminate(conormal, list(x_names), limits=limits)
    base = RingContext(x_names, P.coefficient_field, MonomialOrder.grevlex())
    position = list(range(b))
    gens = tuple(g.map_exponents(base, position) for g in E.generators)
    out = IdealPresentation(base, gens)
    out.cache_basis(base.order, sorted(gens, key=Polynomial.sort_key))
    return out


# ---------------------------------------------------------------------------
# multidegrees and polar degrees


def multidegree_vector(conormal: IdealPresentation, dims: tuple, *,
                       expected_last: int | None = None, classical: bool = False,
                       seed: int = 0,
                       limits: EngineLimits | None = None) -> MultidegreeVector:
    """Slice-count every admissible bidegree of the conormal.

    dims is (ambient N, dim X, dim Z). The conormal's dimension is
    verified first; the j-th count pairs x-codimension j with the
    complementary y-codimension. The last nonzero entry must sit at
    index dim Z, equal to deg Z when the caller supplies it. With
    classical=True (the Z = X situation) interior entries must be
    positive as well.
    """
    N, n, d = dims
    top = N - 1 - n + d
    h = hilbert_dim_degree(conormal, limits=limits)
    if h.krull_dimension != top + 2:
        raise HypothesisFailure(
            f"conormal dimension is {h.krull_dimension - 2}, expected {top}")
    values = []
    for j in range(top + 1):
        values.append(slice_and_count(
            conormal, j, top - j, derive_seed(seed, f"mdv:{j}"),
            limits=limits))
    if not any(values):
        raise HypothesisFailure("all multidegrees vanished")
    first = next(i for i, v in enumerate(values) if v)
    last = top - next(i for i, v in enumerate(reversed(values)) if v)
    if last != d:
        raise HypothesisFailure(
            f"last nonzero multidegree at index {last}, expected dim Z = {d}")
    if expected_last is not None and values[last] != expected_last:
        raise HypothesisFailure(
            f"last multidegree {values[last]} != deg Z = {expected_last}")
    if classical and any(v == 0 for v in values[first:last + 1]):
        raise HypothesisFailure(
            "interior multidegree vanished on a classical conormal")
    return MultidegreeVector(tuple(values[first:last + 1]), first, N, n, d)


def pair_multidegrees(pair: VarietyPair, conormal: IdealPresentation, *,
                      seed: int = 0,
                      limits: EngineLimits | None = None) -> MultidegreeVector:
    return multidegree_vector(
        conormal, (pair.ambient_dim, pair.dim_X, pair.dim_Z),
        expected_last=pair.deg_Z,
        classical=pair.ideal_Z == pair.ideal_X, seed=seed, limits=limits)


def relative_polar_degrees(mdv: MultidegreeVector) -> list:
    """Polar degrees read off the multidegrees in reverse order."""
    d = mdv.dim_Z
    return [mdv.at(d - i) for i in range(d + 1)]


# ---------------------------------------------------------------------------
# contact loci and defects


def contact_locus(pair: VarietyPair, conormal: IdealPresentation,
                  H: tuple, *, dual: IdealPresentation | None = None,
                  limits: EngineLimits | None = None) -> IdealPresentation:
    """Ideal (in x) of the conormal fiber over one dual point."""
    ring = pair.ring
    fld = ring.coefficient_field
    point = [fld.coerce(v) for v in H]
    if len(point) != ring.nvars:
        raise InputError("dual point arity does not match the ambient space")
    if not any(point):
        raise InputError("dual point cannot be the origin")
    if dual is None:
        dual = relative_dual_ideal(conormal, limits=limits)
    for g in dual.generators:
        if g.evaluate(point) != fld.zero:
            raise NotOnVariety("point is not on the relative dual variety")
    P = conormal.ring
    dual_names = dual_variable_names(P)
    bindings = {nm: ring.constant(point[i]) for i, nm in enumerate(dual_names)}
    gens = tuple(g.substitute(bindings, ring) for g in conormal.generators)
    return IdealPresentation(ring, gens)


def _projective_dim(I: IdealPresentation,
                    limits: EngineLimits | None) -> int:
    return hilbert_dim_degree(I, limits=limits).projective_dimension


def _evaluate_all_zero(gens, point_values: dict) -> bool:
    ring = gens[0].ring if gens else None
    if ring is None:
        return True
    vec = [point_values[v] for v in ring.variables]
    fld = ring.coefficient_field
    return all(g.evaluate(vec) == fld.zero for g in gens)


def _regularity_witness(pair: VarietyPair, conormal: IdealPresentation,
                        sing_X: IdealPresentation,
                        sing_dual: IdealPresentation,
                        seed: int, prime: int,
                        limits: EngineLimits | None) -> tuple:
    """Sample conormal points over a prime field and test that some
    witness projects into the smooth loci on both sides.

    Returns (regular, note)."""
    P = conormal.ring
    if P.coefficient_field.characteristic:
        Wp = conormal
        prime = P.coefficient_field.characteristic
    else:
        Wp = ideal_mod_p(conormal, prime)
    b = P.block_boundary
    x_names = P.variables[:b]
    y_names = P.variables[b:]
    d = pair.dim_Z
    top = pair.ambient_dim - 1 - pair.dim_X + d
    sing_X_p = sing_X if sing_X.ring.coefficient_field.characteristic else \
        ideal_mod_p(sing_X, prime)
    sing_d_p = sing_dual if sing_dual.ring.coefficient_field.characteristic \
        else ideal_mod_p(sing_dual, prime)
    found_any = False
    for k in range(3):
        pt = sample_point(Wp, [d, top - d], derive_seed(seed, f"reg:{k}"),
                          limits=limits)
        if pt is None:
            continue
        found_any = True
        xvals = {v: pt[v] for v in x_names}
        # dual coordinates map back to the original names by position
        yvals = {x_names[i]: pt[y_names[i]] for i in range(len(x_names))}
        x_sing = _evaluate_all_zero(list(sing_X_p.generators), xvals)
        y_sing = _evaluate_all_zero(list(sing_d_p.generators), yvals)
        if not x_sing and not y_sing:
            return True, f"regular witness found over F_{prime}"
        note = []
        if x_sing:
            note.append("x-side witness landed in the singular locus of X")
        if y_sing:
            note.append("y-side witness landed in the singular locus of "
                        "the dual")
    if not found_any:
        return False, (f"no prime-field point of the conormal found over "
                       f"F_{prime}; regularity unconfirmed")
    return False, "; ".join(note)


def _substitute_dual_point(conormal: IdealPresentation, H: dict,
                           base: RingContext) -> IdealPresentation:
    P = conormal.ring
    dual_names = dual_variable_names(P)
    bindings = {nm: base.constant(H[base.variables[i]])
                for i, nm in enumerate(dual_names)}
    gens = tuple(g.substitute(bindings, base) for g in conormal.generators)
    return IdealPresentation(base, gens)


def dual_fiber_probe(conormal: IdealPresentation, dual: IdealPresentation,
                     *, seed: int = 0, prime: int = 32003,
                     limits: EngineLimits | None = None) -> tuple:
    """Substitute one sampled prime-field dual point into the conormal.

    Returns (fiber projective dimension, fiber degree) or (None, None)
    when no rational point shows up. A (0, 1) answer certifies that the
    projection to the dual variety is generically one to one, because
    fiber size only jumps upward on special points.
    """
    if dual.ring.coefficient_field.characteristic:
        dual_p, conormal_p = dual, conormal
    else:
        dual_p = ideal_mod_p(dual, prime)
        conormal_p = ideal_mod_p(conormal, prime)
    dim_dual = _projective_dim(dual_p, limits)
    H = sample_point(dual_p, [dim_dual], seed, limits=limits)
    if H is None:
        return None, None
    K = _substitute_dual_point(conormal_p, H, dual_p.ring)
    h = hilbert_dim_degree(K, limits=limits)
    return h.projective_dimension, h.degree


def first_multidegree_consistency(mdv: MultidegreeVector,
                                  conormal: IdealPresentation,
                                  dual: IdealPresentation, *,
                                  seed: int = 0, prime: int = 32003,
                                  limits: EngineLimits | None = None) -> str:
    """Check first nonzero multidegree == (fiber count) * deg(dual).

    Certified only when a sampled dual-point fiber is one reduced
    point; otherwise reports the sampling as inconclusive.
    """
    deg_dual = hilbert_dim_degree(dual, limits=limits).degree
    fdim, fdeg = dual_fiber_probe(conormal, dual, seed=seed, prime=prime,
                                  limits=limits)
    if fdim == 0 and fdeg == 1:
        if mdv.first_nonzero_value != deg_dual:
            raise HypothesisFailure(
                f"first multidegree {mdv.first_nonzero_value} != degree "
                f"{deg_dual} of the dual on a one-to-one projection")
        return "confirmed"
    return "inconclusive"


def swap_blocks(I: IdealPresentation) -> IdealPresentation:
    """Exchange the two variable blocks of a product-ring ideal."""
    P = I.ring
    b = P.block_boundary
    if b is None or 2 * b != P.nvars:
        raise InputError("block swap needs a balanced product ring")
    position = [i + b for i in range(b)] + [i for i in range(b)]
    gens = tuple(g.map_exponents(P, position) for g in I.generators)
    return IdealPresentation(P, gens)


def defect_pair(pair: VarietyPair, *, seed: int = 0, prime: int = 32003,
                conormal: IdealPresentation | None = None,
                limits: EngineLimits | None = None) -> DefectReport:
    """Defects, dual codimension, and the three equivalent properties.

    The equivalence (equal defects, relative reflexivity, relative
    reciprocity) is asserted only when a sampled conormal witness
    confirms dual regularity; otherwise the booleans are reported as
    observed, with a note.
    """
    ring = pair.ring
    N = pair.ambient_dim
    notes: list[str] = []
    if conormal is None:
        conormal = relative_conormal_ideal(pair, limits=limits)
    dual_Z = relative_dual_ideal(conormal, limits=limits)

    if pair.ideal_Z == pair.ideal_X:
        conormal_X, dual_X = conormal, dual_Z
    else:
        pair_XX = VarietyPair(pair.ideal_X, pair.ideal_X,
                              quad_form=pair.quad_form, validate=False,
                              limits=limits)
        conormal_X = relative_conormal_ideal(pair_XX, limits=limits)
        dual_X = relative_dual_ideal(conormal_X, limits=limits)

    dim_dual_X = _projective_dim(dual_X, limits)
    dim_dual_Z = _projective_dim(dual_Z, limits)
    def_X = N - 1 - dim_dual_X
    def_XZ = N - 1 - pair.codim_Z_in_X - dim_dual_Z
    codim_rel = dim_dual_X - dim_dual_Z

    sing_X = singular_locus_ideal(pair.ideal_X, pair.codim_X, limits=limits)
    sing_dual = singular_locus_ideal(dual_X, N - dim_dual_X, limits=limits)
    regular, note = _regularity_witness(pair, conormal, sing_X, sing_dual,
                                        seed, prime, limits)
    notes.append(note)

    # the fiber over a sampled dual point is a contact locus; its
    # dimension can only exceed def(X,Z) on a non-generic sample
    for k in range(2):
        fdim, _ = dual_fiber_probe(conormal, dual_Z,
                                   seed=derive_seed(seed, f"contact:{k}"),
                                   prime=prime, limits=limits)
        if fdim is None:
            notes.append("contact cross-check inconclusive: no dual point "
                         "sampled")
            break
        if fdim == def_XZ:
            notes.append("contact locus dimension matches def(X,Z)")
            break
        if fdim < def_XZ:
            raise HypothesisFailure(
                f"sampled contact locus has dimension {fdim} below "
                f"def(X,Z) = {def_XZ}")
    else:
        notes.append("sampled contact loci all exceeded def(X,Z); "
                     "samples look non-generic")

    # reflexivity: the conormal of the dual pair, blocks swapped
    pair_dual = VarietyPair(dual_X, dual_Z, quad_form=pair.quad_form,
                            validate=False, limits=limits)
    try:
        conormal_dual = relative_conormal_ideal(pair_dual, limits=limits)
    except HypothesisFailure:
        # the dual of Z sits inside the singular locus of the dual of X,
        # so the reverse conormal is empty and both properties fail
        notes.append("dual pair has empty relative conormal")
        reflexive = reciprocal = False
    else:
        reflexive = ideal_equal(conormal, swap_blocks(conormal_dual),
                                limits=limits)
        double_dual = relative_dual_ideal(conormal_dual, limits=limits)
        reciprocal = radical_contains(pair.ideal_Z, double_dual,
                                      limits=limits) \
            and radical_contains(double_dual, pair.ideal_Z, limits=limits)

    if regular:
        same_defect = def_XZ == def_X
        if not (same_defect == reflexive == reciprocal):
            raise HypothesisFailure(
                "equivalence of defect equality, relative reflexivity and "
                f"relative reciprocity failed: {same_defect}, {reflexive}, "
                f"{reciprocal}")
        if codim_rel != pair.codim_Z_in_X + def_XZ - def_X:
            raise HypothesisFailure(
                "dual codimension does not match codim_X(Z) + def(X,Z) "
                "- def(X) on a dual-regular pair")
        if not (0 <= def_XZ <= def_X):
            raise HypothesisFailure(
                f"defect bounds violated: def(X,Z) = {def_XZ}, "
                f"def(X) = {def_X}")
    else:
        notes.append("dual regularity unconfirmed; equivalence of the "
                     "three properties not asserted")

    return DefectReport(def_X, def_XZ, codim_rel, regular, reflexive,
                        reciprocal, tuple(notes))


# ---------------------------------------------------------------------------
# diagonal avoidance and generic slices


def diagonal_check(conormal: IdealPresentation, *,
                   limits: EngineLimits | None = None) -> bool:
    """True when the conormal avoids the diagonal of the two factors.

    Bihomogeneity lets the proportionality condition collapse to the
    substitution y = x: the intersection with the diagonal is nonempty
    exactly when the substituted ideal keeps a positive-dimensional
    cone.
    """
    base = conormal_base_ring(conormal)
    P = conormal.ring
    dual_names = dual_variable_names(P)
    bindings = {nm: base.variable(base.variables[i])
                for i, nm in enumerate(dual_names)}
    gens = tuple(g.substitute(bindings, base) for g in conormal.generators)
    K = IdealPresentation(base, gens)
    h = hilbert_dim_degree(K, limits=limits)
    return h.krull_dimension <= 0


def diagonal_check_by_minors(conormal: IdealPresentation, *,
                             limits: EngineLimits | None = None) -> bool:
    """Reference construction: adjoin the rank condition on (x; y) and
    saturate by both irrelevant ideals; used to cross-check
    diagonal_check on small inputs."""
    P = conormal.ring
    b = P.block_boundary
    x_names, y_names = P.variables[:b], P.variables[b:]
    rows = [[P.variable(v) for v in x_names],
            [P.variable(v) for v in y_names]]
    mins = minors_ideal(rows, 2, P)
    J = IdealPresentation(P, conormal.generators + mins.generators)
    J = saturate_ideal(J, IdealPresentation(
        P, tuple(P.variable(v) for v in x_names)), limits)
    if J.is_unit(limits=limits):
        return True
    J = saturate_ideal(J, IdealPresentation(
        P, tuple(P.variable(v) for v in y_names)), limits)
    return J.is_unit(limits=limits)


def generic_slice_check(ideal_X: IdealPresentation, ci_degrees: tuple, *,
                        seed: int = 0, quad_form: QuadraticForm | None = None,
                        limits: EngineLimits | None = None) -> GenericSliceReport:
    """Slice X by a random complete intersection and verify the two
    displayed identities: the shifted multidegree proportionality and
    the dual-codimension jump."""
    ring = ideal_X.ring
    c = len(ci_degrees)
    pair_X = VarietyPair(ideal_X, ideal_X, quad_form=quad_form,
                         validate=False, limits=limits)
    n = pair_X.dim_X
    if c > n:
        raise InputError("slice codimension exceeds dim X")
    conormal_X = relative_conormal_ideal(pair_X, limits=limits)
    mdv_X = pair_multidegrees(pair_X, conormal_X, seed=derive_seed(seed, "mdvX"),
                              limits=limits)
    dual_X = relative_dual_ideal(conormal_X, limits=limits)
    def_X = pair_X.ambient_dim - 1 - _projective_dim(dual_X, limits)

    for attempt in range(4):
        rng = random.Random(derive_seed(seed, f"Y:{attempt}"))
        ys = [random_homogeneous(ring, e, rng) for e in ci_degrees]
        ideal_Z = IdealPresentation(ring, ideal_X.generators + tuple(ys))
        hz = hilbert_dim_degree(ideal_Z, limits=limits)
        if hz.projective_dimension == n - c:
            break
    else:
        raise HypothesisFailure("random slices kept hitting X badly")
    pair_Z = VarietyPair(ideal_X, ideal_Z, quad_form=quad_form,
                         validate=False, limits=limits)
    conormal_Z = relative_conormal_ideal(pair_Z, limits=limits)
    mdv_rel = pair_multidegrees(pair_Z, conormal_Z,
                                seed=derive_seed(seed, "mdvZ"), limits=limits)
    dual_Z = relative_dual_ideal(conormal_Z, limits=limits)

    deg_Y = 1
    for e in ci_degrees:
        deg_Y *= e
    lo = max(def_X, c)
    mdv_ok = all(mdv_rel.at(i - c) == deg_Y * mdv_X.at(i)
                 for i in range(lo, n + 1))
    codim = _projective_dim(dual_X, limits) - _projective_dim(dual_Z, limits)
    codim_ok = codim == max(0, c - def_X)
    return GenericSliceReport(mdv_ok and codim_ok, mdv_ok, codim_ok,
                              c, deg_Y, def_X, mdv_X, mdv_rel, (lo, n),
                              hilbert_dim_degree(dual_X, limits=limits).degree,
                              hilbert_dim_degree(dual_Z, limits=limits).degree)
