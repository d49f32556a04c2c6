"""Exact Groebner engine: division, Buchberger, elimination, saturation,
Hilbert-series dimension and degree.

The basis algorithm is Buchberger with the Gebauer-Moeller pair update,
normal (lowest lcm degree) selection and sugar tiebreak.  All results
are deterministic for a fixed ring, order and generator list.  Resource
caps are enforced with a distinguished error so a capped run can never
be mistaken for an answer.
"""

from __future__ import annotations

import heapq
import sys
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InputError, ResourceExhausted
from .rings import (CoefficientField, MonomialOrder, Polynomial, RingContext,
                    parse_polynomial)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 40000))


@dataclass
class EngineLimits:
    """Hard caps for a basis computation; hitting one raises, never lies."""

    max_pairs: int = 2_000_000
    max_degree: int = 400
    max_seconds: float | None = None


_DEFAULT_LIMITS = EngineLimits()


def set_default_limits(limits: EngineLimits) -> None:
    global _DEFAULT_LIMITS
    _DEFAULT_LIMITS = limits


def default_limits() -> EngineLimits:
    return _DEFAULT_LIMITS


@dataclass(eq=False)
class IdealPresentation:
    """An ideal given by generators, with a write-once basis cache."""

    ring: RingContext
    generators: tuple

    def __post_init__(self) -> None:
        seen = set()
        gens = []
        for g in self.generators:
            if g.ring != self.ring:
                raise InputError("generator outside the ideal's ring")
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        gens.sort(key=Polynomial.sort_key)
        object.__setattr__(self, "generators", tuple(gens))
        self._gb_cache: dict = {}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IdealPresentation):
            return NotImplemented
        return self.ring == other.ring and self.generators == other.generators

    def __hash__(self) -> int:
        return hash((self.ring, self.generators))

    def is_zero(self) -> bool:
        return not self.generators

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def groebner_basis(self, order: MonomialOrder | None = None,
                       limits: EngineLimits | None = None) -> tuple:
        """Reduced basis for `order` (the ring's own order by default)."""
        order = order or self.ring.order
        cached = self._gb_cache.get(order)
        if cached is None:
            if order == self.ring.order:
                ring, gens = self.ring, self.generators
            else:
                ring = self.ring.with_order(order)
                gens = tuple(Polynomial.from_dict(ring, dict(g.terms))
                             for g in self.generators)
            cached = tuple(buchberger(list(gens), ring=ring, limits=limits))
            self._gb_cache.setdefault(order, cached)
        return cached

    def cache_basis(self, order: MonomialOrder, basis: Sequence[Polynomial]) -> None:
        self._gb_cache.setdefault(order, tuple(basis))

    def contains(self, p: Polynomial, limits: EngineLimits | None = None) -> bool:
        gb = self.groebner_basis(limits=limits)
        q = p if p.ring == (gb[0].ring if gb else p.ring) else Polynomial(
            self.ring.with_order(self.ring.order), p.terms)
        return normal_form(q, gb).is_zero()

    def is_unit(self, limits: EngineLimits | None = None) -> bool:
        gb = self.groebner_basis(limits=limits)
        return len(gb) == 1 and not any(gb[0].leading_exponent())

    def __str__(self) -> str:
        return "ideal(" + ", ".join(str(g) for g in self.generators) + ")"


def ideal(ring: RingContext, gens: Iterable) -> IdealPresentation:
    """Build an IdealPresentation from polynomials or strings."""
    polys = []
    for g in gens:
        if isinstance(g, str):
            g = parse_polynomial(g, ring)
        elif isinstance(g, Polynomial):
            if g.ring != ring:
                raise InputError("generator outside the target ring")
        else:
            raise InputError(f"cannot interpret {g!r} as a polynomial")
        polys.append(g)
    return IdealPresentation(ring, tuple(polys))


def ideal_equal(a: IdealPresentation, b: IdealPresentation,
                limits: EngineLimits | None = None) -> bool:
    """Exact ideal equality via reduced bases in a common order."""
    if a.ring.variables != b.ring.variables or \
            a.ring.coefficient_field != b.ring.coefficient_field:
        raise InputError("ideals live in different rings")
    order = a.ring.order
    ga = a.groebner_basis(order, limits=limits)
    gb = b.groebner_basis(order, limits=limits)
    return [p.terms for p in ga] == [p.terms for p in gb]


# ---------------------------------------------------------------------------
# division


def _triples(p: Polynomial) -> list:
    return [(k, e, c) for k, (e, c) in zip(p.keys(), p.terms)]


def _from_triples(ring: RingContext, triples: Sequence) -> Polynomial:
    return Polynomial(ring, tuple((e, c) for _, e, c in triples),
                      _keys=tuple(k for k, _, _ in triples))


def _mask(exp) -> int:
    m = 0
    for i, x in enumerate(exp):
        if x:
            m |= 1 << i
    return m


class _Reducer:
    __slots__ = ("mask", "lexp", "lkey", "ldeg", "ilc", "tail", "sugar", "index")

    def __init__(self, p: Polynomial, fld: CoefficientField, sugar: int, index: int):
        k = p.keys()
        e0, c0 = p.terms[0]
        self.mask = _mask(e0)
        self.lexp = e0
        self.lkey = k[0]
        self.ldeg = sum(e0)
        self.ilc = fld.inv(c0)
        self.tail = [(k[i], p.terms[i][0], p.terms[i][1])
                     for i in range(1, len(p.terms))]
        self.sugar = sugar
        self.index = index


def _shift_scale(tail: Sequence, mono, kshift, factor, p: int) -> list:
    out = []
    if p:
        for k, e, c in tail:
            out.append((tuple(a + b for a, b in zip(k, kshift)),
                        tuple(a + b for a, b in zip(e, mono)),
                        c * factor % p))
    else:
        for k, e, c in tail:
            out.append((tuple(a + b for a, b in zip(k, kshift)),
                        tuple(a + b for a, b in zip(e, mono)),
                        c * factor))
    return out


def _merge_sub(a: Sequence, b: Sequence, p: int) -> list:
    """a - b for descending triple lists (b already scaled)."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        ka, kb = a[i][0], b[j][0]
        if ka == kb:
            c = (a[i][2] - b[j][2]) % p if p else a[i][2] - b[j][2]
            if c:
                out.append((ka, a[i][1], c))
            i += 1
            j += 1
        elif ka > kb:
            out.append(a[i])
            i += 1
        else:
            c = (-b[j][2]) % p if p else -b[j][2]
            out.append((kb, b[j][1], c))
            j += 1
    if i < na:
        out.extend(a[i:])
    while j < nb:
        kb, eb, cb = b[j]
        c = (-cb) % p if p else -cb
        out.append((kb, eb, c))
        j += 1
    return out


def _reduce_triples(work: list, reducers: Sequence[_Reducer],
                    fld: CoefficientField, sugar: int,
                    full: bool = True) -> tuple:
    """Full (or head-only) reduction; returns (triples, sugar)."""
    p = fld.characteristic
    out: list = []
    idx = 0
    while idx < len(work):
        key0, exp0, c0 = work[idx]
        deg0 = sum(exp0)
        emask = _mask(exp0)
        red = None
        for r in reducers:
            if r.ldeg <= deg0 and not (r.mask & ~emask):
                le = r.lexp
                divisible = True
                for a, b in zip(exp0, le):
                    if a < b:
                        divisible = False
                        break
                if divisible:
                    red = r
                    break
        if red is None:
            out.append(work[idx])
            idx += 1
            if not full and len(out) == 1:
                out.extend(work[idx:])
                return out, sugar
            continue
        factor = c0 * red.ilc % p if p else c0 * red.ilc
        mono = tuple(a - b for a, b in zip(exp0, red.lexp))
        kshift = tuple(a - b for a, b in zip(key0, red.lkey))
        shifted = _shift_scale(red.tail, mono, kshift, factor, p)
        work = _merge_sub(work[idx + 1:], shifted, p)
        idx = 0
        step_sugar = red.sugar + deg0 - red.ldeg
        if step_sugar > sugar:
            sugar = step_sugar
    return out, sugar


def normal_form(p: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Remainder of p under full division by `basis` (deterministic)."""
    reducers = [g for g in basis if not g.is_zero()]
    if p.is_zero() or not reducers:
        return p
    fld = p.ring.coefficient_field
    prepared = [_Reducer(g, fld, g.total_degree(), i)
                for i, g in enumerate(reducers)]
    out, _ = _reduce_triples(_triples(p), prepared, fld, p.total_degree())
    return _from_triples(p.ring, out)


def exact_divide(num: Polynomial, den: Polynomial) -> Polynomial:
    """Quotient num/den when den divides num exactly; InputError otherwise."""
    if den.is_zero():
        raise InputError("division by the zero polynomial")
    ring = num.ring
    if num.is_zero():
        return num
    fld = ring.coefficient_field
    p = fld.characteristic
    le, lc = den.terms[0]
    lk = den.keys()[0]
    ilc = fld.inv(lc)
    tail = [(k, e, c) for k, (e, c) in zip(den.keys()[1:], den.terms[1:])]
    work = _triples(num)
    qterms = []
    while work:
        key0, exp0, c0 = work[0]
        mono = tuple(a - b for a, b in zip(exp0, le))
        if any(x < 0 for x in mono):
            raise InputError("inexact polynomial division")
        factor = c0 * ilc % p if p else c0 * ilc
        kshift = tuple(a - b for a, b in zip(key0, lk))
        qterms.append((mono, factor))
        shifted = _shift_scale(tail, mono, kshift, factor, p)
        work = _merge_sub(work[1:], shifted, p)
    return Polynomial.from_dict(ring, dict(qterms))


def spoly(f: Polynomial, g: Polynomial) -> Polynomial:
    """S-polynomial with monic normalization of both inputs."""
    if f.is_zero() or g.is_zero():
        raise InputError("s-polynomial of zero")
    ring = f.ring
    fld = ring.coefficient_field
    ef, eg = f.leading_exponent(), g.leading_exponent()
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = tuple(a - b for a, b in zip(lcm, ef))
    mg = tuple(a - b for a, b in zip(lcm, eg))
    lhs = f.term_multiple(mf, fld.inv(f.leading_coefficient()))
    rhs = g.term_multiple(mg, fld.inv(g.leading_coefficient()))
    return lhs - rhs


# ---------------------------------------------------------------------------
# Buchberger with Gebauer-Moeller pruning


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def buchberger(gens: Sequence[Polynomial], *, ring: RingContext | None = None,
               limits: EngineLimits | None = None,
               full_reduce: bool = True) -> list:
    """Reduced, monic Groebner basis, sorted ascending by leading term."""
    limits = limits or _DEFAULT_LIMITS
    polys = [g for g in gens if isinstance(g, Polynomial)]
    if len(polys) != len(gens):
        raise InputError("buchberger expects polynomials")
    if ring is None:
        if not polys:
            raise InputError("cannot infer the ring of an empty system")
        ring = polys[0].ring
    for g in polys:
        if g.ring != ring:
            raise InputError("mixed rings in one basis computation")
    fld = ring.coefficient_field
    start = time.monotonic()

    seeds = sorted({g for g in polys if not g.is_zero()}, key=Polynomial.sort_key)
    if not seeds:
        return []

    store: list[Polynomial] = []      # all basis elements ever admitted
    reducers: list[_Reducer] = []     # parallel to store
    alive: list[bool] = []
    pairs: list = []                  # heap of (deg, sugar, lcm_key, i, j)
    pair_lcm: dict = {}
    processed = 0

    def admit(h: Polynomial, sugar: int) -> None:
        """Gebauer-Moeller update of the pair set with new element h."""
        t = len(store)
        store.append(h)
        reducers.append(_Reducer(h, fld, sugar, t))
        le_h = h.leading_exponent()
        # candidate new pairs against live elements
        cand = []
        for i, g in enumerate(store[:-1]):
            if not alive[i]:
                continue
            le_g = g.leading_exponent()
            lcm = tuple(max(a, b) for a, b in zip(le_h, le_g))
            cand.append((lcm, i))
        # drop candidates whose lcm is a proper multiple of another's
        kept = []
        for lcm, i in cand:
            redundant = False
            for lcm2, j in cand:
                if i == j:
                    continue
                if lcm2 != lcm and _divides(lcm2, lcm):
                    redundant = True
                    break
            if redundant:
                continue
            kept.append((lcm, i))
        # among equal lcms keep the first index only
        seen_lcms = set()
        final = []
        for lcm, i in kept:
            if lcm in seen_lcms:
                continue
            seen_lcms.add(lcm)
            final.append((lcm, i))
        # coprime criterion
        for lcm, i in final:
            le_g = store[i].leading_exponent()
            if all(a == 0 or b == 0 for a, b in zip(le_h, le_g)):
                continue
            _push_pair(i, t, lcm)
        # prune old pairs via the new head
        stale = []
        for key, lcm in pair_lcm.items():
            i, j = key
            if not _divides(le_h, lcm):
                continue
            lcm_ih = tuple(max(a, b) for a, b in
                           zip(store[i].leading_exponent(), le_h))
            lcm_jh = tuple(max(a, b) for a, b in
                           zip(store[j].leading_exponent(), le_h))
            if lcm_ih != lcm and lcm_jh != lcm:
                stale.append(key)
        for key in stale:
            del pair_lcm[key]
        # basis minimality for future pair formation
        for i in range(t):
            if alive[i] and _divides(le_h, store[i].leading_exponent()):
                alive[i] = False
        alive.append(True)

    def _push_pair(i: int, j: int, lcm) -> None:
        deg = sum(lcm)
        si = reducers[i].sugar + deg - reducers[i].ldeg
        sj = reducers[j].sugar + deg - reducers[j].ldeg
        sugar = max(si, sj)
        key = ring.key(lcm)
        heapq.heappush(pairs, (deg, sugar, key, i, j))
        pair_lcm[(i, j)] = lcm

    for s in seeds:
        live = [reducers[i] for i in range(len(store)) if alive[i]]
        out, sugar = _reduce_triples(_triples(s), live, fld,
                                     s.total_degree(), full=full_reduce)
        if out:
            h = _from_triples(ring, out).monic()
            if not any(h.leading_exponent()):
                return [ring.one()]
            admit(h, sugar)

    while pairs:
        processed += 1
        if processed > limits.max_pairs:
            raise ResourceExhausted("pair limit", limits.max_pairs)
        if limits.max_seconds is not None and \
                time.monotonic() - start > limits.max_seconds:
            raise ResourceExhausted("wall clock", limits.max_seconds)
        deg, sugar, _, i, j = heapq.heappop(pairs)
        if pair_lcm.pop((i, j), None) is None:
            continue  # eliminated by a later criterion
        if deg > limits.max_degree:
            raise ResourceExhausted("degree limit", limits.max_degree)
        s = spoly(store[i], store[j])
        if s.is_zero():
            continue
        live = [reducers[k] for k in range(len(store)) if alive[k]]
        out, sugar = _reduce_triples(_triples(s), live, fld, sugar,
                                     full=full_reduce)
        if not out:
            continue
        h = _from_triples(ring, out).monic()
        if not any(h.leading_exponent()):
            return [ring.one()]
        admit(h, sugar)

    return _interreduce([store[i] for i in range(len(store)) if alive[i]], ring)


def _interreduce(basis: list, ring: RingContext) -> list:
    """Minimal heads, fully reduced tails, monic, ascending head order."""
    fld = ring.coefficient_field
    basis = sorted((g for g in basis if not g.is_zero()), key=Polynomial.sort_key)
    minimal: list[Polynomial] = []
    for g in basis:
        le = g.leading_exponent()
        if any(_divides(h.leading_exponent(), le) for h in minimal):
            continue
        minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        if others:
            prepared = [_Reducer(h, fld, h.total_degree(), k)
                        for k, h in enumerate(others)]
            out, _ = _reduce_triples(_triples(g), prepared, fld,
                                     g.total_degree())
            g = _from_triples(ring, out)
        if not g.is_zero():
            reduced.append(g.monic())
    reduced.sort(key=Polynomial.sort_key)
    return reduced


# ---------------------------------------------------------------------------
# elimination and ideal arithmetic


def _map_to_ring(p: Polynomial, target: RingContext, position: Sequence[int]) -> Polynomial:
    return p.map_exponents(target, position)


def eliminate(I: IdealPresentation, drop: Sequence[str],
              limits: EngineLimits | None = None) -> IdealPresentation:
    """Generators of I intersected with the subring without `drop`.

    Variables to drop are moved into a leading elimination block of a
    product order; basis elements free of them generate the
    intersection and are returned in the smaller ring.
    """
    ring = I.ring
    drop = list(dict.fromkeys(drop))
    drop_idx = [ring.index(v) for v in drop]
    keep = [v for v in ring.variables if v not in set(drop)]
    if not drop:
        return I
    work_vars = tuple(drop) + tuple(keep)
    work_ring = RingContext(work_vars, ring.coefficient_field,
                            MonomialOrder.elimination(len(drop)))
    position = [0] * ring.nvars
    for new_i, name in enumerate(work_vars):
        position[ring.index(name)] = new_i
    mapped = [_map_to_ring(g, work_ring, position) for g in I.generators]
    J = IdealPresentation(work_ring, tuple(mapped))
    gb = J.groebner_basis(limits=limits)
    nd = len(drop)
    survivors = [g for g in gb if all(
        not any(e[:nd]) for e, _ in g.terms)]
    target = RingContext(tuple(keep), ring.coefficient_field,
                         MonomialOrder.grevlex())
    tpos_by_work = {name: i for i, name in enumerate(target.variables)}
    posmap = [tpos_by_work.get(name, 0) for name in work_vars]
    out = [ _map_to_ring(g, target, posmap) for g in survivors ]
    result = IdealPresentation(target, tuple(out))
    # the survivors are already a reduced basis for the restricted order
    result.cache_basis(target.order, sorted(out, key=Polynomial.sort_key))
    return result


def extend_to_ring(I: IdealPresentation, target: RingContext) -> IdealPresentation:
    """Re-express generators in a larger ring containing the same names."""
    position = [target.index(v) for v in I.ring.variables]
    gens = tuple(_map_to_ring(g, target, position) for g in I.generators)
    return IdealPresentation(target, gens)


def _fresh_name(base: str, taken: Sequence[str]) -> str:
    name = base
    k = 0
    while name in taken:
        k += 1
        name = f"{base}{k}"
    return name


def intersect(I: IdealPresentation, J: IdealPresentation,
              limits: EngineLimits | None = None) -> IdealPresentation:
    """I cap J via one fresh scaling variable and elimination."""
    ring = I.ring
    if J.ring != ring:
        raise InputError("intersection needs a common ring")
    if I.is_zero():
        return I
    if J.is_zero():
        return J
    t = _fresh_name("t_", ring.variables)
    big = RingContext((t,) + ring.variables, ring.coefficient_field,
                      MonomialOrder.elimination(1))
    position = [i + 1 for i in range(ring.nvars)]
    tv = big.variable(t)
    one = big.one()
    gens = [tv * _map_to_ring(g, big, position) for g in I.generators]
    gens += [(one - tv) * _map_to_ring(g, big, position) for g in J.generators]
    K = IdealPresentation(big, tuple(gens))
    gb = K.groebner_basis(limits=limits)
    survivors = [g for g in gb if not any(e[0] for e, _ in g.terms)]
    # big variable i >= 1 is ring variable i - 1; t never survives
    out = tuple(_map_to_ring(g, ring, [0] + list(range(ring.nvars)))
                for g in survivors)
    return IdealPresentation(ring, out)


def ideal_quotient(I: IdealPresentation, J: IdealPresentation,
                   limits: EngineLimits | None = None) -> IdealPresentation:
    """(I : J), intersecting the one-generator quotients."""
    if J.is_zero():
        raise InputError("quotient by the zero ideal")
    ring = I.ring
    result: IdealPresentation | None = None
    for g in sorted(J.generators, key=_cheapness):
        Qg = _quotient_by_element(I, g, limits)
        result = Qg if result is None else intersect(result, Qg, limits)
    assert result is not None
    return result


def _cheapness(p: Polynomial) -> tuple:
    return (p.total_degree(), len(p.terms), p.sort_key())


def _quotient_by_element(I: IdealPresentation, g: Polynomial,
                         limits: EngineLimits | None) -> IdealPresentation:
    """(I : g) = (I cap <g>)/g."""
    ring = I.ring
    meet = intersect(I, IdealPresentation(ring, (g,)), limits)
    gens = tuple(exact_divide(f, g) for f in meet.generators)
    return IdealPresentation(ring, gens)


def saturate_element(I: IdealPresentation, f: Polynomial,
                     limits: EngineLimits | None = None) -> IdealPresentation:
    """(I : f^infinity).

    Inhomogeneous route: adjoin t, eliminate it from I + <t*f - 1>.
    When both I and f are homogeneous a weighted trick (adjoin a last
    variable z of weight deg f together with z - f, divide the basis by
    z powers, substitute back) yields the same ideal without leaving
    the graded world; both routes are exposed to the tests.
    """
    ring = I.ring
    if f.is_zero():
        raise InputError("saturation by zero")
    if not any(e for e, _ in f.terms if any(e)):
        return I  # nonzero constant: nothing to remove
    if I.is_zero():
        return I
    if f.is_homogeneous() and I.is_homogeneous() and f.total_degree() >= 1:
        return _saturate_homogeneous(I, f, limits)
    return _saturate_rabinowitsch(I, f, limits)


def _saturate_rabinowitsch(I: IdealPresentation, f: Polynomial,
                           limits: EngineLimits | None) -> IdealPresentation:
    ring = I.ring
    t = _fresh_name("t_", ring.variables)
    big = RingContext((t,) + ring.variables, ring.coefficient_field,
                      MonomialOrder.elimination(1))
    position = list(range(1, ring.nvars + 1))
    gens = [_map_to_ring(g, big, position) for g in I.generators]
    gens.append(big.variable(t) * _map_to_ring(f, big, position) - big.one())
    K = IdealPresentation(big, tuple(gens))
    gb = K.groebner_basis(limits=limits)
    survivors = [g for g in gb if not any(e[0] for e, _ in g.terms)]
    out = tuple(_map_to_ring(g, ring, [0] + list(range(ring.nvars)))
                for g in survivors)
    return IdealPresentation(ring, out)


def _saturate_homogeneous(I: IdealPresentation, f: Polynomial,
                          limits: EngineLimits | None) -> IdealPresentation:
    ring = I.ring
    z = _fresh_name("z_", ring.variables)
    w = f.total_degree()
    big = RingContext(ring.variables + (z,), ring.coefficient_field,
                      MonomialOrder.weighted((1,) * ring.nvars + (w,)))
    position = list(range(ring.nvars))
    gens = [_map_to_ring(g, big, position) for g in I.generators]
    fz = _map_to_ring(f, big, position)
    gens.append(big.variable(z) - fz)
    K = IdealPresentation(big, tuple(gens))
    gb = K.groebner_basis(limits=limits)
    zi = big.nvars - 1
    out = []
    for g in gb:
        strip = min(e[zi] for e, _ in g.terms)
        if strip:
            terms = tuple((e[:zi] + (e[zi] - strip,), c) for e, c in g.terms)
            g = Polynomial(big, terms)
        g = g.substitute({z: fz}, big)
        if any(e[zi] for e, _ in g.terms):  # pragma: no cover - sanity
            raise InputError("saturation substitution left the helper variable")
        out.append(_map_to_ring(g, ring, position + [0]))
    # position for z is irrelevant: no term uses it after substitution
    result = IdealPresentation(ring, tuple(out))
    return result


def saturate_ideal(I: IdealPresentation, J: IdealPresentation,
                   limits: EngineLimits | None = None) -> IdealPresentation:
    """(I : J^infinity) as the intersection of one-element saturations.

    Exact short-circuits only: generators already inside I contribute
    the unit ideal; equal or containing saturations are dropped; any
    single saturation equal to I forces the result I.
    """
    if J.is_zero():
        raise InputError("saturation by the zero ideal")
    ring = I.ring
    if J.ring != ring:
        raise InputError("saturation needs a common ring")
    if I.is_zero():
        return I
    gb_I = I.groebner_basis(limits=limits)
    sats: list[IdealPresentation] = []
    nontrivial_seen = False
    for g in sorted(J.generators, key=_cheapness):
        if normal_form(g, gb_I).is_zero():
            continue  # (I : g^inf) is the unit ideal; absorbed by the meet
        S = saturate_element(I, g, limits)
        nontrivial_seen = True
        if _same_ideal(S, I, limits):
            return I
        if any(_same_ideal(S, T, limits) for T in sats):
            continue
        sats.append(S)
    if not nontrivial_seen:
        return IdealPresentation(ring, (ring.one(),))
    # drop saturations containing another one (meet-redundant)
    keep: list[IdealPresentation] = []
    for S in sats:
        if any(_contains_ideal(S, T, limits) and not _same_ideal(S, T, limits)
               for T in sats if T is not S):
            continue
        keep.append(S)
    result = keep[0]
    for S in keep[1:]:
        result = intersect(result, S, limits)
    return result


def _same_ideal(A: IdealPresentation, B: IdealPresentation,
                limits: EngineLimits | None) -> bool:
    return A.groebner_basis(limits=limits) == B.groebner_basis(limits=limits)


def _contains_ideal(A: IdealPresentation, B: IdealPresentation,
                    limits: EngineLimits | None) -> bool:
    """True when A contains B."""
    gb = A.groebner_basis(limits=limits)
    return all(normal_form(g, gb).is_zero() for g in B.generators)


# ---------------------------------------------------------------------------
# Hilbert series: dimension and degree


@dataclass(frozen=True)
class HilbertData:
    """Numerator of the Hilbert series of the leading-term quotient,
    with the Krull dimension and degree extracted from it."""

    numerator: tuple
    krull_dimension: int
    degree: int
    homogenized: bool = False

    @property
    def projective_dimension(self) -> int:
        return self.krull_dimension - 1


def _poly_mul_int(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _minimalize(gens: list) -> list:
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    kept: list = []
    masks: list = []
    for e in gens:
        m = _mask(e)
        if any((km & ~m) == 0 and _divides(k, e) for k, km in zip(kept, masks)):
            continue
        kept.append(e)
        masks.append(m)
    return kept


def _numerator(gens: tuple, memo: dict) -> list:
    """Hilbert numerator of a minimal monomial generating set."""
    if not gens:
        return [1]
    if any(not any(e) for e in gens):
        return [0]
    if len(gens) == 1:
        d = sum(gens[0])
        out = [0] * (d + 1)
        out[0] = 1
        out[d] = -1
        return out
    cached = memo.get(gens)
    if cached is not None:
        return cached
    masks = [_mask(e) for e in gens]
    coprime = True
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if masks[i] & masks[j]:
                coprime = False
                break
        if not coprime:
            break
    if coprime:
        out = [1]
        for e in gens:
            d = sum(e)
            factor = [0] * (d + 1)
            factor[0] = 1
            factor[d] = -1
            out = _poly_mul_int(out, factor)
        memo[gens] = out
        return out
    nvars = len(gens[0])
    counts = [0] * nvars
    for e in gens:
        for i, x in enumerate(e):
            if x:
                counts[i] += 1
    v = max(range(nvars), key=lambda i: counts[i])
    # colon by x_v
    colon = []
    for e in gens:
        if e[v]:
            colon.append(e[:v] + (e[v] - 1,) + e[v + 1:])
        else:
            colon.append(e)
    colon = tuple(_minimalize(colon))
    # sum with x_v
    xv = tuple(1 if i == v else 0 for i in range(nvars))
    plus = tuple(_minimalize([e for e in gens if not e[v]] + [xv]))
    n_plus = _numerator(plus, memo)
    n_colon = _numerator(colon, memo)
    out = [0] * max(len(n_plus), len(n_colon) + 1)
    for i, x in enumerate(n_plus):
        out[i] += x
    for i, x in enumerate(n_colon):
        out[i + 1] += x
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    memo[gens] = out
    return out


def leading_exponents(gb: Sequence[Polynomial]) -> list:
    return [g.leading_exponent() for g in gb if not g.is_zero()]


def hilbert_numerator(leads: Sequence, nvars: int) -> list:
    del nvars  # arity is implicit in the exponent tuples
    gens = tuple(_minimalize(list(leads)))
    return _numerator(gens, {})


def _strip_unit_root(numerator: Sequence[int]) -> tuple:
    """Divide by (1-t) as often as exact; returns (quotient, multiplicity)."""
    coeffs = list(numerator)
    mult = 0
    while len(coeffs) >= 1 and sum(coeffs) == 0 and any(coeffs):
        prefix = []
        total = 0
        for c in coeffs[:-1]:
            total += c
            prefix.append(total)
        coeffs = prefix if prefix else [0]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        mult += 1
    return coeffs, mult


def hilbert_dim_degree(I: IdealPresentation, *, homogenize: bool = False,
                       limits: EngineLimits | None = None) -> HilbertData:
    """Krull dimension and degree from the leading-term Hilbert series.

    Homogeneous input is required unless `homogenize` is set; then the
    degree-compatible leading terms encode the projective closure and
    the result is flagged.
    """
    ring = I.ring
    homogeneous = I.is_homogeneous()
    if not homogeneous and not homogenize:
        raise InputError("ideal is not homogeneous; pass homogenize=True "
                         "for affine semantics")
    if homogeneous:
        order = ring.order  # graded case: any global order gives the series
    elif ring.order.is_degree_compatible():
        order = ring.order
    else:
        order = MonomialOrder.grevlex()
    gb = I.groebner_basis(order, limits=limits)
    if len(gb) == 1 and not any(gb[0].leading_exponent()):
        return HilbertData((0,), -1, 0, homogenized=not homogeneous)
    numer = hilbert_numerator(leading_exponents(gb), ring.nvars)
    quotient, mult = _strip_unit_root(numer)
    degree = sum(quotient)
    assert degree > 0 or not any(numer)
    return HilbertData(tuple(numer), ring.nvars - mult, degree,
                       homogenized=not homogeneous)


def quotient_vector_dimension(I: IdealPresentation,
                              limits: EngineLimits | None = None) -> int | None:
    """dim_k R/I for zero-dimensional I; None when not zero-dimensional."""
    ring = I.ring
    order = ring.order if ring.order.is_degree_compatible() \
        else MonomialOrder.grevlex()
    gb = I.groebner_basis(order, limits=limits)
    if len(gb) == 1 and not any(gb[0].leading_exponent()):
        return 0
    leads = leading_exponents(gb)
    # finiteness: every variable needs a pure power among the heads
    for i in range(ring.nvars):
        if not any(e[i] and _mask(e) == (1 << i) for e in leads):
            return None
    numer = hilbert_numerator(leads, ring.nvars)
    quotient, mult = _strip_unit_root(numer)
    if mult != ring.nvars:
        return None
    return sum(quotient)
