"""Exact sparse multivariate polynomials over QQ and prime fields.

Everything here is immutable and pure: coefficient fields, monomial
orders, ring contexts, polynomials, the expression parser and the
canonical renderer.  Coefficients are `fractions.Fraction` over QQ and
plain ints in ``[0, p)`` over a prime field.  Exponent vectors are
tuples of small non-negative ints; per-variable degrees are capped at
``2**15`` and checked, so exponent arithmetic can never overflow
silently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

from .errors import InputError

MAX_EXPONENT = 1 << 15

Coeff = Union[Fraction, int]
Exponent = tuple  # tuple[int, ...]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond any sane modulus."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class CoefficientField:
    """QQ or F_p with exact arithmetic helpers.

    ``characteristic == 0`` means QQ; otherwise a prime modulus.  All
    coefficient values flowing through a ring must be normalized via
    :meth:`coerce` (QQ: Fraction in lowest terms, positive denominator;
    F_p: int in [0, p)).
    """

    characteristic: int

    def __post_init__(self) -> None:
        if self.characteristic:
            if not _is_prime(self.characteristic):
                raise InputError(f"modulus {self.characteristic} is not prime")

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "CoefficientField":
        return cls(p)

    @property
    def zero(self) -> Coeff:
        return 0 if self.characteristic else Fraction(0)

    @property
    def one(self) -> Coeff:
        return 1 if self.characteristic else Fraction(1)

    def coerce(self, value: object) -> Coeff:
        """Normalize an int/Fraction (or coeff) into this field."""
        p = self.characteristic
        if p:
            if isinstance(value, int):
                return value % p
            if isinstance(value, Fraction):
                den = value.denominator % p
                if den == 0:
                    raise InputError(
                        f"denominator of {value} vanishes mod {p}")
                return value.numerator * pow(den, -1, p) % p
            raise InputError(f"cannot coerce {value!r} into F_{p}")
        if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
            raise InputError(f"cannot coerce {value!r} into QQ")
        return Fraction(value)

    def add(self, a: Coeff, b: Coeff) -> Coeff:
        p = self.characteristic
        return (a + b) % p if p else a + b

    def sub(self, a: Coeff, b: Coeff) -> Coeff:
        p = self.characteristic
        return (a - b) % p if p else a - b

    def mul(self, a: Coeff, b: Coeff) -> Coeff:
        p = self.characteristic
        return (a * b) % p if p else a * b

    def neg(self, a: Coeff) -> Coeff:
        p = self.characteristic
        return (-a) % p if p else -a

    def inv(self, a: Coeff) -> Coeff:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return pow(a, -1, p) if p else Fraction(1) / a

    def div(self, a: Coeff, b: Coeff) -> Coeff:
        return self.mul(a, self.inv(b))

    def render(self, a: Coeff) -> str:
        return str(a)

    def __str__(self) -> str:
        p = self.characteristic
        return f"F_{p}" if p else "QQ"


QQ = CoefficientField.rationals()


@dataclass(frozen=True)
class MonomialOrder:
    """A global monomial order given by an additive integer key.

    Every supported order maps an exponent vector to an integer tuple
    that is componentwise additive (key(a+b) = key(a)+key(b)) and is
    compared lexicographically, largest first.
    """

    kind: str  # "lex" | "grevlex" | "block" | "weighted"
    boundary: int | None = None
    weights: tuple[int, ...] | None = None

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls("grevlex")

    @classmethod
    def elimination(cls, boundary: int) -> "MonomialOrder":
        """Graded-revlex on the first `boundary` variables, then on the rest.

        A product order, so it eliminates the leading block.
        """
        if boundary < 0:
            raise InputError("elimination boundary must be >= 0")
        return cls("block", boundary=boundary)

    @classmethod
    def weighted(cls, weights: Sequence[int]) -> "MonomialOrder":
        w = tuple(int(x) for x in weights)
        if any(x <= 0 for x in w):
            raise InputError("weights must be positive")
        return cls("weighted", weights=w)

    def key_function(self, nvars: int) -> Callable[[Exponent], tuple]:
        """Return exp -> sortable additive key for a ring with nvars."""
        if self.kind == "lex":
            return lambda e: e
        if self.kind == "grevlex":
            def grevlex_key(e: Exponent) -> tuple:
                return (sum(e), *(-x for x in reversed(e)))
            return grevlex_key
        if self.kind == "block":
            b = self.boundary
            if b is None or b > nvars:
                raise InputError("elimination boundary exceeds variable count")
            def block_key(e: Exponent) -> tuple:
                head, tail = e[:b], e[b:]
                return (sum(head), *(-x for x in reversed(head)),
                        sum(tail), *(-x for x in reversed(tail)))
            return block_key
        if self.kind == "weighted":
            w = self.weights
            if w is None or len(w) != nvars:
                raise InputError("weight vector length must match variable count")
            def weighted_key(e: Exponent) -> tuple:
                return (sum(a * b for a, b in zip(w, e)),
                        *(-x for x in reversed(e)))
            return weighted_key
        raise InputError(f"unknown order kind {self.kind!r}")

    def is_degree_compatible(self) -> bool:
        """True when total degree is the first comparison criterion."""
        if self.kind == "grevlex":
            return True
        if self.kind == "weighted":
            return self.weights is not None and all(w == 1 for w in self.weights)
        return False


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class RingContext:
    """An ordered polynomial ring: named variables, field, monomial order.

    `block_boundary`, when set, marks the split of the variables into
    two designated homogeneous blocks (primal block first); slicing and
    elimination helpers read it.
    """

    variables: tuple[str, ...]
    coefficient_field: CoefficientField = QQ
    order: MonomialOrder = MonomialOrder.grevlex()
    block_boundary: int | None = None

    def __post_init__(self) -> None:
        seen = set()
        for v in self.variables:
            if not _NAME_RE.match(v):
                raise InputError(f"bad variable name {v!r}")
            if v in seen:
                raise InputError(f"duplicate variable {v!r}")
            seen.add(v)
        if self.block_boundary is not None and not (
                0 <= self.block_boundary <= len(self.variables)):
            raise InputError("block boundary out of range")
        # frozen dataclass: route around __setattr__ for the cached key fn
        object.__setattr__(self, "_key", self.order.key_function(len(self.variables)))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def key(self, exponent: Exponent) -> tuple:
        return self._key(exponent)  # type: ignore[attr-defined]

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None

    def with_order(self, order: MonomialOrder) -> "RingContext":
        return RingContext(self.variables, self.coefficient_field, order,
                           self.block_boundary)

    def with_field(self, fld: CoefficientField) -> "RingContext":
        return RingContext(self.variables, fld, self.order, self.block_boundary)

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def constant(self, value: object) -> "Polynomial":
        c = self.coefficient_field.coerce(value)
        if not c:
            return self.zero()
        return Polynomial(self, (((0,) * self.nvars, c),))

    def one(self) -> "Polynomial":
        return self.constant(1)

    def variable(self, name: str) -> "Polynomial":
        i = self.index(name)
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, ((exp, self.coefficient_field.one),))

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.variable(v) for v in self.variables)

    def __str__(self) -> str:
        return f"{self.coefficient_field}[{', '.join(self.variables)}]"


def _check_exponent(exp: Exponent) -> None:
    for e in exp:
        if e < 0 or e > MAX_EXPONENT:
            raise InputError(f"exponent {e} outside [0, {MAX_EXPONENT}]")


class Polynomial:
    """Immutable sparse polynomial, terms sorted descending in the ring order.

    `terms` is a tuple of (exponent tuple, coefficient) pairs with no
    zero coefficients; the zero polynomial has no terms.
    """

    __slots__ = ("ring", "terms", "_keys", "_hash")

    def __init__(self, ring: RingContext, terms: tuple, *, _keys: tuple | None = None):
        self.ring = ring
        self.terms = terms
        self._keys = _keys
        self._hash = None

    # -- construction ---------------------------------------------------

    @classmethod
    def from_dict(cls, ring: RingContext, data: Mapping[Exponent, object]) -> "Polynomial":
        """Build from {exponent: coefficient}, normalizing and sorting."""
        fld = ring.coefficient_field
        pairs = []
        for exp, raw in data.items():
            exp = tuple(exp)
            if len(exp) != ring.nvars:
                raise InputError("exponent arity does not match ring")
            _check_exponent(exp)
            c = fld.coerce(raw) if not _is_field_coeff(fld, raw) else raw
            if c:
                pairs.append((exp, c))
        pairs.sort(key=lambda t: ring.key(t[0]), reverse=True)
        return cls(ring, tuple(pairs))

    # -- basic queries ---------------------------------------------------

    def keys(self) -> tuple:
        """Order keys of the terms, cached, descending."""
        if self._keys is None:
            k = self.ring.key
            self._keys = tuple(k(e) for e, _ in self.terms)
        return self._keys

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def leading_term(self) -> tuple:
        """(exponent, coefficient) of the largest term."""
        if not self.terms:
            raise InputError("zero polynomial has no leading term")
        return self.terms[0]

    def leading_exponent(self) -> Exponent:
        return self.leading_term()[0]

    def leading_coefficient(self) -> Coeff:
        return self.leading_term()[1]

    def constant_value(self) -> Coeff:
        """Value of a degree-0 polynomial."""
        if not self.terms:
            return self.ring.coefficient_field.zero
        if len(self.terms) > 1 or any(self.terms[0][0]):
            raise InputError("polynomial is not constant")
        return self.terms[0][1]

    def total_degree(self) -> int:
        """Max total degree of the terms (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def degree_in(self, vars_or_indices) -> int:
        """Max combined exponent over a variable, name, or iterable of them."""
        if isinstance(vars_or_indices, (int, str)):
            vars_or_indices = (vars_or_indices,)
        idx = tuple(v if isinstance(v, int) else self.ring.index(v)
                    for v in vars_or_indices)
        if not self.terms:
            return -1
        return max(sum(e[i] for i in idx) for e, _ in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {sum(e) for e, _ in self.terms}
        return len(degs) == 1

    def is_homogeneous_in(self, var_indices: Iterable[int]) -> bool:
        idx = tuple(var_indices)
        if not self.terms:
            return True
        degs = {sum(e[i] for i in idx) for e, _ in self.terms}
        return len(degs) == 1

    def support_variables(self) -> set:
        out: set = set()
        for e, _ in self.terms:
            for i, x in enumerate(e):
                if x:
                    out.add(i)
        return out

    def iter_terms(self) -> Iterator[tuple]:
        return iter(self.terms)

    # -- arithmetic -------------------------------------------------------

    def _require_same_ring(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise InputError("polynomials live in different rings")

    def __add__(self, other: object) -> "Polynomial":
        other = _coerce_operand(self.ring, other)
        self._require_same_ring(other)
        return _merge(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other: object) -> "Polynomial":
        other = _coerce_operand(self.ring, other)
        self._require_same_ring(other)
        return _merge(self, other, -1)

    def __rsub__(self, other: object) -> "Polynomial":
        return _coerce_operand(self.ring, other) - self

    def __neg__(self) -> "Polynomial":
        fld = self.ring.coefficient_field
        terms = tuple((e, fld.neg(c)) for e, c in self.terms)
        return Polynomial(self.ring, terms, _keys=self._keys)

    def scale(self, value: object) -> "Polynomial":
        fld = self.ring.coefficient_field
        c = fld.coerce(value) if not _is_field_coeff(fld, value) else value
        if not c:
            return self.ring.zero()
        terms = tuple((e, fld.mul(k, c)) for e, k in self.terms)
        return Polynomial(self.ring, terms, _keys=self._keys)

    def term_multiple(self, exponent: Exponent, coeff: Coeff) -> "Polynomial":
        """Multiply by a single term; exponent arity must match."""
        if not coeff:
            return self.ring.zero()
        fld = self.ring.coefficient_field
        out = []
        for e, c in self.terms:
            ne = tuple(a + b for a, b in zip(e, exponent))
            _check_exponent(ne)
            out.append((ne, fld.mul(c, coeff)))
        return Polynomial(self.ring, tuple(out))

    def __mul__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_ring(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        p = self.ring.coefficient_field.characteristic
        acc: dict = {}
        for eb, cb in b:
            for ea, ca in a:
                ne = tuple(x + y for x, y in zip(ea, eb))
                prev = acc.get(ne)
                acc[ne] = ca * cb if prev is None else prev + ca * cb
        fld = self.ring.coefficient_field
        if p:
            data = {e: c % p for e, c in acc.items()}
        else:
            data = acc
        pairs = [(e, c) for e, c in data.items() if c]
        for e, _ in pairs:
            _check_exponent(e)
        key = self.ring.key
        pairs.sort(key=lambda t: key(t[0]), reverse=True)
        return Polynomial(self.ring, tuple(pairs))

    def __rmul__(self, other: object) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise InputError("polynomial powers must be non-negative ints")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        fld = self.ring.coefficient_field
        if lc == fld.one:
            return self
        return self.scale(fld.inv(lc))

    def derivative(self, var: int | str) -> "Polynomial":
        """Partial derivative with respect to one variable."""
        i = var if isinstance(var, int) else self.ring.index(var)
        fld = self.ring.coefficient_field
        acc: dict = {}
        for e, c in self.terms:
            k = e[i]
            if not k:
                continue
            ne = e[:i] + (k - 1,) + e[i + 1:]
            nc = fld.mul(c, fld.coerce(k))
            if nc:
                acc[ne] = fld.add(acc.get(ne, fld.zero), nc)
        return Polynomial.from_dict(self.ring, acc)

    # -- substitution and ring maps ---------------------------------------

    def substitute(self, bindings: Mapping[str, "Polynomial"],
                   target: RingContext | None = None) -> "Polynomial":
        """Map each bound variable to a polynomial of the target ring.

        Unbound variables occurring in a term must exist (by name) in
        the target ring; the fields must agree.
        """
        if target is None:
            some = next(iter(bindings.values()), None)
            target = some.ring if some is not None else self.ring
        fld = target.coefficient_field
        if fld != self.ring.coefficient_field:
            raise InputError("substitution cannot change the coefficient field")
        occurring = {self.ring.variables[i] for i in self.support_variables()}
        images: list[Polynomial | None] = []
        for v in self.ring.variables:
            if v in bindings:
                img = bindings[v]
                if img.ring != target:
                    raise InputError(f"image of {v!r} lives in the wrong ring")
                images.append(img)
            elif v in occurring:
                images.append(target.variable(v))  # raises if absent
            else:
                images.append(None)  # never consulted
        # incremental power cache per variable
        pows: list[list[Polynomial]] = [
            [target.one(), img if img is not None else target.one()]
            for img in images]
        acc = target.zero()
        for e, c in self.terms:
            term = Polynomial(target, (((0,) * target.nvars, c),))
            for i, k in enumerate(e):
                if not k:
                    continue
                cache = pows[i]
                while len(cache) <= k:
                    cache.append(cache[-1] * cache[1])
                term = term * cache[k]
            acc = acc + term
        return acc

    def evaluate(self, point: Sequence[object]) -> Coeff:
        """Exact value at a full point (one value per variable)."""
        if len(point) != self.ring.nvars:
            raise InputError("point arity does not match ring")
        fld = self.ring.coefficient_field
        vals = [v if _is_field_coeff(fld, v) else fld.coerce(v) for v in point]
        p = fld.characteristic
        total = fld.zero
        for e, c in self.terms:
            v = c
            for x, k in zip(vals, e):
                if k:
                    v = fld.mul(v, pow(x, k, p) if p else x ** k)
            total = fld.add(total, v)
        return total

    def map_exponents(self, target: RingContext,
                      position: Sequence[int]) -> "Polynomial":
        """Re-index variables: old variable i becomes target variable position[i].

        The coefficient field must match; target positions must be distinct.
        """
        if target.coefficient_field != self.ring.coefficient_field:
            raise InputError("exponent map cannot change the field")
        n = target.nvars
        out = {}
        for e, c in self.terms:
            ne = [0] * n
            for i, k in enumerate(e):
                if k:
                    ne[position[i]] = k
            out[tuple(ne)] = c
        return Polynomial.from_dict(target, out)

    # -- comparisons / hashing --------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            try:
                other = _coerce_operand(self.ring, other)
            except InputError:
                return NotImplemented
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __str__(self) -> str:
        return render_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({render_polynomial(self)!r})"

    def sort_key(self) -> tuple:
        """Deterministic whole-polynomial key (leading terms first)."""
        return self.keys()


def _is_field_coeff(fld: CoefficientField, value: object) -> bool:
    if fld.characteristic:
        return isinstance(value, int) and 0 <= value < fld.characteristic
    return isinstance(value, Fraction)


def _coerce_operand(ring: RingContext, other: object) -> Polynomial:
    if isinstance(other, Polynomial):
        return other
    if isinstance(other, (int, Fraction)):
        return ring.constant(other)
    raise InputError(f"cannot combine polynomial with {other!r}")


def _merge(a: Polynomial, b: Polynomial, sign: int) -> Polynomial:
    """Merge two sorted term lists, adding (sign=+1) or subtracting."""
    ring = a.ring
    fld = ring.coefficient_field
    ka, kb = a.keys(), b.keys()
    ta, tb = a.terms, b.terms
    i = j = 0
    na, nb = len(ta), len(tb)
    out_terms = []
    out_keys = []
    while i < na and j < nb:
        if ka[i] == kb[j]:
            c = fld.add(ta[i][1], tb[j][1]) if sign > 0 else fld.sub(ta[i][1], tb[j][1])
            if c:
                out_terms.append((ta[i][0], c))
                out_keys.append(ka[i])
            i += 1
            j += 1
        elif ka[i] > kb[j]:
            out_terms.append(ta[i])
            out_keys.append(ka[i])
            i += 1
        else:
            c = tb[j][1] if sign > 0 else fld.neg(tb[j][1])
            out_terms.append((tb[j][0], c))
            out_keys.append(kb[j])
            j += 1
    while i < na:
        out_terms.append(ta[i])
        out_keys.append(ka[i])
        i += 1
    while j < nb:
        c = tb[j][1] if sign > 0 else fld.neg(tb[j][1])
        out_terms.append((tb[j][0], c))
        out_keys.append(kb[j])
        j += 1
    return Polynomial(ring, tuple(out_terms), _keys=tuple(out_keys))


# ---------------------------------------------------------------------------
# parsing


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()/]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise InputError(f"unexpected character {text[pos:].strip()[0]!r} in polynomial")
        pos = m.end()
        if m.group("int") is not None:
            tokens.append(("int", int(m.group("int"))))
        elif m.group("name") is not None:
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
    tokens.append(("end", None))
    return tokens


class _Parser:
    """Recursive descent over +,-,*,^,parentheses and rational literals."""

    def __init__(self, tokens: list, ring: RingContext):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> None:
        kind, val = self.next()
        if kind != "op" or val != op:
            raise InputError(f"expected {op!r} in polynomial expression")

    def parse_expression(self) -> Polynomial:
        kind, val = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.next()
            negate = val == "-"
        acc = self.parse_term()
        if negate:
            acc = -acc
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.parse_term()
                acc = acc - rhs if val == "-" else acc + rhs
            else:
                return acc

    def parse_term(self) -> Polynomial:
        acc = self.parse_factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.next()
                acc = acc * self.parse_factor()
            elif kind == "op" and val == "/":
                # rational literal tail: the divisor must be a nonzero integer
                self.next()
                kind2, val2 = self.next()
                if kind2 != "int" or val2 == 0:
                    raise InputError("'/' only divides by a nonzero integer literal")
                acc = acc.scale(Fraction(1, val2))
            else:
                return acc

    def parse_factor(self) -> Polynomial:
        base = self.parse_base()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind2, val2 = self.next()
            if kind2 != "int":
                raise InputError("exponent must be an integer literal")
            return base ** val2
        return base

    def parse_base(self) -> Polynomial:
        kind, val = self.next()
        if kind == "int":
            return self.ring.constant(val)
        if kind == "name":
            return self.ring.variable(val)
        if kind == "op" and val == "(":
            inner = self.parse_expression()
            self.expect_op(")")
            return inner
        if kind == "op" and val == "-":
            return -self.parse_base()
        raise InputError("malformed polynomial expression")


def parse_polynomial(text: str, ring: RingContext) -> Polynomial:
    """Parse `text` into a polynomial of `ring`.

    Grammar: integers, rational literals a/b, ring variables, + - * ^
    and parentheses.  Unknown names and malformed syntax raise
    InputError.
    """
    parser = _Parser(_tokenize(text), ring)
    poly = parser.parse_expression()
    kind, _ = parser.peek()
    if kind != "end":
        raise InputError("trailing input after polynomial expression")
    return poly


def render_polynomial(p: Polynomial) -> str:
    """Canonical compact rendering; parse(render(p)) == p."""
    if not p.terms:
        return "0"
    fld = p.ring.coefficient_field
    names = p.ring.variables
    chunks: list[str] = []
    for e, c in p.terms:
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k:
                factors.append(f"{name}^{k}")
        mono = "*".join(factors)
        if fld.characteristic == 0:
            negative = c < 0
            mag = -c if negative else c
        else:
            negative = False
            mag = c
        if not mono:
            body = _render_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_render_coeff(mag)}*{mono}"
        if not chunks:
            chunks.append(f"-{body}" if negative else body)
        else:
            chunks.append(f"-{body}" if negative else f"+{body}")
    return "".join(chunks)


def _render_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))
