"""Reading ideals, pairs, and parametrizations from disk.

The ideal file grammar is a header plus one generator per line:

    field QQ            (or "field F 32003")
    vars x0 x1 x2
    x0^2 - x1*x2
    # a comment
    x1^3 + 2*x2^3

A pair file is the same grammar where a line ``Z:`` starts the block of
generators of the smaller variety; with no such block the pair is the
classical one (Z equal to X).  A parametrization file opens with
``param t1 t2 ...`` and then lists one coordinate polynomial per line.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import InputError
from .geometry import VarietyPair, ideal_mod_p
from .groebner import IdealPresentation
from .rings import (QQ, CoefficientField, MonomialOrder, RingContext,
                    parse_polynomial, render_polynomial)

EMPTY_DUAL_MARKER = "EMPTY (Z ⊆ X_sing)"


def _strip(line: str) -> str:
    cut = line.find("#")
    if cut >= 0:
        line = line[:cut]
    return line.strip()


def parse_field(spec: str) -> CoefficientField:
    """Field from a spec string: ``QQ``, ``F <prime>``, ``F<prime>``,
    or a bare prime."""
    parts = spec.split()
    if parts == ["QQ"]:
        return QQ
    if len(parts) == 1:
        tok = parts[0]
        if tok.startswith("F"):
            tok = tok[1:]
        if tok.isdigit():
            return CoefficientField.prime(int(tok))
    if len(parts) == 2 and parts[0] == "F" and parts[1].isdigit():
        return CoefficientField.prime(int(parts[1]))
    raise InputError(f"bad field spec {spec!r}; expected 'QQ' or 'F <p>'")


def render_field(field: CoefficientField) -> str:
    p = field.characteristic
    return f"F {p}" if p else "QQ"


def _read_lines(text: str) -> list:
    lines = [_strip(raw) for raw in text.splitlines()]
    return [ln for ln in lines if ln]


def _parse_header(lines: list, order: MonomialOrder) -> RingContext:
    if len(lines) < 2 or not lines[0].startswith("field "):
        raise InputError("ideal file must open with a 'field' line")
    field = parse_field(lines[0][len("field "):])
    if not lines[1].startswith("vars "):
        raise InputError("second line of an ideal file must list 'vars'")
    names = tuple(lines[1][len("vars "):].split())
    if not names:
        raise InputError("empty variable list")
    if len(set(names)) != len(names):
        raise InputError("repeated variable name")
    return RingContext(names, field, order)


def load_ideal_text(text: str,
                    order: MonomialOrder | None = None) -> IdealPresentation:
    """One ideal from file text; a pair marker here is a format error."""
    lines = _read_lines(text)
    ring = _parse_header(lines, order or MonomialOrder.grevlex())
    gens = []
    for ln in lines[2:]:
        if ln == "Z:":
            raise InputError("pair marker 'Z:' in a plain ideal file; "
                             "this command takes a single ideal")
        gens.append(parse_polynomial(ln, ring))
    if not gens:
        raise InputError("ideal file lists no generators")
    return IdealPresentation(ring, tuple(gens))


def load_ideal(path: str,
               order: MonomialOrder | None = None) -> IdealPresentation:
    with open(path, "r", encoding="utf-8") as fh:
        return load_ideal_text(fh.read(), order)


def load_pair_text(text: str, *, projective: bool | None = None,
                   field_override: CoefficientField | None = None,
                   limits=None) -> VarietyPair:
    """A nested pair from file text.

    Generators before the ``Z:`` marker cut the bigger variety, those
    after it cut the smaller one (the X block is prepended, so the file
    only lists what shrinks).  Without a marker Z is X itself.  When the
    projective choice is left open it follows homogeneity of the input.
    """
    lines = _read_lines(text)
    ring = _parse_header(lines, MonomialOrder.grevlex())
    gens_X: list = []
    gens_Z: list = []
    block = gens_X
    for ln in lines[2:]:
        if ln == "Z:":
            if block is gens_Z:
                raise InputError("two 'Z:' markers in one pair file")
            block = gens_Z
            continue
        block.append(parse_polynomial(ln, ring))
    if not gens_X:
        raise InputError("pair file lists no generators for X")
    I_X = IdealPresentation(ring, tuple(gens_X))
    I_Z = IdealPresentation(ring, tuple(gens_X + gens_Z))
    if field_override is not None and field_override.characteristic:
        if ring.coefficient_field.characteristic:
            if ring.coefficient_field != field_override:
                raise InputError("field override conflicts with the file")
        else:
            p = field_override.characteristic
            I_X = ideal_mod_p(I_X, p)
            I_Z = ideal_mod_p(I_Z, p)
    if projective is None:
        projective = I_X.is_homogeneous() and I_Z.is_homogeneous()
    return VarietyPair(I_X, I_Z, projective=projective, limits=limits)


def load_pair(path: str, *, projective: bool | None = None,
              field_override: CoefficientField | None = None,
              limits=None) -> VarietyPair:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return load_pair_text(text, projective=projective,
                          field_override=field_override, limits=limits)


def load_parametrization_text(text: str, field: CoefficientField) -> tuple:
    """(parameter ring, coordinate polynomials) from file text."""
    lines = _read_lines(text)
    if not lines or not lines[0].startswith("param "):
        raise InputError("parametrization file must open with 'param t1 ...'")
    names = tuple(lines[0][len("param "):].split())
    if not names or len(set(names)) != len(names):
        raise InputError("bad parameter list")
    ring = RingContext(names, field, MonomialOrder.grevlex())
    comps = tuple(parse_polynomial(ln, ring) for ln in lines[1:])
    if not comps:
        raise InputError("parametrization lists no coordinates")
    return ring, comps


def load_parametrization(path: str, field: CoefficientField) -> tuple:
    with open(path, "r", encoding="utf-8") as fh:
        return load_parametrization_text(fh.read(), field)


def parse_point(spec: str, field: CoefficientField) -> tuple:
    """Comma-separated coordinates, rationals allowed over QQ."""
    out = []
    for tok in spec.split(","):
        tok = tok.strip()
        try:
            if field.characteristic:
                out.append(field.coerce(int(tok)))
            else:
                out.append(field.coerce(Fraction(tok)))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad coordinate {tok!r}")
    return tuple(out)


# ---------------------------------------------------------------------------
# report rendering


def file_digest(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def is_unit_ideal(I: IdealPresentation, limits=None) -> bool:
    return I.is_unit(limits=limits)


def render_ideal(I: IdealPresentation, *, limits=None) -> dict:
    """JSON-ready ideal: ring header plus sorted generator strings.

    The unit ideal renders as the empty-variety marker so an empty
    relative dual is impossible to misread as a real locus.
    """
    ring = I.ring
    body: dict = {
        "field": render_field(ring.coefficient_field),
        "vars": list(ring.variables),
    }
    if is_unit_ideal(I, limits=limits):
        body["empty"] = EMPTY_DUAL_MARKER
        body["generators"] = ["1"]
    else:
        gens = sorted(render_polynomial(g) for g in I.generators
                      if not g.is_zero())
        body["generators"] = gens
    return body


def render_multidegrees(mdv) -> dict:
    lo = mdv.offset
    hi = lo + len(mdv.values) - 1
    return {"offsets": [lo, hi], "values": list(mdv.values)}


def multidegree_table(mdv) -> str:
    """Two-row table of slice exponents against multidegrees."""
    lo = mdv.offset
    cells = [(str(lo + i), str(v)) for i, v in enumerate(mdv.values)]
    widths = [max(len(a), len(b)) for a, b in cells]
    top = "  ".join(c[0].rjust(w) for c, w in zip(cells, widths))
    bot = "  ".join(c[1].rjust(w) for c, w in zip(cells, widths))
    return f"  j     | {top}\n  delta | {bot}"


def report_json(report: dict) -> str:
    """Deterministic bytes for a report (timing keys excepted)."""
    return json.dumps(report, sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"
