"""Command line front end.

Every command emits one report: a versioned JSON document carrying the
rendered results, a hypothesis-check section (pass, fail, or
inconclusive, never a silent omission), the seeds and primes used, and
per-stage wall times.  Reports are byte-identical across reruns with
the same inputs except for the timing block.  Exit codes: 0 clean,
2 a hypothesis check failed, 3 a resource cap was hit, 4 bad input.
"""

from __future__ import annotations

import os
import sys
import time

import click

from .duality import (contact_locus, defect_pair,
                      first_multidegree_consistency, pair_multidegrees,
                      relative_conormal_ideal, relative_dual_ideal,
                      relative_polar_degrees)
from .ed import (EDModel, EDSetup, conditional_ed_degree,
                 conditional_ed_ideal_affine, conditional_ed_ideal_projective,
                 correspondence_image_ideal, data_locus_ideal,
                 fiber_critical_count, param_ed_correspondence,
                 sample_data_point)
from .errors import (HypothesisFailure, InputError,
                     PositiveDimensionalFiber, ResourceExhausted)
from .fileio import (file_digest, load_ideal, load_pair,
                     load_parametrization, multidegree_table, parse_field,
                     parse_point, render_field, render_ideal,
                     render_multidegrees, report_json)
from .formulas import (ChernInput, DeterminantalSpec, MatrixFlavor,
                       chern_to_multidegrees, ci_conditional_degree,
                       data_locus_degree_from_multidegrees,
                       determinantal_invariants,
                       determinantal_relative_defect, kalman_degree)
from .geometry import radical_contains
from .groebner import (EngineLimits, eliminate, hilbert_dim_degree,
                       saturate_element, saturate_ideal)
from .rings import MonomialOrder, parse_polynomial, render_polynomial


class _Stage:
    def __init__(self, pipe: "Pipeline", name: str):
        self.pipe = pipe
        self.name = name

    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, exc_type, exc, tb):
        self.pipe.report["timing"][self.name] = round(
            time.monotonic() - self.t0, 6)
        if exc_type is not None:
            self.pipe.report["failed_stage"] = self.name
        return False


class Pipeline:
    """One report under construction; timings survive failures."""

    def __init__(self, command: str, inputs: dict, **config):
        self.report = {
            "schema": 1,
            "command": command,
            "inputs": inputs,
            "config": config,
            "results": {},
            "hypothesis_checks": {},
            "primes": [],
            "timing": {},
        }
        self.text: list = []

    def stage(self, name: str) -> _Stage:
        return _Stage(self, name)

    def check(self, name: str, status: bool | None) -> None:
        word = "inconclusive" if status is None else \
            ("pass" if status else "fail")
        self.report["hypothesis_checks"][name] = word

    def note_field(self, field) -> None:
        self.report["field"] = render_field(field)
        if field.characteristic:
            self.report["primes"] = [field.characteristic]

    def put(self, key: str, value) -> None:
        self.report["results"][key] = value

    def exit_code(self) -> int:
        flags = self.report["hypothesis_checks"].values()
        return 2 if "fail" in flags else 0


def _inputs(*paths: str) -> dict:
    out = {}
    for p in paths:
        out[os.path.basename(p)] = {"path": p, "sha256": file_digest(p)}
    return out


def _finish(pipe: Pipeline, report_path: str | None,
            code: int | None = None) -> None:
    if code is None:
        code = pipe.exit_code()
    payload = report_json(pipe.report)
    if report_path == "-":
        click.echo(payload, nl=False)
    elif report_path:
        with open(report_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    for line in pipe.text:
        click.echo(line)
    if code:
        sys.exit(code)


def _run(pipe: Pipeline, report_path: str | None, body) -> None:
    """Execute a command body and map failures onto exit codes.

    Hypothesis and resource failures still write the partial report,
    so a long pipeline never dies without a trace of where.
    """
    try:
        body()
    except InputError as exc:
        pipe.report["error"] = {"kind": "input", "message": str(exc)}
        click.echo(f"input error: {exc}", err=True)
        _finish(pipe, report_path, 4)
        return
    except ResourceExhausted as exc:
        pipe.report["error"] = {"kind": "resources", "message": str(exc)}
        click.echo(f"resource cap: {exc}", err=True)
        _finish(pipe, report_path, 3)
        return
    except HypothesisFailure as exc:
        pipe.report["error"] = {"kind": "hypothesis", "message": str(exc)}
        click.echo(f"hypothesis failure: {exc}", err=True)
        _finish(pipe, report_path, 2)
        return
    _finish(pipe, report_path)


def _limits(max_pairs: int | None, max_degree: int | None,
            max_seconds: float | None) -> EngineLimits | None:
    if max_pairs is None and max_degree is None and max_seconds is None:
        return None
    for name, value in (("max-pairs", max_pairs), ("max-degree", max_degree),
                        ("max-seconds", max_seconds)):
        if value is not None and value <= 0:
            raise InputError(f"--{name} must be positive")
    base = EngineLimits()
    return EngineLimits(max_pairs or base.max_pairs,
                        max_degree or base.max_degree, max_seconds)


def _common(fn):
    for opt in (
        click.option("--report", "report_path", default=None, metavar="PATH",
                     help="Write the JSON report here ('-' for stdout)."),
        click.option("--seed", type=int, default=0, show_default=True,
                     help="Seed for every randomized subroutine."),
        click.option("--max-pairs", type=int, default=None,
                     help="Cap on critical pairs per basis run."),
        click.option("--max-degree", type=int, default=None,
                     help="Cap on s-polynomial degree per basis run."),
        click.option("--max-seconds", type=float, default=None,
                     help="Wall-clock cap per basis run."),
        click.option("--jobs", type=int, default=1, show_default=True,
                     help="Upper bound on concurrent slice/fiber jobs."),
    ):
        fn = opt(fn)
    return fn


def _order_named(name: str) -> MonomialOrder:
    return MonomialOrder.lex() if name == "lex" else MonomialOrder.grevlex()


def _render_basis(polys) -> list:
    return [render_polynomial(g) for g in polys]


def _names_list(spec: str) -> list:
    names = [tok for tok in spec.replace(",", " ").split() if tok]
    if not names:
        raise InputError("empty variable list")
    return names


def _int_list(spec: str) -> list:
    try:
        return [int(tok) for tok in spec.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"bad integer list {spec!r}")


def _check_jobs(jobs: int) -> None:
    if jobs < 1:
        raise InputError("--jobs must be positive")


@click.group()
def main() -> None:
    """Exact relative-tangency and nearest-point invariants."""


# ---------------------------------------------------------------------------
# engine-level commands


@main.command()
@click.option("--input", "input_path", required=True, metavar="FILE",
              help="Ideal file (field/vars header plus generators).")
@click.option("--order", type=click.Choice(["grevlex", "lex"]),
              default="grevlex", show_default=True)
@_common
def gb(input_path, order, report_path, seed, max_pairs, max_degree,
       max_seconds, jobs):
    """Reduced Groebner basis of an ideal."""
    _check_jobs(jobs)
    pipe = Pipeline("gb", _inputs(input_path), seed=seed, order=order,
                    jobs=jobs)

    def body():
        limits = _limits(max_pairs, max_degree, max_seconds)
        with pipe.stage("load"):
            I = load_ideal(input_path, _order_named(order))
        pipe.note_field(I.ring.coefficient_field)
        with pipe.stage("basis"):
            basis = I.groebner_basis(limits=limits)
        pipe.put("ideal", render_ideal(I))
        pipe.put("groebner_basis", _render_basis(basis))
        pipe.text.extend(render_polynomial(g) for g in basis)

    _run(pipe, report_path, body)


@main.command("eliminate")
@click.option("--input", "input_path", required=True, metavar="FILE")
@click.option("--drop", required=True, metavar="VARS",
              help="Comma-separated variables to eliminate.")
@_common
def eliminate_cmd(input_path, drop, report_path, seed, max_pairs, max_degree,
                  max_seconds, jobs):
    """Eliminate variables from an ideal."""
    _check_jobs(jobs)
    pipe = Pipeline("eliminate", _inputs(input_path), seed=seed, drop=drop,
                    jobs=jobs)

    def body():
        limits = _limits(max_pairs, max_degree, max_seconds)
        with pipe.stage("load"):
            I = load_ideal(input_path)
        pipe.note_field(I.ring.coefficient_field)
        with pipe.stage("eliminate"):
            out = eliminate(I, _names_list(drop), limits=limits)
        pipe.put("eliminated", render_ideal(out, limits=limits))
        pipe.text.extend(render_polynomial(g) for g in out.generators)

    _run(pipe, report_path, body)


@main.command()
@click.option("--input", "input_path", required=True, metavar="FILE")
@click.option("--element", default=None, metavar="POLY",
              help="Saturate by one polynomial.")
@click.option("--ideal", "ideal_path", default=None, metavar="FILE",
              help="Saturate by a second ideal (same header).")
@_common
def saturate(input_path, element, ideal_path, report_path, seed, max_pairs,
             max_degree, max_seconds, jobs):
    """Saturate an ideal by an element or by another ideal."""
    _check_jobs(jobs)
    if (element is None) == (ideal_path is None):
        raise click.UsageError("give exactly one of --element / --ideal")
    paths = [input_path] + ([ideal_path] if ideal_path else [])
    pipe = Pipeline("saturate", _inputs(*paths), seed=seed, jobs=jobs,
                    element=element)

    def body():
        limits = _limits(max_pairs, max_degree, max_seconds)
        with pipe.stage("load"):
            I = load_ideal(input_path)
        pipe.note_field(I.ring.coefficient_field)
        with pipe.stage("saturate"):
            if element is not None:
                g = parse_polynomial(element, I.ring)
                out = saturate_element(I, g, limits)
            else:
                J = load_ideal(ideal_path)
                if J.ring != I.ring:
                    raise InputError("the two ideal files declare "
                                     "different rings")
                out = saturate_ideal(I, J, limits)
        pipe.put("saturated", render_ideal(out, limits=limits))
        pipe.text.extend(render_polynomial(g) for g in out.generators)

    _run(pipe, report_path, body)


@main.command("dim-degree")
@click.option("--input", "input_path", required=True, metavar="FILE")
@click.option("--homogenize", is_flag=True,
              help="Force homogenization (default: only when the input "
                   "is inhomogeneous).")
@_common
def dim_degree(input_path, homogenize, report_path, seed, max_pairs,
               max_degree, max_seconds, jobs):
    """Krull dimension and degree from the Hilbert series."""
    _check_jobs(jobs)
    pipe = Pipeline("dim-degree", _inputs(input_path), seed=seed, jobs=jobs)

    def body():
        limits = _limits(max_pairs, max_degree, max_seconds)
        with pipe.stage("load"):
            I = load_ideal(input_path)
        pipe.note_field(I.ring.coefficient_field)
        homog = homogenize or not I.is_homogeneous()
        with pipe.stage("hilbert"):
            h = hilbert_dim_degree(I, homogenize=homog, limits=limits)
        pipe.put("krull_dimension", h.krull_dimension)
        pipe.put("degree", h.degree)
        if I.is_homogeneous():
            pipe.put("projective_dimension", h.projective_dimension)
        pipe.text.append(f"krull dimension {h.krull_dimension}, "
                         f"degree {h.degree}")

    _run(pipe, report_path, body)


# ---------------------------------------------------------------------------
# tangency commands (all take a pair file)


@main.command()
@click.option("--input", "input_path", required=True, metavar="FILE",
              help="Pair file: X generators, then a 'Z:' block.")
@_common
def conormal(input_path, report_path, seed, max_pairs, max_degree,
             max_seconds, jobs):
    """Relative conormal ideal of a nested pair."""
    _check_jobs(jobs)
    pipe = Pipeline("conormal", _inputs(input_path), seed=seed, jobs=jobs)

    def body():
        limits = _limits(max_pairs, max_degree, max_seconds)
        with pipe.stage("load"):
            pair = load_pair(input_path, projective=True, limits=limits)
        pipe.note_field(pair.ring.coefficient_field)
        with pipe.stage("conormal"):
            W = relative_conormal_ideal(pair, limits=limits)
        pipe.put("conormal", render_ideal(W, limits=limits))
        pipe.put("dual_vars", list(W.ring.variables[pair.ring.nvars:]))
        pipe.text.append(f"{len(W.generators)} generators in "
                         f"{W.ring.nvars} variables")

    _run(pipe, report_path, body)


@main.command()
@click.option("--input", "input_path", required=True, metavar="FILE")
@_common
def dual(input_path, report_path, seed, max_pairs, max_degree, max_seconds,
         jobs):
    """Relative dual ideal (conormal image in the dual space)."""
    _check_jobs(jobs)
    pipe = Pipeline("dual", _inputs(input_path), seed=seed, jobs=jobs)

    def body():
        limits = _limits(max_pairs, max_degree, max_seconds)
        with pipe.stage("load"):
            pair = load_pair(input_path, projective=True, limits=limits)
        pipe.note_field(pair.ring.coefficient_field)
        with pipe.stage("conormal"):
            W = relative_conormal_ideal(pair, limits=limits)
        with pipe.stage("dual"):
            D = relative_dual_ideal(W, limits=limits)
        body_ = render_ideal(D, limits=limits)
        pipe.put("dual", body_)
        pipe.put("empty", "empty" in body_)
        if "empty" in body_:
            pipe.text.append(body_["empty"])
        else:
            pipe.text.extend(body_["generators"])

    _run(pipe, report_path, body)


@main.command()
@click.option("--input", "input_path", required=True, metavar="FILE")
@_common
def multidegrees(input_path, report_path, seed, max_pairs, max_degree,
                 max_seconds, jobs):
    """Multidegree vector and relative polar degrees of a pair."""
    _check_jobs(jobs)
    pipe = Pipeline("multidegrees", _inputs(input_path), seed=seed, jobs=jobs)

    def body():
        limits = _limits(max_pairs, max_degree, max_seconds)
        with pipe.stage("load"):
            pair = load_pair(input_path, projective=True, limits=limits)
        pipe.note_field(pair.ring.coefficient_field)
        with pipe.stage("conormal"):
            W = relative_conormal_ideal(pair, limits=limits)
        with pipe.stage("multidegrees"):
            mdv = pair_multidegrees(pair, W, seed=seed, limits=limits)
        pipe.put("multidegrees", render_multidegrees(mdv))
        pipe.put("polar_degrees", relative_polar_degrees(mdv))
        pipe.put("total", mdv.total())
        with pipe.stage("consistency"):
            ok = first_multidegree_consistency(mdv, pair, limits=limits)
        pipe.check("first_multidegree", ok)
        pipe.text.append(multidegree_table(mdv))
        pipe.text.append(f"  total | {mdv.total()}")

    _run(pipe, report_path, body)


@main.command()
@click.option("--input", "input_path", required=True, metavar="FILE")
@click.option("--point", required=True, metavar="C1,..,CN",
              help="Dual-space point (one coordinate per variable).")
@_common
def contact(input_path, point, report_path, seed, max_pairs, max_degree,
            max_seconds, jobs):
    """Contact locus of a dual point: the conormal fiber over it."""
    _check_jobs(jobs)
    pipe = Pipeline("contact", _inputs(input_path), seed=seed, jobs=jobs,
                    point=point)

    def body():
        limits = _limits(max_pairs, max_degree, max_seconds)
        with pipe.stage("load"):
            pair = load_pair(input_path, projective=True, limits=limits)
        pipe.note_field(pair.ring.coefficient_field)
        H = parse_point(point, pair.ring.coefficient_field)
        with pipe.stage("conormal"):
            W = relative_conormal_ideal(pair, limits=limits)
        with pipe.stage("contact"):
            C = contact_locus(pair, W, H, limits=limits)
        with pipe.stage("dimension"):
            h = hilbert_dim_degree(C, limits=limits)
        pipe.put("contact_ideal", render_ideal(C, limits=limits))
        pipe.put("projective_dimension", h.projective_dimension)
        pipe.text.append(f"contact locus has projective dimension "
                         f"{h.projective_dimension}")

    _run(pipe, report_path, body)


@main.command()
@click.option("--input", "input_path", required=True, metavar="FILE")
@click.option("--prime", type=int, default=32003, show_default=True,
              help="Prime used for the regularity witness search.")
@_common
def defects(input_path, prime, report_path, seed, max_pairs, max_degree,
            max_seconds, jobs):
    """Dual defects of the pair and the equivalence-package booleans."""
    _check_jobs(jobs)
    pipe = Pipeline("defects", _inputs(input_path), seed=seed, jobs=jobs,
                    prime=prime)

    def body():
        limits = _limits(max_pairs, max_degree, max_seconds)
        with pipe.stage("load"):
            pair = load_pair(input_path, projective=True, limits=limits)
        pipe.note_field(pair.ring.coefficient_field)
        with pipe.stage("defects"):
            rep = defect_pair(pair, seed=seed, prime=prime, limits=limits)
        pipe.put("def_X", rep.def_X)
        pipe.put("def_pair", rep.def_XZ)
        pipe.put("codim_in_dual", rep.codim_XZ_dual_in_Xdual)
        pipe.put("reflexive", rep.reflexive_rel)
        pipe.put("reciprocal", rep.reciprocal_rel)
        pipe.put("notes", list(rep.notes))
        pipe.check("dual_regularity", rep.dual_regular)
        pipe.text.append(
            f"def(X) {rep.def_X}, relative defect {rep.def_XZ}, "
            f"codim in dual {rep.codim_XZ_dual_in_Xdual}")
        pipe.text.append(
            f"regular {rep.dual_regular}, reflexive {rep.reflexive_rel}, "
            f"reciprocal {rep.reciprocal_rel}")

    _run(pipe, report_path, body)


# ---------------------------------------------------------------------------
# nearest-point commands


def _load_pair_for_model(input_path, projective_flag, affine_flag,
                         field_spec, limits):
    if projective_flag and affine_flag:
        raise InputError("--projective and --affine exclude each other")
    choice = True if projective_flag else False if affine_flag else None
    override = parse_field(field_spec) if field_spec else None
    return load_pair(input_path, projective=choice, field_override=override,
                     limits=limits)


@main.command()
@click.option("--input", "input_path", required=True, metavar="FILE")
@click.option("--param", nargs=2, default=None, metavar="PHI PSI",
              help="Parametrization files for X and for Z's parameter "
                   "locus; enables exact sampling.")
@click.option("--field", "field_spec", default=None, metavar="SPEC",
              help="Field override, e.g. 'F 32003' (reduces a rational "
                   "input mod p).")
@click.option("--projective/--affine", "projective_flag", default=None,
              help="Coordinate model (default: follow homogeneity of "
                   "the input).")
@click.option("--with-defects", is_flag=True,
              help="Also run the dual-regularity battery (slower).")
@click.option("--no-sample", is_flag=True,
              help="Skip data-point sampling and fiber counting.")
@_common
def edd(input_path, param, field_spec, projective_flag, with_defects,
        no_sample, report_path, seed, max_pairs, max_degree, max_seconds,
        jobs):
    """Full conditional nearest-point report for a pair."""
    _check_jobs(jobs)
    paths = [input_path] + (list(param) if param else [])
    pipe = Pipeline("edd", _inputs(*paths), seed=seed, jobs=jobs,
                    field=field_spec, model=(
                        "projective" if projective_flag else
                        "affine" if projective_flag is False else "auto"))

    def body():
        limits = _limits(max_pairs, max_degree, max_seconds)
        with pipe.stage("load"):
            pair = _load_pair_for_model(
                input_path, projective_flag is True,
                projective_flag is False, field_spec, limits)
            setup = EDSetup(pair)
        fld = pair.ring.coefficient_field
        pipe.note_field(fld)
        projective = setup.model is EDModel.PROJECTIVE
        pipe.report["config"]["model"] = \
            "projective" if projective else "affine"

        mdv = None
        W = None
        if projective:
            with pipe.stage("conormal"):
                W = relative_conormal_ideal(pair, limits=limits)
            pipe.put("conormal", render_ideal(W, limits=limits))
            with pipe.stage("multidegrees"):
                mdv = pair_multidegrees(pair, W, seed=seed, limits=limits)
            pipe.put("multidegrees", render_multidegrees(mdv))
            pipe.put("polar_degrees", relative_polar_degrees(mdv))
            pipe.text.append(multidegree_table(mdv))

        with pipe.stage("critical_ideal"):
            if projective:
                E = conditional_ed_ideal_projective(setup, limits=limits)
            else:
                E = conditional_ed_ideal_affine(setup, limits=limits)
        pipe.put("critical_ideal", render_ideal(E, limits=limits))

        with pipe.stage("data_locus"):
            DL = data_locus_ideal(E, limits=limits)
        pipe.put("data_locus", render_ideal(DL, limits=limits))

        with pipe.stage("degrees"):
            res = conditional_ed_degree(setup, mdv, conormal=W, sample=False,
                                        seed=seed, limits=limits)
        pipe.check("diagonal", res.diagonal_ok)
        degrees = {"deg_DL": res.deg_DL, "sum_delta": res.sum_delta,
                   "edd": res.edd}

        param_polys = None
        if param:
            with pipe.stage("parametrization"):
                _, phi = load_parametrization(param[0], fld)
                _, psi = load_parametrization(param[1], fld)
                param_polys = (phi, psi)
                corr = param_ed_correspondence(
                    phi, psi, quad_form=setup.quad_form, seed=seed,
                    limits=limits)
                image = correspondence_image_ideal(corr, setup,
                                                   limits=limits)
            pipe.put("correspondence_image", render_ideal(image,
                                                          limits=limits))
            same = radical_contains(image, E, limits=limits) and \
                radical_contains(E, image, limits=limits)
            pipe.check("parametrization_consistent", same)

        fiber = None
        sampled = None
        if not no_sample and (param_polys or fld.characteristic):
            with pipe.stage("fiber"):
                try:
                    u = sample_data_point(setup, param_polys, seed,
                                          ed_ideal=E, limits=limits)
                    sampled = [str(c) for c in u]
                    fiber = fiber_critical_count(setup, u, ed_ideal=E,
                                                 seed=seed, limits=limits)
                except PositiveDimensionalFiber:
                    pipe.check("ed_regularity", False)
                    fiber = None
        degrees["fiber_count"] = fiber
        if sampled is not None:
            pipe.put("data_point", sampled)
        if "ed_regularity" not in pipe.report["hypothesis_checks"]:
            pipe.check("ed_regularity", True if fiber is not None else None)

        if not projective and fiber is not None:
            degrees["edd"] = fiber
        pipe.put("degrees", degrees)
        if res.edd is not None and fiber is not None:
            pipe.check("ratio_fiber_agreement", res.edd == fiber)
        else:
            pipe.check("ratio_fiber_agreement", None)

        if with_defects:
            with pipe.stage("defects"):
                rep = defect_pair(pair, seed=seed,
                                  conormal=W, limits=limits)
            pipe.check("dual_regularity", rep.dual_regular)
        else:
            pipe.check("dual_regularity", None)

        pipe.text.append(
            f"deg(data locus) {degrees['deg_DL']}, "
            f"multidegree sum {degrees['sum_delta']}, "
            f"EDD {degrees['edd']}, sampled fiber {fiber}")

    _run(pipe, report_path, body)


@main.command("data-locus")
@click.option("--input", "input_path", required=True, metavar="FILE")
@click.option("--field", "field_spec", default=None, metavar="SPEC")
@click.option("--projective/--affine", "projective_flag", default=None)
@_common
def data_locus(input_path, field_spec, projective_flag, report_path, seed,
               max_pairs, max_degree, max_seconds, jobs):
    """Defining ideal of the conditional data locus."""
    _check_jobs(jobs)
    pipe = Pipeline("data-locus", _inputs(input_path), seed=seed, jobs=jobs,
                    field=field_spec)

    def body():
        limits = _limits(max_pairs, max_degree, max_seconds)
        with pipe.stage("load"):
            pair = _load_pair_for_model(
                input_path, projective_flag is True,
                projective_flag is False, field_spec, limits)
            setup = EDSetup(pair)
        pipe.note_field(pair.ring.coefficient_field)
        with pipe.stage("critical_ideal"):
            if setup.model is EDModel.PROJECTIVE:
                E = conditional_ed_ideal_projective(setup, limits=limits)
            else:
                E = conditional_ed_ideal_affine(setup, limits=limits)
        with pipe.stage("data_locus"):
            DL = data_locus_ideal(E, limits=limits)
        with pipe.stage("dimension"):
            h = hilbert_dim_degree(DL, homogenize=not DL.is_homogeneous(),
                                   limits=limits)
        pipe.put("data_locus", render_ideal(DL, limits=limits))
        pipe.put("krull_dimension", h.krull_dimension)
        pipe.put("degree", h.degree)
        pipe.text.extend(render_polynomial(g) for g in DL.generators)

    _run(pipe, report_path, body)


# ---------------------------------------------------------------------------
# closed-form formulas


@main.group()
def formulas() -> None:
    """Closed-form degrees, defects, and conversions."""


@formulas.command()
@click.option("--rows", "M", type=int, required=True,
              help="Projective dimension of the row factor.")
@click.option("--cols", "N", type=int, required=True,
              help="Projective dimension of the column factor.")
@click.option("--rank", "r", type=int, required=True)
@click.option("--flavor", type=click.Choice(["general", "symmetric",
                                             "skew"]),
              default="general", show_default=True)
@click.option("--row-span", "l1", type=int, default=None,
              help="Row-span slice dimension (with --col-span).")
@click.option("--col-span", "l2", type=int, default=None)
@click.option("--report", "report_path", default=None, metavar="PATH")
def determinantal(M, N, r, flavor, l1, l2, report_path):
    """Codimension, degree, and defect of a bounded-rank locus."""
    pipe = Pipeline("formulas determinantal", {}, M=M, N=N, r=r,
                    flavor=flavor)

    def body():
        spec = DeterminantalSpec(M, N, r, MatrixFlavor[flavor.upper()])
        inv = determinantal_invariants(spec)
        pipe.put("codim", inv.codim)
        pipe.put("degree", inv.degree)
        pipe.put("defect", inv.defect)
        pipe.text.append(f"codim {inv.codim}, degree {inv.degree}, "
                         f"defect {inv.defect}")
        if (l1 is None) != (l2 is None):
            raise InputError("--row-span and --col-span come together")
        if l1 is not None:
            prof = determinantal_relative_defect(spec, l1, l2)
            if prof is None:
                pipe.put("relative", "empty")
                pipe.text.append("relative dual: empty (slice below rank)")
            else:
                pipe.put("relative", {"defect": prof.defect,
                                      "codim_in_dual": prof.codim_in_dual,
                                      "full_dual": prof.full_dual})
                pipe.text.append(
                    f"relative defect {prof.defect}, codim in dual "
                    f"{prof.codim_in_dual}, fills dual {prof.full_dual}")

    _run(pipe, report_path, body)


@formulas.command()
@click.option("--dims", required=True, metavar="N1,N2,..",
              help="Projective dimensions of the product factors.")
@click.option("--codims", required=True, metavar="C1,C2,..",
              help="Slice codimension inside each factor.")
@click.option("--report", "report_path", default=None, metavar="PATH")
def kalman(dims, codims, report_path):
    """Data-locus degree factor for a sliced product of projective
    spaces."""
    pipe = Pipeline("formulas kalman", {}, dims=dims, codims=codims)

    def body():
        value = kalman_degree(_int_list(dims), _int_list(codims))
        pipe.put("degree", value)
        pipe.text.append(str(value))

    _run(pipe, report_path, body)


@formulas.command("ci-degree")
@click.option("--deg-z", type=int, required=True,
              help="Degree of the sliced subvariety Z.")
@click.option("--cut", type=int, required=True,
              help="Dimension of Z (slice depth from X).")
@click.option("--degrees", required=True, metavar="D1,D2,..",
              help="Degrees of the complete-intersection equations.")
@click.option("--report", "report_path", default=None, metavar="PATH")
def ci_degree(deg_z, cut, degrees, report_path):
    """Conditional nearest-point degree sum for a generic complete
    intersection."""
    pipe = Pipeline("formulas ci-degree", {}, deg_z=deg_z, cut=cut,
                    degrees=degrees)

    def body():
        value = ci_conditional_degree(deg_z, cut, _int_list(degrees))
        pipe.put("degree", value)
        pipe.text.append(str(value))

    _run(pipe, report_path, body)


@formulas.command()
@click.option("--dim", type=int, required=True)
@click.option("--chern", "chern_spec", required=True, metavar="C0,..,CN",
              help="Chern degrees of the tangent bundle, degree first.")
@click.option("--report", "report_path", default=None, metavar="PATH")
def chern(dim, chern_spec, report_path):
    """Multidegrees of the classical conormal from Chern degrees."""
    pipe = Pipeline("formulas chern", {}, dim=dim, chern=chern_spec)

    def body():
        values = chern_to_multidegrees(ChernInput(dim, _int_list(chern_spec)))
        pipe.put("multidegrees", list(values))
        pipe.text.append(" ".join(str(v) for v in values))

    _run(pipe, report_path, body)


@formulas.command("polar-sum")
@click.option("--deg-y", type=int, required=True,
              help="Degree of the slicing complete intersection.")
@click.option("--cut", type=int, required=True, help="Slice codimension.")
@click.option("--defect", type=int, required=True,
              help="Dual defect of the unsliced variety.")
@click.option("--delta", required=True, metavar="D0,..,DN",
              help="Full multidegree vector of the unsliced variety.")
@click.option("--report", "report_path", default=None, metavar="PATH")
def polar_sum(deg_y, cut, defect, delta, report_path):
    """Data-locus degree from a multidegree tail sum."""
    pipe = Pipeline("formulas polar-sum", {}, deg_y=deg_y, cut=cut,
                    defect=defect, delta=delta)

    def body():
        value = data_locus_degree_from_multidegrees(
            deg_y, cut, defect, _int_list(delta))
        pipe.put("degree", value)
        pipe.text.append(str(value))

    _run(pipe, report_path, body)


# ---------------------------------------------------------------------------
# acceptance harness


@main.command("verify-suite")
@click.option("--tests-dir", default="tests", show_default=True,
              metavar="DIR", help="Directory holding the acceptance suite.")
@click.option("--pytest-args", default="", metavar="ARGS",
              help="Extra arguments forwarded to pytest.")
def verify_suite(tests_dir, pytest_args):
    """Run the acceptance battery; exit 0 only when everything passes."""
    try:
        import pytest
    except ImportError:
        click.echo("input error: pytest is not installed", err=True)
        sys.exit(4)
    target = os.path.join(tests_dir, "test_acceptance.py")
    if not os.path.exists(target):
        click.echo(f"input error: no acceptance suite at {target}", err=True)
        sys.exit(4)
    args = [target, "-q"] + [a for a in pytest_args.split() if a]
    rc = pytest.main(args)
    sys.exit(0 if rc == 0 else 2)


if __name__ == "__main__":
    main()
