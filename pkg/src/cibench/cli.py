"""Command-line entry point (``cibench``).

Every command builds a :class:`~cibench.report.Report` and renders it in the
requested format to ``--output`` (atomically) or stdout. Failures print a JSON
error record on stderr and exit with 2 (validation), 3 (statistical
degeneracy) or 4 (I/O).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import benchmark as bm
from .dataset import IngestConfig, PanelDataset, SURVEY_HEADER, load_panel, load_survey
from .errors import CIBenchError, DegeneracyError, ValidationError
from .production import COMBINED, correlate_all, fit_suite, translate
from .projection import estimate_growth, project_capacity
from .report import (
    FORMATS,
    Report,
    coefficients_section,
    correlation_section,
    importance_sections,
    panel_summary_section,
    positioning_section,
    projection_section,
    regression_section,
    render_report,
    sizing_section,
    translation_section,
)

COMMANDS = ("validate", "correlate", "fit", "relimp", "benchmark-fit", "benchmark-size",
            "position", "project", "report")
EXIT_OK, EXIT_VALIDATION, EXIT_DEGENERATE, EXIT_IO = 0, 2, 3, 4


# -- input helpers --------------------------------------------------------------

def _config(args) -> IngestConfig:
    return IngestConfig(median_compensation=args.median_comp, strict=args.strict)


def _is_survey(path) -> bool:
    with open(path, encoding="utf-8-sig") as fh:
        header = {c.strip() for c in fh.readline().split(",")}
    return "fte_count" in header and set(SURVEY_HEADER) <= header


def _load_any(args) -> PanelDataset:
    if _is_survey(args.input):
        return load_survey(args.input, _config(args), args.inventory)
    return load_panel(args.input, _config(args))


def _require_input(args):
    if not args.input:
        raise ValidationError(f"{args.command} requires --input")


def _latest_per_institution(panel: PanelDataset):
    """One snapshot row per institution: its most recent year."""
    return [panel.for_institution(inst)[-1] for inst in panel.institutions()]


def _coefficients(args, basis: str, survey=None) -> bm.BenchmarkCoefficients:
    if args.coeff_file:
        coeffs = bm.read_coefficients(args.coeff_file)
        if coeffs.basis != basis:
            raise bm.BasisMismatch(f"{args.coeff_file} holds {coeffs.basis} coefficients, not {basis}")
    elif args.preset or survey is None:
        coeffs = bm.preset(args.preset or "paper-2025", basis)
    else:
        coeffs = bm.estimate_coefficients(survey, basis)
    return coeffs.with_fraction(args.budget_fraction)


def _scopes(args, panel: PanelDataset) -> list[str]:
    if args.scope == "all":
        return [COMBINED] + panel.institutions()
    return [args.scope]


# -- commands -------------------------------------------------------------------

def cmd_validate(args) -> Report:
    _require_input(args)
    panel = _load_any(args)
    return Report("Validation", [panel_summary_section(panel)])


def cmd_correlate(args) -> Report:
    _require_input(args)
    tf, sal = correlate_all(load_panel(args.input, _config(args)))
    return Report("Correlation Analysis", [correlation_section(tf), correlation_section(sal)])


def cmd_fit(args) -> Report:
    _require_input(args)
    panel = load_panel(args.input, _config(args))
    report = Report("Production Function Models")
    for scope in _scopes(args, panel):
        suite = fit_suite(panel, scope)
        report.add(regression_section(suite)).add(translation_section(translate(suite)))
    return report


def cmd_relimp(args) -> Report:
    _require_input(args)
    panel = load_panel(args.input, _config(args))
    suites = [fit_suite(panel, s) for s in _scopes(args, panel)]
    return Report("Relative Importance", importance_sections(suites))


def cmd_benchmark_fit(args) -> Report:
    _require_input(args)
    basis = bm.canonical_basis(args.basis)
    survey = _latest_per_institution(_load_any(args))
    fraction = bm.DEFAULT_SALARY_BUDGET_FRACTION if args.budget_fraction is None else args.budget_fraction
    coeffs = bm.estimate_coefficients(survey, basis, fraction)
    if args.coeff_file:
        _atomic_write(args.coeff_file, bm.dumps_coefficients(coeffs))
    return Report("Benchmark Coefficients", [coefficients_section(coeffs)])


def cmd_benchmark_size(args) -> Report:
    basis = bm.canonical_basis(args.basis)
    coeffs = _coefficients(args, basis)
    results = bm.sizing_table(coeffs, args.value)
    return Report("Investment Sizing", [coefficients_section(coeffs), sizing_section(results)])


def cmd_position(args) -> Report:
    _require_input(args)
    basis = bm.canonical_basis(args.basis)
    survey = _latest_per_institution(_load_any(args))
    coeffs = _coefficients(args, basis, survey)
    return Report("Institutional Positioning",
                  [coefficients_section(coeffs), positioning_section(bm.position_institutions(survey, coeffs))])


def cmd_project(args) -> Report:
    growth = None
    if args.rate is not None:
        rate = args.rate
    elif args.input:
        growth = estimate_growth(load_panel(args.input, _config(args)))
        rate = growth.annual_rate
    else:
        raise ValidationError("project needs --rate or an --input panel to estimate growth from")
    if not args.value:
        raise ValidationError("project needs at least one --value output level to size the base capacity")
    basis = bm.canonical_basis(args.basis)
    coeffs = _coefficients(args, basis)
    curves = [
        project_capacity(bm.size_investment(coeffs, v).modeled_tf, args.base_year, rate, args.horizon,
                         scenario=f"{basis}={v:g}" if len(args.value) > 1 else "")
        for v in args.value
    ]
    return Report("", [projection_section(curves, growth)])


def cmd_report(args) -> Report:
    _require_input(args)
    panel = load_panel(args.input, _config(args))
    report = Report("Production Function Analysis", [panel_summary_section(panel)])
    tf, sal = correlate_all(panel)
    report.add(correlation_section(tf)).add(correlation_section(sal))
    suites, failures = [], []
    for scope in [COMBINED] + panel.institutions():
        try:
            suites.append(fit_suite(panel, scope))
        except DegeneracyError as exc:
            if scope == COMBINED:
                raise
            failures.append(f"{scope}: {type(exc).__name__}: {exc}")
    for suite in suites:
        report.add(regression_section(suite)).add(translation_section(translate(suite)))
    for section in importance_sections(suites):
        report.add(section)
    if failures:
        report.sections[0].notes.extend(f"model not fitted for {f}" for f in failures)
    return report


HANDLERS = {
    "validate": cmd_validate,
    "correlate": cmd_correlate,
    "fit": cmd_fit,
    "relimp": cmd_relimp,
    "benchmark-fit": cmd_benchmark_fit,
    "benchmark-size": cmd_benchmark_size,
    "position": cmd_position,
    "project": cmd_project,
    "report": cmd_report,
}


# -- plumbing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="panel or survey CSV")
    common.add_argument("--inventory", help="device inventory CSV for survey inputs")
    common.add_argument("--scope", default=COMBINED, help="'combined', an institution label, or 'all'")
    common.add_argument("--basis", default="herd", choices=["herd", "phd", "pub"])
    common.add_argument("--value", type=float, action="append", help="output level (repeatable)")
    common.add_argument("--preset", help="named coefficient preset, e.g. paper-2025")
    common.add_argument("--coeff-file", help="coefficient key-value file")
    common.add_argument("--median-comp", type=float, default=90_000.0, help="USD per FTE")
    common.add_argument("--budget-fraction", type=float, help="salary share of total budget")
    common.add_argument("--rate", type=float, help="annual capacity growth rate")
    common.add_argument("--base-year", type=int, default=2025)
    common.add_argument("--horizon", type=int, default=5)
    common.add_argument("--format", default="markdown", choices=FORMATS)
    common.add_argument("--output", help="write here instead of stdout")
    common.add_argument("--strict", action="store_true", help="abort on the first invalid row")

    parser = argparse.ArgumentParser(prog="cibench", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _atomic_write(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fail(command, exc, code) -> int:
    record = {"error": type(exc).__name__, "command": command, "message": str(exc), "exit_code": code}
    print(json.dumps(record), file=sys.stderr)
    return code


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = render_report(HANDLERS[args.command](args), args.format)
        if args.output:
            _atomic_write(args.output, text)
        else:
            sys.stdout.write(text)
    except ValidationError as exc:
        return _fail(args.command, exc, EXIT_VALIDATION)
    except DegeneracyError as exc:
        return _fail(args.command, exc, EXIT_DEGENERATE)
    except CIBenchError as exc:
        return _fail(args.command, exc, EXIT_VALIDATION)
    except OSError as exc:
        return _fail(args.command, exc, EXIT_IO)
    except ValueError as exc:
        return _fail(args.command, exc, EXIT_VALIDATION)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
