"""Structured reports and their markdown / csv / json renderings.

Report cells keep full-precision values; rounding happens only in
:func:`render_report`.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import asdict, dataclass, field
from typing import Sequence

from .benchmark import BenchmarkCoefficients, PositioningReport, SizingResult
from .dataset import PanelDataset
from .errors import UnsupportedFormat
from .production import INPUT_LABELS, OUTPUT_LABELS, ModelSuite, TranslationTable
from .projection import GrowthEstimate, ProjectionCurve
from .stats import CorrelationMatrix, significance_stars

FORMATS = ("markdown", "csv", "json")
STAR_NOTE = "***p<0.001; **p<0.01; *p<0.05"
DEFAULT_PRECISION = 3
MONEY_PRECISION = 2


@dataclass
class Cell:
    """One table cell.

    ``kind`` picks the display rule: text, coef (with stars from ``p_value``),
    se, stat, effect, money, pct, ratio, int.
    """

    value: float | int | str | None
    kind: str = "text"
    p_value: float | None = None


@dataclass
class Section:
    title: str
    columns: list[str]
    rows: list[list[Cell]]
    notes: list[str] = field(default_factory=list)


@dataclass
class Report:
    title: str = ""
    sections: list[Section] = field(default_factory=list)

    def add(self, section: Section) -> "Report":
        self.sections.append(section)
        return self

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        sections = [
            Section(s["title"], list(s["columns"]),
                    [[Cell(c["value"], c["kind"], c.get("p_value")) for c in row] for row in s["rows"]],
                    list(s.get("notes", [])))
            for s in data.get("sections", [])
        ]
        return cls(data.get("title", ""), sections)


def display_precision() -> int:
    raw = os.environ.get("CIBENCH_PRECISION")
    if raw is None or raw.strip() == "":
        return DEFAULT_PRECISION
    value = int(raw)
    if not 0 <= value <= 12:
        raise ValueError(f"CIBENCH_PRECISION must be between 0 and 12, got {value}")
    return value


def format_cell(cell: Cell, precision: int = DEFAULT_PRECISION, thousands: bool = True) -> str:
    v = cell.value
    if v is None:
        return "n/a" if thousands else ""
    kind = cell.kind
    if kind == "text":
        return str(v)
    sep = "," if thousands else ""
    if kind == "coef":
        stars = significance_stars(cell.p_value) if cell.p_value is not None else ""
        return f"{v:.{precision}f}{stars}"
    if kind == "se":
        return f"({v:.{precision}f})"
    if kind == "stat":
        return f"{v:.{precision}f}"
    if kind in ("effect", "ratio"):
        return f"{v:{sep}.{MONEY_PRECISION}f}"
    if kind == "money":
        return f"${v:{sep}.{MONEY_PRECISION}f}" if thousands else f"{v:.{MONEY_PRECISION}f}"
    if kind == "pct":
        return f"{100 * v:.{precision}f}%"
    if kind == "int":
        return f"{round(v):{sep}d}"
    raise ValueError(f"unknown cell kind {kind!r}")


def _render_markdown(report: Report, precision: int) -> str:
    out = []
    if report.title:
        out.append(f"# {report.title}\n")
    for s in report.sections:
        out.append(f"## {s.title}\n")
        out.append("| " + " | ".join(s.columns) + " |")
        out.append("|" + "|".join([":---"] + ["---:"] * (len(s.columns) - 1)) + "|")
        for row in s.rows:
            out.append("| " + " | ".join(format_cell(c, precision) for c in row) + " |")
        for note in s.notes:
            out.append(f"\n{note}")
        out.append("")
    return "\n".join(out) + ("\n" if out else "")


def _render_csv(report: Report, precision: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    labelled = len(report.sections) > 1
    for i, s in enumerate(report.sections):
        if i:
            buf.write("\n")
        if labelled:
            buf.write(f"# {s.title}\n")
        writer.writerow(s.columns)
        for row in s.rows:
            writer.writerow([format_cell(c, precision, thousands=False) for c in row])
    return buf.getvalue()


def _render_json(report: Report, precision: int) -> str:
    data = {
        "title": report.title,
        "sections": [
            {
                "title": s.title,
                "columns": s.columns,
                "rows": [
                    [{"value": c.value, "kind": c.kind, "p_value": c.p_value,
                      "display": format_cell(c, precision)} for c in row]
                    for row in s.rows
                ],
                "notes": s.notes,
            }
            for s in report.sections
        ],
    }
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


_RENDERERS = {"markdown": _render_markdown, "csv": _render_csv, "json": _render_json}


def render_report(report: Report, fmt: str = "markdown", precision: int | None = None) -> str:
    try:
        renderer = _RENDERERS[fmt]
    except KeyError:
        raise UnsupportedFormat(f"unsupported format {fmt!r}; expected one of {', '.join(FORMATS)}") from None
    return renderer(report, display_precision() if precision is None else precision)


# -- section builders -----------------------------------------------------------

def _scope_label(scope: str) -> str:
    return "Combined" if scope == "combined" else scope


def regression_section(suite: ModelSuite) -> Section:
    """Estimate-over-(SE) layout with R-squared rows, one column per output."""
    fits = [suite.fits[o] for o in suite.outputs]
    rows = []
    for name, label in [("(Intercept)", "(Intercept)")] + [(k, v) for k, v in INPUT_LABELS.items()]:
        coefs = [f[name] for f in fits]
        rows.append([Cell(label)] + [Cell(c.estimate, "coef", c.p_value) for c in coefs])
        rows.append([Cell("")] + [Cell(c.standard_error, "se") for c in coefs])
    rows.append([Cell("R^2")] + [Cell(f.r_squared, "stat") for f in fits])
    rows.append([Cell("Adj. R^2")] + [Cell(f.adj_r_squared, "stat") for f in fits])
    rows.append([Cell("Num. obs.")] + [Cell(f.n_obs, "int") for f in fits])
    return Section(
        f"Production Function Models - {_scope_label(suite.scope)}",
        [""] + [OUTPUT_LABELS.get(o, o) for o in suite.outputs],
        rows,
        [STAR_NOTE],
    )


def translation_section(table: TranslationTable) -> Section:
    outputs = list(table.entries)
    e = [table.entries[o] for o in outputs]
    return Section(
        f"Effects per Unit Investment - {_scope_label(table.scope)}",
        [""] + [OUTPUT_LABELS.get(o, o) for o in outputs],
        [
            [Cell("100 TeraFLOPS")] + [Cell(x.effect_per_100tf, "effect") for x in e],
            [Cell("$100k Salaries")] + [Cell(x.effect_per_100k_salary, "effect") for x in e],
            [Cell("Adj. R^2")] + [Cell(x.adj_r2, "stat") for x in e],
        ],
    )


def correlation_section(matrix: CorrelationMatrix) -> Section:
    label = "TF" if matrix.input_name == "teraflops" else "Salary Costs"
    return Section(
        f"Kendall Correlation - {label} vs Outputs, by Institution",
        [""] + list(matrix.institutions),
        [[Cell(OUTPUT_LABELS.get(o, o))] + [Cell(matrix.entries[(o, i)], "stat") for i in matrix.institutions]
         for o in matrix.outputs],
    )


def importance_sections(suites: Sequence[ModelSuite]) -> list[Section]:
    outputs = list(dict.fromkeys(o for s in suites for o in s.outputs))
    sections = []
    for output in outputs:
        have = [s for s in suites if output in s.importances]
        imps = [s.importances[output] for s in have]
        sections.append(Section(
            f"Relative Importance (lmg) - {OUTPUT_LABELS.get(output, output)}",
            [""] + [_scope_label(s.scope) for s in have],
            [
                [Cell("TeraFLOPS")] + [Cell(i["teraflops"], "stat") for i in imps],
                [Cell("RCD Salaries")] + [Cell(i["salaries"], "stat") for i in imps],
                [Cell("R^2")] + [Cell(i.total_r2, "stat") for i in imps],
            ],
        ))
    return sections


_BASIS_HEADINGS = {
    "herd": ("R&D Exp ($M)", "int"),
    "doctorates": ("Earned Doctorates", "int"),
    "publications": ("Publications", "int"),
}


def coefficients_section(coeffs: BenchmarkCoefficients) -> Section:
    salary = Cell(coeffs.salary_per_unit, "pct" if coeffs.basis == "herd" else "effect")
    return Section(
        f"Benchmark Coefficients - {coeffs.basis}",
        ["Coefficient", "Value"],
        [
            [Cell("basis"), Cell(coeffs.basis)],
            [Cell("TeraFLOPS per unit"), Cell(coeffs.tf_per_unit, "stat")],
            [Cell("salary per unit" + (" (share of R&D)" if coeffs.basis == "herd" else " (USD)")), salary],
            [Cell("salary budget fraction"), Cell(coeffs.salary_budget_fraction, "stat")],
            [Cell("institutions"), Cell(coeffs.n_institutions, "int")],
        ],
    )


def sizing_section(results: Sequence[SizingResult]) -> Section:
    basis = results[0].basis if results else "herd"
    heading, kind = _BASIS_HEADINGS[basis]
    return Section(
        f"Center Investment Benchmarks - {basis}",
        [heading, "Modeled TF", "Modeled RCD Salaries ($M)", "Modeled Total Budget ($M)"],
        [
            [Cell(r.basis_value, kind), Cell(r.modeled_tf, "int"),
             Cell(r.modeled_salaries, "money"), Cell(r.modeled_budget, "money")]
            for r in results
        ],
    )


def positioning_section(report: PositioningReport) -> Section:
    heading, kind = _BASIS_HEADINGS[report.basis]
    return Section(
        f"Actual vs Predicted - {report.basis}",
        ["Institution", heading, "Actual TF", "Predicted TF", "TF ratio",
         "Actual Salaries ($M)", "Predicted Salaries ($M)", "Salary ratio"],
        [
            [Cell(p.institution), Cell(p.basis_value, kind), Cell(p.actual_tf, "int"), Cell(p.predicted_tf, "int"),
             Cell(p.tf_ratio, "ratio"), Cell(p.actual_salaries, "money"), Cell(p.predicted_salaries, "money"),
             Cell(p.salary_ratio, "ratio")]
            for p in report
        ],
    )


def projection_section(curves: Sequence[ProjectionCurve], growth: GrowthEstimate | None = None) -> Section:
    with_scenario = any(c.scenario for c in curves)
    rows = [
        [Cell(year, "text"), Cell(tf, "int")] + ([Cell(c.scenario)] if with_scenario else [])
        for c in curves
        for year, tf in c.points
    ]
    notes = []
    if growth is not None:
        notes.append(f"annual growth rate {growth.annual_rate:.4f} from {growth.n_intervals} year-over-year intervals")
    return Section("Capacity Projection", ["year", "modeled_tf"] + (["scenario"] if with_scenario else []),
                   rows, notes)


def panel_summary_section(panel: PanelDataset) -> Section:
    rows = []
    for inst in panel.institutions():
        r = panel.for_institution(inst)
        rows.append([Cell(inst), Cell(len(r), "int"), Cell(r[0].year, "text"), Cell(r[-1].year, "text")])
    notes = [f"dropped line {d.line}: {d.reason}" for d in panel.dropped]
    return Section("Panel Summary", ["Institution", "Rows", "First year", "Last year"], rows, notes)
