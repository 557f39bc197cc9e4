"""Production-function analyses over a panel.

Outputs are regressed on two inputs, capacity (TeraFLOPS) and RCD salaries
($M), either for one institution or for all institutions pooled.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dataset import PanelDataset
from .errors import DegenerateSample, InsufficientRows, UnknownScope
from .relimp import RelativeImportance, lmg
from .stats import CorrelationMatrix, RegressionFit, RegressionSpec, fit_ols, kendall_tau

COMBINED = "combined"
INPUTS = ("teraflops", "salaries")
OUTPUTS = ("publications", "doctorates", "herd", "hi_impact_pubs")
OUTPUT_LABELS = {
    "publications": "Publications",
    "doctorates": "Earned Doctorates",
    "herd": "HERD Expenditures",
    "hi_impact_pubs": "High Impact Publications",
}
INPUT_LABELS = {"teraflops": "TF", "salaries": "Salaries"}

MIN_CORRELATION_ROWS = 3
MIN_SUITE_ROWS = 4


def correlate(panel: PanelDataset, input_name: str, outputs: Sequence[str] = OUTPUTS) -> CorrelationMatrix:
    """Per-institution Kendall tau between one input and each output."""
    institutions = tuple(panel.institutions())
    entries = {}
    for output in outputs:
        for inst in institutions:
            rows = [r for r in panel.for_institution(inst) if r.has((input_name, output))]
            tau = None
            if len(rows) >= MIN_CORRELATION_ROWS:
                try:
                    tau = kendall_tau([r.get(input_name) for r in rows], [r.get(output) for r in rows])
                except DegenerateSample:
                    tau = None
            entries[(output, inst)] = tau
    return CorrelationMatrix(input_name, tuple(outputs), institutions, entries)


def correlate_all(panel: PanelDataset, outputs: Sequence[str] = OUTPUTS) -> tuple[CorrelationMatrix, CorrelationMatrix]:
    return correlate(panel, "teraflops", outputs), correlate(panel, "salaries", outputs)


@dataclass(frozen=True)
class ModelSuite:
    scope: str
    outputs: tuple[str, ...]
    fits: dict
    importances: dict

    def __getitem__(self, output: str) -> RegressionFit:
        return self.fits[output]

    @property
    def n_obs(self) -> int:
        return next(iter(self.fits.values())).n_obs


def scope_rows(panel: PanelDataset, scope: str, outputs: Sequence[str] = OUTPUTS, years=None):
    """Complete rows (both inputs and every output present) for a scope."""
    if scope != COMBINED and scope not in panel.institutions():
        raise UnknownScope(f"no institution {scope!r} in panel (known: {', '.join(panel.institutions())})")
    data = panel.subset(None if scope == COMBINED else scope, years)
    return data.complete(INPUTS + tuple(outputs))


def regression_spec(rows, output: str) -> RegressionSpec:
    x = np.array([[r.teraflops, r.salaries] for r in rows], dtype=float).reshape(len(rows), 2)
    y = np.array([r.get(output) for r in rows], dtype=float)
    return RegressionSpec(output, INPUTS, x, y)


def fit_suite(
    panel: PanelDataset,
    scope: str = COMBINED,
    outputs: Sequence[str] = OUTPUTS,
    years: tuple[int, int] | None = None,
) -> ModelSuite:
    """Fit every output on [teraflops, salaries] for one scope.

    ``scope`` is an institution label or ``"combined"`` (all rows pooled, no
    institution effects). Rows missing any input or output are dropped before
    fitting so all fits in the suite share one sample. ``years`` optionally
    restricts to an inclusive year range.
    """
    outputs = tuple(outputs)
    rows = scope_rows(panel, scope, outputs, years)
    if len(rows) < MIN_SUITE_ROWS:
        raise InsufficientRows(f"scope {scope!r} has {len(rows)} complete rows; need {MIN_SUITE_ROWS}")
    fits, importances = {}, {}
    for output in outputs:
        spec = regression_spec(rows, output)
        fits[output] = fit_ols(spec)
        importances[output] = lmg(spec)
    return ModelSuite(scope, outputs, fits, importances)


def fit_all_suites(panel: PanelDataset, outputs: Sequence[str] = OUTPUTS, years=None) -> list[ModelSuite]:
    return [fit_suite(panel, s, outputs, years) for s in [COMBINED] + panel.institutions()]


@dataclass(frozen=True)
class TranslationEntry:
    effect_per_100tf: float
    effect_per_100k_salary: float
    adj_r2: float


@dataclass(frozen=True)
class TranslationTable:
    scope: str
    entries: dict

    def __getitem__(self, output: str) -> TranslationEntry:
        return self.entries[output]


def translate(suite: ModelSuite) -> TranslationTable:
    """Express coefficients as effects per 100 TF and per $100k of salaries."""
    entries = {}
    for output in suite.outputs:
        fit = suite.fits[output]
        entries[output] = TranslationEntry(
            effect_per_100tf=100.0 * fit["teraflops"].estimate,
            # salaries are modeled in $M, so $100k is a tenth of a unit
            effect_per_100k_salary=fit["salaries"].estimate / 10.0,
            adj_r2=fit.adj_r_squared,
        )
    return TranslationTable(suite.scope, entries)


def importance_table(suites: Sequence[ModelSuite]) -> dict[str, dict[str, RelativeImportance]]:
    """output -> scope -> RelativeImportance, for side-by-side reporting."""
    table: dict[str, dict[str, RelativeImportance]] = {}
    for suite in suites:
        for output, imp in suite.importances.items():
            table.setdefault(output, {})[suite.scope] = imp
    return table
