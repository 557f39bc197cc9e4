"""Research-computing production functions and investment benchmarks."""

from importlib import resources

from .benchmark import (
    BenchmarkCoefficients,
    PositioningReport,
    SizingResult,
    estimate_coefficients,
    position_institutions,
    preset,
    size_investment,
    sizing_table,
)
from .dataset import (
    IngestConfig,
    ObservationRow,
    PanelDataset,
    SurveyRecord,
    load_panel,
    load_survey,
    normalize_survey,
)
from .production import ModelSuite, TranslationTable, correlate_all, fit_suite, translate
from .projection import GrowthEstimate, ProjectionCurve, estimate_growth, project_capacity
from .relimp import RelativeImportance, lmg, subset_r2
from .report import Report, render_report
from .stats import (
    RegressionFit,
    RegressionSpec,
    adjusted_r2,
    fit_ols,
    kendall_tau,
    significance_stars,
    t_pvalue,
)

__version__ = "0.1.0"


def data_path(name: str):
    """Path to a bundled fixture file (``fixture_panel.csv``, ``fixture_survey.csv``, ...)."""
    return resources.files(__package__).joinpath("data", name)
