"""Compound-growth capacity projection."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .dataset import PanelDataset
from .errors import InsufficientRows, ValidationError


@dataclass(frozen=True)
class GrowthEstimate:
    annual_rate: float
    n_intervals: int


@dataclass(frozen=True)
class ProjectionCurve:
    base_year: int
    base_tf: float
    annual_rate: float
    points: tuple[tuple[int, float], ...]
    scenario: str = ""

    @property
    def final(self) -> tuple[int, float]:
        return self.points[-1]

    def value_at(self, year: int) -> float:
        return self.base_tf * (1.0 + self.annual_rate) ** (year - self.base_year)


def _ratios(series: Sequence[tuple[int, float]]) -> list[float]:
    out = []
    for (y0, v0), (y1, v1) in zip(series, series[1:]):
        # year-over-year only; a gap year breaks the chain
        if y1 - y0 != 1 or v0 <= 0 or v1 <= 0:
            continue
        out.append(v1 / v0)
    return out


def estimate_growth(data) -> GrowthEstimate:
    """Pooled geometric-mean year-over-year growth of deployed capacity.

    ``data`` may be a :class:`PanelDataset` (TeraFLOPS per institution), a
    mapping of label to a yearly series, or a single yearly series of values.
    Intervals starting or ending at zero capacity are skipped.
    """
    if isinstance(data, PanelDataset):
        chains = [data.series(inst, "teraflops") for inst in data.institutions()]
    elif isinstance(data, Mapping):
        chains = [list(enumerate(s)) for s in data.values()]
    else:
        chains = [list(enumerate(data))]

    log_ratios = [math.log(r) for chain in chains for r in _ratios(chain)]
    if not log_ratios:
        raise InsufficientRows("no consecutive-year capacity observations to estimate growth from")
    return GrowthEstimate(math.exp(math.fsum(log_ratios) / len(log_ratios)) - 1.0, len(log_ratios))


def project_capacity(base_tf: float, base_year: int, rate: float, horizon: int,
                     scenario: str = "") -> ProjectionCurve:
    """Yearly points base_tf * (1 + rate)^t for t = 0..horizon."""
    if horizon < 0:
        raise ValidationError(f"horizon must be >= 0, got {horizon}")
    if base_tf < 0:
        raise ValidationError(f"base capacity must be >= 0, got {base_tf}")
    if not rate > -1:
        raise ValidationError(f"growth rate must exceed -1, got {rate}")
    points = tuple((base_year + t, base_tf * (1.0 + rate) ** t) for t in range(horizon + 1))
    return ProjectionCurve(base_year, base_tf, rate, points, scenario)


def curves_to_csv(curves: Iterable[ProjectionCurve]) -> str:
    """Plot-ready ``year,modeled_tf[,scenario]`` text."""
    curves = list(curves)
    with_scenario = any(c.scenario for c in curves)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["year", "modeled_tf"] + (["scenario"] if with_scenario else []))
    for c in curves:
        for year, tf in c.points:
            writer.writerow([year, repr(tf)] + ([c.scenario] if with_scenario else []))
    return buf.getvalue()
