"""Seeded synthetic panels and surveys with known generating parameters."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import ObservationRow, PanelDataset


@dataclass(frozen=True)
class OutputModel:
    """output = intercept + tf * teraflops + salaries * salaries_musd + N(0, noise_sd^2)"""

    intercept: float
    tf: float
    salaries: float
    noise_sd: float


# magnitudes in the range of a pooled multi-institution fit
DEFAULT_MODELS = {
    "publications": OutputModel(1934.814, 0.196, 1369.031, 400.0),
    "doctorates": OutputModel(301.258, 0.012, 78.246, 40.0),
    "herd": OutputModel(154.743, 0.030, 144.637, 40.0),
    "hi_impact_pubs": OutputModel(254.473, 0.036, 212.089, 60.0),
}
DEFAULT_LENGTHS = {"A": 15, "B": 21, "C": 17, "D": 8, "E": 25}
COUNT_OUTPUTS = ("publications", "doctorates", "hi_impact_pubs")


def generate_panel(seed: int = 2025, lengths: dict | None = None, models: dict | None = None,
                   last_year: int = 2023, prefix: str = "Institution ") -> PanelDataset:
    """Panel whose outputs follow ``models`` exactly up to Gaussian noise.

    Each institution's capacity grows geometrically toward a final level of
    2-12k TF and salary spend climbs roughly linearly to $1-4M.
    """
    rng = np.random.default_rng(seed)
    lengths = DEFAULT_LENGTHS if lengths is None else lengths
    models = DEFAULT_MODELS if models is None else models
    rows = []
    for label, n in lengths.items():
        years = np.arange(last_year - n + 1, last_year + 1)
        growth = rng.uniform(0.15, 0.35)
        final_tf = rng.uniform(2000.0, 12000.0)
        tf = final_tf / (1 + growth) ** np.arange(n - 1, -1, -1) * rng.lognormal(0.0, 0.1, n)
        final_sal = rng.uniform(1.0, 4.0)
        sal = np.linspace(rng.uniform(0.3, 0.6) * final_sal, final_sal, n) * rng.lognormal(0.0, 0.08, n)
        outputs = {}
        for name, m in models.items():
            y = m.intercept + m.tf * tf + m.salaries * sal + rng.normal(0.0, m.noise_sd, n)
            y = np.maximum(y, 0.0)
            outputs[name] = np.round(y) if name in COUNT_OUTPUTS else np.round(y, 3)
        for i, year in enumerate(years):
            rows.append(ObservationRow(
                institution=f"{prefix}{label}",
                year=int(year),
                teraflops=round(float(tf[i]), 3),
                salaries=round(float(sal[i]), 4),
                **{name: float(v[i]) for name, v in outputs.items()},
            ))
    return PanelDataset(tuple(rows), provenance=f"synthetic panel, seed={seed}")


def generate_survey(seed: int = 2025, n: int = 28, tf_per_herd: float = 11.47,
                    salary_fraction: float = 0.00294, year: int = 2023) -> PanelDataset:
    """Single-year survey whose per-institution ratios average exactly to the targets.

    Ratios are lognormally scattered and then rescaled so their arithmetic
    means hit ``tf_per_herd`` and ``salary_fraction`` (up to rounding).
    """
    rng = np.random.default_rng(seed)
    herd = np.round(rng.uniform(180.0, 2000.0, n), 1)
    tf_ratio = rng.lognormal(0.0, 0.5, n)
    tf_ratio *= tf_per_herd / tf_ratio.mean()
    sal_ratio = rng.lognormal(0.0, 0.4, n)
    sal_ratio *= salary_fraction / sal_ratio.mean()
    doctorates = np.round(herd * rng.uniform(0.5, 1.0, n))
    publications = np.round(herd * rng.uniform(6.0, 11.0, n))
    rows = [
        ObservationRow(
            institution=f"R1-{i + 1:02d}",
            year=year,
            teraflops=float(tf_ratio[i] * herd[i]),
            salaries=float(sal_ratio[i] * herd[i]),
            herd=float(herd[i]),
            doctorates=float(doctorates[i]),
            publications=float(publications[i]),
        )
        for i in range(n)
    ]
    return PanelDataset(tuple(rows), provenance=f"synthetic survey, seed={seed}")
