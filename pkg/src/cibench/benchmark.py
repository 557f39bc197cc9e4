"""Investment benchmarks: size capacity, salaries and budget from an output level.

Coefficients are averaged per-institution ratios of an investment quantity to
an institutional output (the *basis*). ``salary_per_unit`` is USD of salary per
basis unit; for the HERD basis the unit is itself a dollar of R&D spend, so the
coefficient is a plain fraction of expenditures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path
from statistics import fmean
from typing import Iterable, Sequence

from .dataset import ObservationRow
from .errors import BasisMismatch, InsufficientRows, ValidationError, ZeroBasis

BASES = ("herd", "doctorates", "publications")
BASIS_ALIASES = {"herd": "herd", "phd": "doctorates", "doctorates": "doctorates",
                 "pub": "publications", "publications": "publications"}
# multiply salary_per_unit * basis_value by this to get $M
_SALARY_TO_MUSD = {"herd": 1.0, "doctorates": 1e-6, "publications": 1e-6}

DEFAULT_SALARY_BUDGET_FRACTION = 0.34


def canonical_basis(name: str) -> str:
    try:
        return BASIS_ALIASES[name]
    except KeyError:
        raise BasisMismatch(f"unknown basis {name!r}; expected one of herd, phd, pub") from None


@dataclass(frozen=True)
class BenchmarkCoefficients:
    basis: str
    tf_per_unit: float
    salary_per_unit: float
    salary_budget_fraction: float = DEFAULT_SALARY_BUDGET_FRACTION
    n_institutions: int = 0

    def __post_init__(self):
        object.__setattr__(self, "basis", canonical_basis(self.basis))
        if not self.tf_per_unit > 0 or not self.salary_per_unit > 0:
            raise ValidationError("benchmark coefficients must be positive")
        if not 0 < self.salary_budget_fraction <= 1:
            raise ValidationError("salary_budget_fraction must lie in (0, 1]")

    @property
    def salary_musd_per_unit(self) -> float:
        return self.salary_per_unit * _SALARY_TO_MUSD[self.basis]

    def salary_label(self) -> str:
        if self.basis == "herd":
            return f"{100 * self.salary_per_unit:.3g}% of R&D expenditures"
        return f"${self.salary_per_unit:,.0f} per {self.basis[:-1] if self.basis.endswith('s') else self.basis}"

    def with_fraction(self, fraction: float | None) -> "BenchmarkCoefficients":
        return self if fraction is None else replace(self, salary_budget_fraction=fraction)


# Rounded 2025 survey coefficients. The HERD salary fraction keeps a third
# significant digit (0.294%) and the publication salary rate is $341, the
# value consistent with the publication sizing rows.
PRESETS = {
    "paper-2025": {
        "herd": BenchmarkCoefficients("herd", 11.47, 0.00294, n_institutions=28),
        "doctorates": BenchmarkCoefficients("doctorates", 19.65, 4696.0, n_institutions=28),
        "publications": BenchmarkCoefficients("publications", 1.34, 341.0, n_institutions=28),
    }
}

# Default output levels for each basis when sizing a whole table.
TABLE_LEVELS = {
    "herd": (1900, 1500, 1200, 1000, 850, 750, 400, 200),
    "doctorates": (800, 700, 600, 500, 400, 200),
    "publications": (20000, 14000, 10000, 6000, 3000, 1000),
}


def preset(name: str, basis: str) -> BenchmarkCoefficients:
    try:
        return PRESETS[name][canonical_basis(basis)]
    except KeyError:
        raise ValidationError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}") from None


def estimate_coefficients(survey: Iterable[ObservationRow], basis: str,
                          salary_budget_fraction: float = DEFAULT_SALARY_BUDGET_FRACTION) -> BenchmarkCoefficients:
    """Average the per-institution TF/basis and salary/basis ratios.

    This is the unweighted mean of ratios, not the ratio of totals.
    """
    basis = canonical_basis(basis)
    rows = list(survey)
    if len(rows) < 2:
        raise InsufficientRows(f"need at least 2 survey rows, got {len(rows)}")
    tf_ratios, salary_ratios = [], []
    for row in rows:
        value = row.get(basis)
        if value is None or not value > 0:
            raise ZeroBasis(f"{row.institution} {row.year}: {basis} must be positive, got {value!r}")
        tf_ratios.append(row.teraflops / value)
        salary_ratios.append(row.salaries / value / _SALARY_TO_MUSD[basis])
    return BenchmarkCoefficients(
        basis=basis,
        tf_per_unit=fmean(tf_ratios),
        salary_per_unit=fmean(salary_ratios),
        salary_budget_fraction=salary_budget_fraction,
        n_institutions=len(rows),
    )


@dataclass(frozen=True)
class SizingResult:
    basis: str
    basis_value: float
    modeled_tf: float
    modeled_salaries: float
    modeled_budget: float


def size_investment(coeffs: BenchmarkCoefficients, basis_value: float) -> SizingResult:
    if not basis_value >= 0:
        raise ValidationError(f"basis value must be >= 0, got {basis_value!r}")
    salaries = coeffs.salary_musd_per_unit * basis_value
    return SizingResult(
        basis=coeffs.basis,
        basis_value=basis_value,
        modeled_tf=coeffs.tf_per_unit * basis_value,
        modeled_salaries=salaries,
        modeled_budget=salaries / coeffs.salary_budget_fraction,
    )


def sizing_table(coeffs: BenchmarkCoefficients, levels: Sequence[float] | None = None) -> list[SizingResult]:
    levels = TABLE_LEVELS[coeffs.basis] if levels is None else levels
    return [size_investment(coeffs, v) for v in levels]


@dataclass(frozen=True)
class Position:
    institution: str
    basis_value: float
    actual_tf: float
    predicted_tf: float
    tf_ratio: float | None
    actual_salaries: float
    predicted_salaries: float
    salary_ratio: float | None

    @property
    def flagged(self) -> bool:
        """True when a prediction is zero and no ratio could be formed."""
        return self.tf_ratio is None or self.salary_ratio is None


@dataclass(frozen=True)
class PositioningReport:
    basis: str
    positions: tuple[Position, ...]

    def __iter__(self):
        return iter(self.positions)

    def __len__(self):
        return len(self.positions)


def _ratio(actual: float, predicted: float) -> float | None:
    return actual / predicted if predicted > 0 else None


def position_institutions(survey: Iterable[ObservationRow], coeffs: BenchmarkCoefficients,
                          basis: str | None = None) -> PositioningReport:
    """Compare each institution's actual capacity and salaries with the model."""
    if basis is not None and canonical_basis(basis) != coeffs.basis:
        raise BasisMismatch(f"coefficients are for {coeffs.basis!r}, survey basis is {basis!r}")
    positions = []
    for row in survey:
        value = row.get(coeffs.basis)
        if value is None:
            raise BasisMismatch(f"{row.institution} {row.year}: no {coeffs.basis} value to size against")
        sized = size_investment(coeffs, value)
        positions.append(Position(
            institution=row.institution,
            basis_value=value,
            actual_tf=row.teraflops,
            predicted_tf=sized.modeled_tf,
            tf_ratio=_ratio(row.teraflops, sized.modeled_tf),
            actual_salaries=row.salaries,
            predicted_salaries=sized.modeled_salaries,
            salary_ratio=_ratio(row.salaries, sized.modeled_salaries),
        ))
    return PositioningReport(coeffs.basis, tuple(positions))


# -- coefficient files ------------------------------------------------------

_COEFF_KEYS = ("basis", "tf_per_unit", "salary_per_unit", "salary_budget_fraction")


def dumps_coefficients(coeffs: BenchmarkCoefficients) -> str:
    return "".join(f"{k} = {getattr(coeffs, k) if k == 'basis' else repr(float(getattr(coeffs, k)))}\n"
                   for k in _COEFF_KEYS)


def loads_coefficients(text: str) -> BenchmarkCoefficients:
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            key, sep, value = line.partition(":")
        if not sep:
            raise ValidationError(f"coefficient file line {lineno}: expected 'key = value'")
        values[key.strip()] = value.strip()
    missing = [k for k in _COEFF_KEYS[:3] if k not in values]
    if missing:
        raise ValidationError(f"coefficient file missing {', '.join(missing)}")
    try:
        numbers = {k: float(values[k]) for k in _COEFF_KEYS[1:] if k in values}
    except ValueError as exc:
        raise ValidationError(f"coefficient file: {exc}") from exc
    if not all(math.isfinite(v) for v in numbers.values()):
        raise ValidationError("coefficient file contains non-finite values")
    return BenchmarkCoefficients(basis=values["basis"], **numbers)


def write_coefficients(coeffs: BenchmarkCoefficients, path) -> None:
    Path(path).write_text(dumps_coefficients(coeffs), encoding="utf-8")


def read_coefficients(path) -> BenchmarkCoefficients:
    return loads_coefficients(Path(path).read_text(encoding="utf-8"))
