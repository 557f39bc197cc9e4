"""Panel and survey data model, CSV ingestion and survey normalization.

Canonical units: ``teraflops`` is aggregate FP64 TeraFLOPS, ``salaries`` and
``herd`` are millions of USD, the remaining outputs are plain counts.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    DuplicateKey,
    EmptyDataset,
    InsufficientData,
    MalformedCsv,
    SchemaViolation,
)

log = logging.getLogger(__name__)

PANEL_HEADER = (
    "institution",
    "year",
    "teraflops",
    "salaries_musd",
    "herd_musd",
    "doctorates",
    "publications",
    "hi_impact_pubs",
)
SURVEY_HEADER = (
    "institution",
    "year",
    "teraflops",
    "salaries_musd",
    "fte_count",
    "herd_musd",
    "doctorates",
    "publications",
)
INVENTORY_HEADER = ("institution", "device_count", "gf_per_device")

# csv column -> ObservationRow attribute
_PANEL_FIELDS = {
    "teraflops": "teraflops",
    "salaries_musd": "salaries",
    "herd_musd": "herd",
    "doctorates": "doctorates",
    "publications": "publications",
    "hi_impact_pubs": "hi_impact_pubs",
}
OUTPUT_FIELDS = ("herd", "doctorates", "publications", "hi_impact_pubs")

YEAR_MIN, YEAR_MAX = 1990, 2100


class IngestWarning(UserWarning):
    """Emitted when a row is dropped during non-strict ingestion."""


@dataclass(frozen=True)
class IngestConfig:
    median_compensation: float = 90_000.0
    strict: bool = True

    def __post_init__(self):
        if not self.median_compensation > 0:
            raise ValueError("median_compensation must be positive")


@dataclass(frozen=True)
class ObservationRow:
    institution: str
    year: int
    teraflops: float
    salaries: float
    herd: float | None = None
    doctorates: float | None = None
    publications: float | None = None
    hi_impact_pubs: float | None = None
    extras: tuple[tuple[str, float | None], ...] = ()

    def __post_init__(self):
        if not YEAR_MIN <= self.year <= YEAR_MAX:
            raise SchemaViolation(
                f"{self.institution}: year {self.year} outside [{YEAR_MIN}, {YEAR_MAX}]"
            )
        for name in ("teraflops", "salaries") + OUTPUT_FIELDS:
            value = getattr(self, name)
            if value is None:
                if name in ("teraflops", "salaries"):
                    raise SchemaViolation(f"{self.institution} {self.year}: {name} is required")
                continue
            if not math.isfinite(value) or value < 0:
                raise SchemaViolation(
                    f"{self.institution} {self.year}: {name}={value!r} must be finite and >= 0"
                )

    @property
    def key(self) -> tuple[str, int]:
        return (self.institution, self.year)

    def get(self, name: str) -> float | None:
        if name in ObservationRow.__dataclass_fields__:
            return getattr(self, name)
        return dict(self.extras).get(name)

    def has(self, names: Iterable[str]) -> bool:
        return all(self.get(n) is not None for n in names)


@dataclass(frozen=True)
class DroppedRow:
    line: int
    reason: str


@dataclass(frozen=True)
class PanelDataset:
    """Validated multi-institution, multi-year panel.

    Rows are grouped by institution (first-appearance order) and sorted by
    year inside each group.
    """

    rows: tuple[ObservationRow, ...]
    provenance: str = ""
    dropped: tuple[DroppedRow, ...] = ()

    def __post_init__(self):
        seen = set()
        for row in self.rows:
            if row.key in seen:
                raise DuplicateKey(f"duplicate observation for {row.key[0]} {row.key[1]}")
            seen.add(row.key)
        object.__setattr__(self, "rows", _group_sort(self.rows))

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def institutions(self) -> list[str]:
        return list(dict.fromkeys(r.institution for r in self.rows))

    def for_institution(self, institution: str) -> list[ObservationRow]:
        return [r for r in self.rows if r.institution == institution]

    def series(self, institution: str, name: str) -> list[tuple[int, float]]:
        """(year, value) pairs for one field, skipping missing cells."""
        return [
            (r.year, r.get(name))
            for r in self.for_institution(institution)
            if r.get(name) is not None
        ]

    def complete(self, names: Iterable[str]) -> list[ObservationRow]:
        names = tuple(names)
        return [r for r in self.rows if r.has(names)]

    def subset(self, institution: str | None = None, years: tuple[int, int] | None = None) -> "PanelDataset":
        rows = self.rows
        if institution is not None:
            rows = tuple(r for r in rows if r.institution == institution)
        if years is not None:
            lo, hi = years
            rows = tuple(r for r in rows if lo <= r.year <= hi)
        return PanelDataset(rows, self.provenance)

    def require_nonempty(self) -> "PanelDataset":
        if not self.rows:
            raise EmptyDataset("dataset contains no valid rows")
        return self


def _group_sort(rows: Sequence[ObservationRow]) -> tuple[ObservationRow, ...]:
    order = {inst: i for i, inst in enumerate(dict.fromkeys(r.institution for r in rows))}
    return tuple(sorted(rows, key=lambda r: (order[r.institution], r.year)))


@dataclass(frozen=True)
class SurveyRecord:
    institution: str
    year: int
    herd: float | None = None
    doctorates: float | None = None
    publications: float | None = None
    teraflops: float | None = None
    core_inventory: tuple[tuple[float, float], ...] = ()
    salaries: float | None = None
    fte_count: float | None = None

    def __post_init__(self):
        for name in ("herd", "doctorates", "publications", "teraflops", "salaries", "fte_count"):
            value = getattr(self, name)
            if value is not None and (not math.isfinite(value) or value < 0):
                raise SchemaViolation(f"{self.institution}: {name}={value!r} must be >= 0")
        for count, gf in self.core_inventory:
            if count < 0 or gf < 0:
                raise SchemaViolation(f"{self.institution}: negative inventory entry ({count}, {gf})")


def normalize_survey(record: SurveyRecord, config: IngestConfig = IngestConfig()) -> ObservationRow:
    """Convert a survey response into canonical units.

    Explicit TeraFLOPS and salary figures win. Otherwise capacity is the sum of
    ``count * GF`` over the device inventory (in TF), and salary spend is the
    FTE count times the median compensation (in $M).
    """
    if record.teraflops is not None:
        tf = record.teraflops
    elif record.core_inventory:
        tf = math.fsum(count * gf for count, gf in record.core_inventory) / 1000.0
    else:
        raise InsufficientData(f"{record.institution}: neither teraflops nor core inventory given")

    if record.salaries is not None:
        salaries = record.salaries
    elif record.fte_count is not None:
        salaries = record.fte_count * config.median_compensation / 1e6
    else:
        raise InsufficientData(f"{record.institution}: neither salaries nor FTE count given")

    return ObservationRow(
        institution=record.institution,
        year=record.year,
        teraflops=tf,
        salaries=salaries,
        herd=record.herd,
        doctorates=record.doctorates,
        publications=record.publications,
    )


# -- CSV ingestion ----------------------------------------------------------

def _read_table(path, header: Sequence[str]) -> tuple[list[str], list[tuple[int, dict]]]:
    try:
        text = Path(path).read_text(encoding="utf-8-sig")
    except UnicodeDecodeError as exc:
        raise MalformedCsv(f"{path}: not valid UTF-8 text") from exc
    if not text.strip():
        raise EmptyDataset(f"{path}: file is empty")
    try:
        reader = csv.reader(io.StringIO(text, newline=""), strict=True)
        table = [row for row in reader]
    except csv.Error as exc:
        raise MalformedCsv(f"{path}: {exc}") from exc

    columns = [c.strip() for c in table[0]]
    missing = [c for c in header if c not in columns]
    if missing:
        raise SchemaViolation(f"{path}: missing column(s) {', '.join(missing)}")
    if len(set(columns)) != len(columns):
        raise SchemaViolation(f"{path}: repeated column names in header")

    records = []
    for lineno, raw in enumerate(table[1:], start=2):
        if not any(cell.strip() for cell in raw):
            continue
        if len(raw) != len(columns):
            records.append((lineno, None))
            continue
        records.append((lineno, {c: v.strip() for c, v in zip(columns, raw)}))
    return columns, records


def _number(text: str) -> float | None:
    if text == "":
        return None
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"non-finite value {text!r}")
    return value


def _year(text: str) -> int:
    value = float(text)
    if value != int(value):
        raise ValueError(f"year {text!r} is not an integer")
    return int(value)


class _RowSink:
    """Collects rows; raises or drops on row-level problems depending on strictness."""

    def __init__(self, path, strict: bool):
        self.path = path
        self.strict = strict
        self.dropped: list[DroppedRow] = []

    def reject(self, lineno: int, exc: Exception):
        if self.strict:
            if isinstance(exc, (SchemaViolation, DuplicateKey, MalformedCsv, InsufficientData)):
                raise type(exc)(f"{self.path}:{lineno}: {exc}") from exc
            raise MalformedCsv(f"{self.path}:{lineno}: {exc}") from exc
        reason = f"{type(exc).__name__}: {exc}"
        self.dropped.append(DroppedRow(lineno, reason))
        warnings.warn(f"{self.path}:{lineno}: dropped row ({reason})", IngestWarning, stacklevel=3)
        log.warning("dropped %s:%d (%s)", self.path, lineno, reason)


def load_panel(path, config: IngestConfig = IngestConfig()) -> PanelDataset:
    """Read a panel CSV into a validated :class:`PanelDataset`.

    Under ``config.strict`` the first bad row aborts the load; otherwise bad rows
    are dropped, recorded in ``PanelDataset.dropped`` and reported through an
    :class:`IngestWarning`.
    """
    columns, records = _read_table(path, PANEL_HEADER)
    extra_cols = [c for c in columns if c not in PANEL_HEADER]
    sink = _RowSink(path, config.strict)
    rows: dict[tuple[str, int], ObservationRow] = {}

    for lineno, rec in records:
        if rec is None:
            sink.reject(lineno, MalformedCsv("wrong number of fields"))
            continue
        try:
            if not rec["institution"]:
                raise SchemaViolation("institution is required")
            values = {attr: _number(rec[col]) for col, attr in _PANEL_FIELDS.items()}
            extras = tuple((c, _number(rec[c])) for c in extra_cols)
            row = ObservationRow(rec["institution"], _year(rec["year"]), extras=extras, **values)
        except (ValueError, SchemaViolation) as exc:
            sink.reject(lineno, exc)
            continue
        if row.key in rows:
            sink.reject(lineno, DuplicateKey(f"repeated institution-year {row.key[0]} {row.key[1]}"))
            continue
        rows[row.key] = row

    if not rows:
        raise EmptyDataset(f"{path}: no valid rows")
    return PanelDataset(tuple(rows.values()), provenance=str(path), dropped=tuple(sink.dropped))


def load_inventory(path) -> dict[str, tuple[tuple[float, float], ...]]:
    _, records = _read_table(path, INVENTORY_HEADER)
    inventory: dict[str, list[tuple[float, float]]] = {}
    for lineno, rec in records:
        if rec is None:
            raise MalformedCsv(f"{path}:{lineno}: wrong number of fields")
        try:
            count, gf = float(rec["device_count"]), float(rec["gf_per_device"])
        except ValueError as exc:
            raise MalformedCsv(f"{path}:{lineno}: {exc}") from exc
        if count < 0 or gf < 0:
            raise SchemaViolation(f"{path}:{lineno}: negative inventory entry")
        inventory.setdefault(rec["institution"], []).append((count, gf))
    return {k: tuple(v) for k, v in inventory.items()}


def load_survey(path, config: IngestConfig = IngestConfig(), inventory_path=None) -> PanelDataset:
    """Read survey responses (plus optional device inventory) and normalize them."""
    _, records = _read_table(path, SURVEY_HEADER)
    inventory = load_inventory(inventory_path) if inventory_path else {}
    sink = _RowSink(path, config.strict)
    rows: dict[tuple[str, int], ObservationRow] = {}

    for lineno, rec in records:
        if rec is None:
            sink.reject(lineno, MalformedCsv("wrong number of fields"))
            continue
        try:
            record = SurveyRecord(
                institution=rec["institution"],
                year=_year(rec["year"]),
                teraflops=_number(rec["teraflops"]),
                salaries=_number(rec["salaries_musd"]),
                fte_count=_number(rec["fte_count"]),
                herd=_number(rec["herd_musd"]),
                doctorates=_number(rec["doctorates"]),
                publications=_number(rec["publications"]),
                core_inventory=inventory.get(rec["institution"], ()),
            )
            row = normalize_survey(record, config)
        except (ValueError, SchemaViolation, InsufficientData) as exc:
            sink.reject(lineno, exc)
            continue
        if row.key in rows:
            sink.reject(lineno, DuplicateKey(f"repeated institution-year {row.key[0]} {row.key[1]}"))
            continue
        rows[row.key] = row

    if not rows:
        raise EmptyDataset(f"{path}: no valid rows")
    return PanelDataset(tuple(rows.values()), provenance=str(path), dropped=tuple(sink.dropped))


def _fmt(value) -> str:
    # repr of a float is the shortest string that round-trips exactly
    return "" if value is None else repr(float(value))


def panel_to_csv(panel: PanelDataset) -> str:
    extra_cols = list(dict.fromkeys(name for r in panel.rows for name, _ in r.extras))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(PANEL_HEADER) + extra_cols)
    for r in panel.rows:
        extras = dict(r.extras)
        writer.writerow(
            [r.institution, r.year]
            + [_fmt(getattr(r, attr)) for attr in _PANEL_FIELDS.values()]
            + [_fmt(extras.get(c)) for c in extra_cols]
        )
    return buf.getvalue()


def write_panel(panel: PanelDataset, path) -> None:
    Path(path).write_text(panel_to_csv(panel), encoding="utf-8")

