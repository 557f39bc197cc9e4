"""Rebuild the CSV fixtures bundled in ``cibench/data`` from the seeded generators.

Run from the repository root: ``python notebooks/regenerate_fixtures.py``.
"""
import csv
from pathlib import Path

from cibench.dataset import write_panel
from cibench.synthetic import generate_panel, generate_survey

DATA = Path(__file__).resolve().parents[1] / "src" / "cibench" / "data"

write_panel(generate_panel(seed=2025), DATA / "fixture_panel.csv")

# survey: most respondents report TF and salary dollars; a few report FTEs or a device inventory
survey = generate_survey(seed=7)
fte_rows = {"R1-03", "R1-11", "R1-19"}
inventory_rows = {"R1-05": [(12000, 45.0), (40, 9700.0)], "R1-22": [(30000, 38.4), (96, 19500.0)]}
with open(DATA / "fixture_survey.csv", "w", newline="") as fh:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["institution", "year", "teraflops", "salaries_musd", "fte_count",
                "herd_musd", "doctorates", "publications"])
    for r in survey:
        tf = "" if r.institution in inventory_rows else f"{r.teraflops:.1f}"
        if r.institution in fte_rows:
            sal, fte = "", f"{r.salaries * 1e6 / 90000:.1f}"
        else:
            sal, fte = f"{r.salaries:.4f}", ""
        w.writerow([r.institution, r.year, tf, sal, fte, f"{r.herd:.1f}",
                    int(r.doctorates), int(r.publications)])
with open(DATA / "fixture_inventory.csv", "w", newline="") as fh:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["institution", "device_count", "gf_per_device"])
    for inst, devices in inventory_rows.items():
        for count, gf in devices:
            w.writerow([inst, count, gf])
