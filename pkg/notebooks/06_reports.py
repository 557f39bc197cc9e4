# %% [markdown]
# # Reports in markdown, csv and json
#
# Every analysis ends up as a Report of Sections of Cells. Values stay at full
# precision; rounding only happens when rendering.

# %%
import json

from cibench import data_path
from cibench.benchmark import preset, sizing_table
from cibench.cli import run
from cibench.dataset import load_panel
from cibench.production import fit_suite
from cibench.report import Report, regression_section, render_report, sizing_section

suite = fit_suite(load_panel(data_path("fixture_panel.csv")), "combined")
report = Report("Pooled model", [regression_section(suite)])
print(render_report(report, "markdown"))

# %%
sizing = Report("", [sizing_section(sizing_table(preset("paper-2025", "phd")))])
print(render_report(sizing, "csv"))
cell = json.loads(render_report(sizing, "json"))["sections"][0]["rows"][0][1]
print(cell)

# %% [markdown]
# The command-line tool renders the same reports; `run` is its in-process entry.

# %%
run(["benchmark-size", "--preset", "paper-2025", "--basis", "herd", "--value", "1000", "--format", "csv"])
