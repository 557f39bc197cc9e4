# %% [markdown]
# # Loading panel and survey data
#
# A panel is one row per institution-year with two inputs (TeraFLOPS and
# RCD salary spend in $M) and up to four outputs.

# %%
import warnings

from cibench import data_path
from cibench.dataset import IngestConfig, IngestWarning, load_panel, load_survey

panel = load_panel(data_path("fixture_panel.csv"))
print(len(panel), "rows,", len(panel.institutions()), "institutions")
for inst in panel.institutions():
    rows = panel.for_institution(inst)
    print(f"  {inst}: {rows[0].year}-{rows[-1].year} ({len(rows)} rows)")

# %% [markdown]
# Rows come back grouped by institution and sorted by year. A single series
# is easy to pull out:

# %%
print(panel.series("Institution D", "teraflops"))

# %% [markdown]
# Survey files may report FTE counts instead of salary dollars, or a device
# inventory instead of a TeraFLOPS total. Those get normalized on the way in.

# %%
survey = load_survey(data_path("fixture_survey.csv"), inventory_path=data_path("fixture_inventory.csv"))
r03 = survey.for_institution("R1-03")[0]
print("R1-03 salaries from FTEs at $90k:", round(r03.salaries, 4))
r05 = survey.for_institution("R1-05")[0]
print("R1-05 TF from its inventory:", r05.teraflops)

# a different median compensation changes the FTE conversion only
high = load_survey(data_path("fixture_survey.csv"), IngestConfig(median_compensation=120_000),
                   inventory_path=data_path("fixture_inventory.csv"))
print("R1-03 at $120k:", round(high.for_institution("R1-03")[0].salaries, 4))

# %% [markdown]
# Without the inventory two rows can't be resolved. Strict mode refuses the
# file; lenient mode drops them and says so.

# %%
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always", IngestWarning)
    partial = load_survey(data_path("fixture_survey.csv"), IngestConfig(strict=False))
print(len(partial), "rows kept;", [str(w.message) for w in caught])
