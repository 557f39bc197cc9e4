# %% [markdown]
# # Projecting capacity forward with compound growth

# %%
from cibench import data_path
from cibench.benchmark import preset, size_investment
from cibench.dataset import load_panel
from cibench.projection import curves_to_csv, estimate_growth, project_capacity

# %% [markdown]
# Growth is the geometric mean of year-over-year capacity ratios, pooled over
# institutions. Gap years and zero-capacity years don't contribute.

# %%
growth = estimate_growth(load_panel(data_path("fixture_panel.csv")))
print(f"observed growth {growth.annual_rate:.3f} from {growth.n_intervals} intervals")

# %% [markdown]
# Start from the benchmark capacity for a $1,000M R&D institution and grow at 41% a year.

# %%
base = size_investment(preset("paper-2025", "herd"), 1000).modeled_tf
curves = [project_capacity(base, 2025, 0.41, 5, "41%"),
          project_capacity(base, 2025, growth.annual_rate, 5, "observed")]
print(curves_to_csv(curves))
