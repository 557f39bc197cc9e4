# %% [markdown]
# # Rank correlations and production-function regressions

# %%
from cibench import data_path
from cibench.dataset import load_panel
from cibench.production import correlate_all, fit_suite, translate

panel = load_panel(data_path("fixture_panel.csv"))

# %% [markdown]
# Kendall tau-b between each input and each output, one institution at a time.
# Cells with fewer than three complete rows (or an all-tied input) stay empty.

# %%
tf_corr, sal_corr = correlate_all(panel)
for output in tf_corr.outputs:
    cells = [tf_corr[(output, inst)] for inst in tf_corr.institutions]
    print(f"{output:15s}", " ".join("  n/a " if c is None else f"{c:6.3f}" for c in cells))

# %% [markdown]
# The pooled model regresses each output on both inputs plus an intercept.

# %%
suite = fit_suite(panel, "combined")
for output in suite.outputs:
    fit = suite[output]
    tf, sal = fit["teraflops"], fit["salaries"]
    print(f"{output:15s} TF {tf.estimate:8.4f}{tf.stars:3s} ({tf.standard_error:.4f})  "
          f"Sal {sal.estimate:9.3f}{sal.stars:3s} ({sal.standard_error:.3f})  adj R^2 {fit.adj_r_squared:.3f}")

# %% [markdown]
# In more familiar units: output per extra 100 TF and per extra $100k of salaries.

# %%
for output, e in translate(suite).entries.items():
    print(f"{output:15s} {e.effect_per_100tf:8.2f} per 100 TF, {e.effect_per_100k_salary:8.2f} per $100k")

# %% [markdown]
# Per-institution suites work the same way; short series are where things get shaky.

# %%
e = fit_suite(panel, "Institution E")
print("Institution E herd adj R^2:", round(e["herd"].adj_r_squared, 3), "on", e["herd"].n_obs, "rows")
