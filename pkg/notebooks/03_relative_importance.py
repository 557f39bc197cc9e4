# %% [markdown]
# # Splitting R^2 between inputs (lmg)
#
# lmg averages each predictor's incremental R^2 over every order in which
# predictors could enter the model. The shares add up to the full R^2.

# %%
import numpy as np

from cibench import data_path
from cibench.dataset import load_panel
from cibench.production import fit_suite
from cibench.relimp import lmg
from cibench.stats import RegressionSpec

# %% [markdown]
# A tiny orthogonal design makes the answer obvious: x2 carries four times
# the signal of x1.

# %%
spec = RegressionSpec("y", ("x1", "x2"), np.array([[1, 1], [-1, 1], [1, -1], [-1, -1]]), [3, 1, -1, -3])
print(lmg(spec).as_dict())

# %% [markdown]
# On the pooled panel, salary spend explains more of each output than capacity.

# %%
suite = fit_suite(load_panel(data_path("fixture_panel.csv")), "combined")
for output, imp in suite.importances.items():
    print(f"{output:15s} TF {imp['teraflops']:.3f}  Salaries {imp['salaries']:.3f}  total {imp.total_r2:.3f}")
