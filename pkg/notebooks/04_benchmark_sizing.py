# %% [markdown]
# # Sizing a research computing center from institutional outputs
#
# Benchmarks are averaged ratios: TeraFLOPS per unit of output and salary
# dollars per unit of output. Salaries are assumed to be 34% of the total budget.

# %%
from cibench import data_path
from cibench.benchmark import estimate_coefficients, position_institutions, preset, sizing_table
from cibench.dataset import load_survey

herd = preset("paper-2025", "herd")
print(herd.tf_per_unit, "TF per $M of R&D;", herd.salary_label())
for r in sizing_table(herd):
    print(f"${r.basis_value:>5,.0f}M  {r.modeled_tf:>8,.0f} TF  ${r.modeled_salaries:5.2f}M  ${r.modeled_budget:6.2f}M")

# %% [markdown]
# The same thing keyed on earned doctorates or publications:

# %%
for basis in ("doctorates", "publications"):
    c = preset("paper-2025", basis)
    top = sizing_table(c)[0]
    print(f"{basis}: {top.basis_value:,.0f} -> {top.modeled_tf:,.0f} TF, ${top.modeled_salaries:.2f}M")

# %% [markdown]
# Fitting coefficients from a survey instead. The estimate is the mean of
# per-institution ratios, not the ratio of totals.

# %%
survey = load_survey(data_path("fixture_survey.csv"), inventory_path=data_path("fixture_inventory.csv"))
fitted = estimate_coefficients(survey, "herd")
print(f"fitted: {fitted.tf_per_unit:.2f} TF/$M, {fitted.salary_label()} from {fitted.n_institutions} institutions")

# %% [markdown]
# Where does each institution sit against the model? A ratio above 1 means
# more capacity (or salary spend) than its R&D volume predicts.

# %%
report = position_institutions(survey, fitted)
over = sorted(report, key=lambda p: p.tf_ratio, reverse=True)[:5]
for p in over:
    print(f"{p.institution}: TF ratio {p.tf_ratio:.2f}, salary ratio {p.salary_ratio:.2f}")
