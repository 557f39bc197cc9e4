import pytest
from hypothesis import given
from hypothesis import strategies as st

from cibench.benchmark import (
    BenchmarkCoefficients,
    dumps_coefficients,
    estimate_coefficients,
    loads_coefficients,
    position_institutions,
    preset,
    read_coefficients,
    size_investment,
    sizing_table,
    write_coefficients,
)
from cibench.dataset import ObservationRow
from cibench.errors import BasisMismatch, InsufficientRows, ValidationError, ZeroBasis
from cibench.synthetic import generate_survey

import reference_tables as ref

HERD = preset("paper-2025", "herd")


def survey_row(inst, tf, sal, herd=None, doctorates=None, publications=None):
    return ObservationRow(inst, 2023, tf, sal, herd=herd, doctorates=doctorates, publications=publications)


def test_worked_herd_row():
    r = size_investment(HERD, 1000)
    assert r.modeled_tf == pytest.approx(11470.0)
    assert r.modeled_salaries == pytest.approx(2.94)
    assert r.modeled_budget == pytest.approx(2.94 / 0.34)
    assert round(r.modeled_budget, 2) == 8.65  # 0.294% carries a rounding shortfall against 8.66


@pytest.mark.parametrize("level,tf,sal,_", ref.DOCTORATE_ROWS)
def test_doctorate_rows(level, tf, sal, _):
    r = size_investment(preset("paper-2025", "phd"), level)
    assert r.modeled_tf == pytest.approx(tf, rel=1e-3)
    assert abs(r.modeled_salaries - sal) <= ref.MONEY_TOL


@pytest.mark.parametrize("level,tf,sal,_", ref.PUBLICATION_ROWS)
def test_publication_rows(level, tf, sal, _):
    r = size_investment(preset("paper-2025", "pub"), level)
    assert r.modeled_tf == pytest.approx(tf, rel=2.5e-3)
    assert abs(r.modeled_salaries - sal) <= ref.MONEY_TOL


def test_publication_spot_check():
    r = size_investment(preset("paper-2025", "publications"), ref.INST_E_PUBLICATIONS)
    assert r.modeled_tf == pytest.approx(ref.INST_E_PUB_SIZED_TF, rel=0.01)
    assert r.modeled_salaries == pytest.approx(ref.INST_E_PUB_SIZED_SALARIES, rel=0.01)


def test_doctorate_arithmetic_for_810():
    # the arithmetic value, not the rounder 14 PF quoted alongside it
    assert size_investment(preset("paper-2025", "phd"), 810).modeled_tf == pytest.approx(15916.5)


def test_table_defaults_and_order():
    rows = sizing_table(HERD)
    assert [r.basis_value for r in rows] == [lvl for lvl, *_ in ref.HERD_ROWS]


def test_estimate_is_mean_of_ratios():
    rows = [survey_row("a", 1000, 0.03, herd=100), survey_row("b", 1200, 0.02, herd=100),
            survey_row("c", 2800, 0.05, herd=200)]
    c = estimate_coefficients(rows, "herd")
    assert c.tf_per_unit == pytest.approx(12.0)
    assert c.salary_per_unit == pytest.approx((3e-4 + 2e-4 + 2.5e-4) / 3)
    # ratio of totals would differ
    assert c.tf_per_unit != pytest.approx(5000 / 400)
    assert c.n_institutions == 3


def test_estimate_usd_units_for_counts():
    rows = [survey_row("a", 100, 0.5, doctorates=100), survey_row("b", 300, 1.5, doctorates=100)]
    c = estimate_coefficients(rows, "phd")
    assert c.basis == "doctorates"
    assert c.salary_per_unit == pytest.approx(10_000.0)
    assert c.salary_musd_per_unit == pytest.approx(0.01)


def test_engineered_survey_recovers_rates():
    c = estimate_coefficients(generate_survey(), "herd")
    assert c.tf_per_unit == pytest.approx(11.47, abs=1e-9)
    assert c.salary_per_unit == pytest.approx(0.00294, abs=1e-12)
    assert c.n_institutions == 28


def test_estimate_errors():
    with pytest.raises(ZeroBasis):
        estimate_coefficients([survey_row("a", 1, 1, herd=0), survey_row("b", 1, 1, herd=2)], "herd")
    with pytest.raises(ZeroBasis):
        estimate_coefficients([survey_row("a", 1, 1), survey_row("b", 1, 1, herd=2)], "herd")
    with pytest.raises(InsufficientRows):
        estimate_coefficients([survey_row("a", 1, 1, herd=2)], "herd")
    with pytest.raises(BasisMismatch):
        estimate_coefficients([survey_row("a", 1, 1, herd=2)] * 2, "patents")


levels = st.floats(0, 1e6, allow_nan=False)


@given(levels, st.floats(0.01, 100))
def test_sizing_homogeneous(v, lam):
    a, b = size_investment(HERD, v), size_investment(HERD, lam * v)
    assert b.modeled_tf == pytest.approx(lam * a.modeled_tf, rel=1e-12, abs=1e-9)
    assert b.modeled_salaries == pytest.approx(lam * a.modeled_salaries, rel=1e-12, abs=1e-12)


@given(levels, st.floats(0.05, 1.0))
def test_budget_fraction_identity(v, f):
    r = size_investment(HERD.with_fraction(f), v)
    assert r.modeled_budget * f == pytest.approx(r.modeled_salaries, rel=1e-12, abs=1e-12)


def test_sizing_validation():
    with pytest.raises(ValidationError):
        size_investment(HERD, -1)
    with pytest.raises(ValidationError):
        BenchmarkCoefficients("herd", 0.0, 0.1)
    with pytest.raises(ValidationError):
        HERD.with_fraction(1.5)
    with pytest.raises(ValidationError):
        preset("nope", "herd")


# -- positioning ----------------------------------------------------------------

def test_inst_e_herd_ratio():
    row = survey_row("Institution E", ref.INST_E_ACTUAL_TF, ref.INST_E_ACTUAL_SALARIES, herd=ref.INST_E_HERD)
    (p,) = position_institutions([row], HERD).positions
    assert p.predicted_tf == pytest.approx(11.47 * 845)
    assert p.tf_ratio == pytest.approx(1.12, abs=0.005)
    assert p.salary_ratio == pytest.approx(2.65 / (0.00294 * 845))
    assert not p.flagged


def test_fitted_coefficients_center_ratios():
    survey = list(generate_survey(seed=9))
    c = estimate_coefficients(survey, "herd")
    report = position_institutions(survey, c)
    assert len(report) == 28
    assert sum(p.tf_ratio for p in report) / 28 == pytest.approx(1.0, abs=1e-12)
    assert sum(p.salary_ratio for p in report) / 28 == pytest.approx(1.0, abs=1e-12)


def test_zero_prediction_flagged_and_mismatch():
    report = position_institutions([survey_row("z", 5, 0.1, herd=0)], HERD)
    assert report.positions[0].tf_ratio is None and report.positions[0].flagged
    with pytest.raises(BasisMismatch):
        position_institutions([survey_row("z", 5, 0.1, herd=1)], HERD, basis="pub")
    with pytest.raises(BasisMismatch):
        position_institutions([survey_row("z", 5, 0.1, doctorates=1)], HERD)


# -- coefficient files ------------------------------------------------------------

def test_coefficient_file_roundtrip(tmp_path):
    c = estimate_coefficients(generate_survey(seed=3), "herd", 0.4)
    path = tmp_path / "coeffs.txt"
    write_coefficients(c, path)
    again = read_coefficients(path)
    assert (again.basis, again.tf_per_unit, again.salary_per_unit, again.salary_budget_fraction) == \
        (c.basis, c.tf_per_unit, c.salary_per_unit, 0.4)
    assert dumps_coefficients(again) == dumps_coefficients(c)


def test_coefficient_file_parsing():
    c = loads_coefficients("# comment\nbasis = phd\ntf_per_unit: 19.65\nsalary_per_unit = 4696\n")
    assert c.basis == "doctorates" and c.salary_budget_fraction == 0.34
    for bad in ("basis = herd\n", "basis herd\n", "basis=herd\ntf_per_unit=x\nsalary_per_unit=1\n",
                "basis=herd\ntf_per_unit=inf\nsalary_per_unit=1\n"):
        with pytest.raises(ValidationError):
            loads_coefficients(bad)


def test_herd_budget_rows_need_a_fourth_digit():
    # diagnostic for the herd budget column: 0.294% falls up to $0.02M short,
    # while 0.2944% reproduces every printed salary and budget cell
    three, four = HERD, BenchmarkCoefficients("herd", 11.47, 0.002944)
    assert max(abs(size_investment(three, lvl).modeled_budget - b) for lvl, _, _, b in ref.HERD_ROWS) > 0.02
    for lvl, _, sal, budget in ref.HERD_ROWS:
        r = size_investment(four, lvl)
        assert abs(r.modeled_salaries - sal) <= ref.MONEY_TOL
        assert abs(r.modeled_budget - budget) <= ref.MONEY_TOL
