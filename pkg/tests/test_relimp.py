import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cibench.errors import TooManyPredictors
from cibench.relimp import lmg, subset_r2
from cibench.stats import RegressionSpec, fit_ols

import oracles

ORTHO = RegressionSpec("y", ("x1", "x2"), np.array([[1, 1], [-1, 1], [1, -1], [-1, -1]]), [3, 1, -1, -3])


def random_spec(seed, k, n=None):
    rng = np.random.default_rng(seed)
    n = n or int(rng.integers(k + 4, 40))
    mix = rng.normal(size=(k, k)) * 0.5 + np.eye(k)
    x = rng.normal(size=(n, k)) @ mix
    y = x @ rng.normal(size=k) + rng.normal(size=n)
    return RegressionSpec("y", tuple(f"x{j}" for j in range(k)), x, y)


def test_subset_r2_orthogonal_fixture():
    assert subset_r2(ORTHO, []) == 0.0
    assert subset_r2(ORTHO, [0]) == pytest.approx(0.2, abs=1e-12)
    assert subset_r2(ORTHO, [1]) == pytest.approx(0.8, abs=1e-12)
    assert subset_r2(ORTHO, [0, 1]) == pytest.approx(fit_ols(ORTHO).r_squared, abs=1e-15)


def test_lmg_orthogonal_fixture():
    imp = lmg(ORTHO)
    assert imp.shares == pytest.approx((0.2, 0.8), abs=1e-12)
    assert imp.total_r2 == pytest.approx(1.0, abs=1e-12)
    assert imp["x2"] == imp.shares[1]


def test_single_predictor_share_is_r2():
    spec = random_spec(5, 1)
    imp = lmg(spec)
    assert imp.shares[0] == pytest.approx(fit_ols(spec).r_squared, abs=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_two_predictor_direct_formula(seed):
    spec = random_spec(seed, 2)
    r1, r2, r12 = (oracles.subset_r2_oracle(spec.x, spec.y, c) for c in ([0], [1], [0, 1]))
    imp = lmg(spec)
    assert imp.shares[0] == pytest.approx(0.5 * r1 + 0.5 * (r12 - r2), abs=1e-10)
    assert imp.shares[1] == pytest.approx(0.5 * r2 + 0.5 * (r12 - r1), abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
def test_lmg_sum_and_ordering_oracle(seed, k):
    spec = random_spec(seed, k)
    imp = lmg(spec)
    assert sum(imp.shares) == pytest.approx(fit_ols(spec).r_squared, abs=1e-9)
    assert min(imp.shares) >= -1e-12
    np.testing.assert_allclose(imp.shares, oracles.lmg_by_orderings(spec.x, spec.y), atol=1e-9)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1), st.permutations(range(4)))
def test_lmg_permutation_symmetry(seed, perm):
    spec = random_spec(seed, 4)
    base = lmg(spec).shares
    permuted = lmg(spec.select(perm)).shares
    np.testing.assert_allclose(permuted, [base[j] for j in perm], atol=1e-12)


def test_orthogonal_centered_predictors_get_marginal_r2():
    rng = np.random.default_rng(0)
    # QR against a leading ones column: the rest are centered and mutually orthogonal
    q, _ = np.linalg.qr(np.column_stack([np.ones(12), rng.normal(size=(12, 3))]))
    x = q[:, 1:]
    y = x @ [2.0, -1.0, 0.5] + rng.normal(scale=0.3, size=12)
    spec = RegressionSpec("y", ("a", "b", "c"), x, y)
    imp = lmg(spec)
    for j in range(3):
        assert imp.shares[j] == pytest.approx(subset_r2(spec, [j]), abs=1e-12)


def test_too_many_predictors():
    spec = random_spec(1, 13, n=40)
    with pytest.raises(TooManyPredictors):
        lmg(spec)
