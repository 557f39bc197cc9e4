"""lmg relative importance: R-squared averaged over predictor entry orderings."""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable

from .errors import TooManyPredictors
from .stats import RegressionSpec, r_squared

MAX_PREDICTORS = 12


@dataclass(frozen=True)
class RelativeImportance:
    output_name: str
    predictor_names: tuple[str, ...]
    shares: tuple[float, ...]
    total_r2: float

    def __getitem__(self, name: str) -> float:
        return self.shares[self.predictor_names.index(name)]

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.predictor_names, self.shares))


def subset_r2(spec: RegressionSpec, subset: Iterable[int]) -> float:
    """R-squared using only the predictor columns in ``subset``; 0 for the empty set."""
    subset = sorted(set(subset))
    if any(j < 0 or j >= spec.k for j in subset):
        raise IndexError(f"subset {subset} out of range for {spec.k} predictors")
    return r_squared(spec, subset)


def lmg(spec: RegressionSpec) -> RelativeImportance:
    """Shapley decomposition of the full-model R-squared.

    Each predictor's share is its incremental R-squared averaged over all k!
    entry orders, evaluated through the 2^k subset fits with weights
    |S|! (k - |S| - 1)! / k!.
    """
    k = spec.k
    if k > MAX_PREDICTORS:
        raise TooManyPredictors(f"lmg enumerates 2^k subsets; k={k} exceeds {MAX_PREDICTORS}")

    r2 = {}
    for mask in range(1 << k):
        r2[mask] = subset_r2(spec, [j for j in range(k) if mask >> j & 1])

    weights = [factorial(s) * factorial(k - s - 1) / factorial(k) for s in range(k)]
    shares = []
    for j in range(k):
        bit = 1 << j
        total = 0.0
        for mask in range(1 << k):
            if mask & bit:
                continue
            total += weights[bin(mask).count("1")] * (r2[mask | bit] - r2[mask])
        shares.append(total)

    return RelativeImportance(spec.output_name, spec.predictor_names, tuple(shares), r2[(1 << k) - 1])
