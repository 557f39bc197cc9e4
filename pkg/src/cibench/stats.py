"""Statistical kernels: OLS with inference, Kendall tau-b, Student-t tails."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.linalg import qr, solve_triangular

from .errors import (
    DegenerateResponse,
    DegenerateSample,
    DomainError,
    InsufficientRows,
    LengthMismatch,
    SingularDesign,
)

RANK_TOL = 1e-10
BETACF_TOL = 1e-12
BETACF_MAXITER = 10_000


# -- special functions ------------------------------------------------------

def _betacf(a, b, x):
    """Continued fraction for the incomplete beta function (modified Lentz)."""
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < tiny:
        d = tiny
    d = 1.0 / d
    h = d
    for m in range(1, BETACF_MAXITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < tiny:
            d = tiny
        c = 1.0 + aa / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < BETACF_TOL:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta function I_x(a, b)."""
    if a <= 0 or b <= 0:
        raise DomainError("betainc requires a > 0 and b > 0")
    if math.isnan(x) or not 0.0 <= x <= 1.0:
        raise DomainError(f"betainc argument x={x} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    # the continued fraction converges fast only below the mean of the beta law
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_pvalue(t: float, dof: float) -> float:
    """Two-sided tail probability P(|T| >= |t|) for Student-t with ``dof`` dof."""
    if math.isnan(t) or math.isnan(dof):
        raise DomainError("t_pvalue called with NaN")
    if dof < 1:
        raise DomainError(f"dof must be >= 1, got {dof}")
    if math.isinf(t):
        return 0.0
    if t == 0.0:
        return 1.0
    t2 = t * t
    # P(|T| > t) = I_{v/(v+t^2)}(v/2, 1/2); the complementary form keeps
    # precision when t^2 is tiny relative to v
    if t2 < dof:
        return 1.0 - betainc(0.5, dof / 2.0, t2 / (dof + t2))
    return betainc(dof / 2.0, 0.5, dof / (dof + t2))


def significance_stars(p: float) -> str:
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


# -- regression ---------------------------------------------------------------

@dataclass(frozen=True)
class RegressionSpec:
    """Response regressed on an intercept plus the named predictor columns."""

    output_name: str
    predictor_names: tuple[str, ...]
    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        y = np.asarray(self.y, dtype=float).ravel()
        if x.ndim == 1:
            x = x[:, None]
        if x.shape[0] != y.shape[0]:
            raise LengthMismatch(f"{x.shape[0]} design rows but {y.shape[0]} responses")
        if x.shape[1] != len(self.predictor_names):
            raise LengthMismatch(
                f"{x.shape[1]} predictor columns but {len(self.predictor_names)} names"
            )
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
            raise DomainError("design contains non-finite values")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "predictor_names", tuple(self.predictor_names))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_rows(cls, output_name, predictor_names, rows):
        """Build from ``[(predictor_vector, response), ...]``."""
        rows = list(rows)
        k = len(predictor_names)
        x = np.array([list(p) for p, _ in rows], dtype=float).reshape(len(rows), k)
        y = np.array([r for _, r in rows], dtype=float)
        return cls(output_name, tuple(predictor_names), x, y)

    @property
    def n(self) -> int:
        return self.y.shape[0]

    @property
    def k(self) -> int:
        return self.x.shape[1]

    def select(self, columns: Sequence[int]) -> "RegressionSpec":
        columns = list(columns)
        return RegressionSpec(
            self.output_name,
            tuple(self.predictor_names[j] for j in columns),
            self.x[:, columns],
            self.y,
        )


@dataclass(frozen=True)
class Coefficient:
    name: str
    estimate: float
    standard_error: float
    t_statistic: float
    p_value: float

    @property
    def stars(self) -> str:
        return significance_stars(self.p_value)


@dataclass(frozen=True)
class RegressionFit:
    output_name: str
    intercept: Coefficient
    coefficients: tuple[Coefficient, ...]
    r_squared: float
    adj_r_squared: float
    n_obs: int
    dof_residual: int
    residuals: np.ndarray = field(repr=False, compare=False)

    def __getitem__(self, name: str) -> Coefficient:
        if name == self.intercept.name:
            return self.intercept
        for c in self.coefficients:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def predictor_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.coefficients)


def _design(x: np.ndarray) -> np.ndarray:
    return np.column_stack([np.ones(x.shape[0]), x])


def _check_shape(n, k):
    if n < k + 2:
        raise InsufficientRows(f"{n} rows cannot support {k} predictors plus intercept (need {k + 2})")


def _qr_solve(x: np.ndarray, y: np.ndarray, names=()):
    """Least squares on [1, x] via column-pivoted QR.

    Returns (beta, r_inv) where ``r_inv`` is the unpermuted inverse of the
    triangular factor, so ``r_inv @ r_inv.T`` equals ``(X'X)^{-1}``.
    """
    n, k = x.shape
    for j in range(k):
        if np.ptp(x[:, j]) == 0.0:
            label = names[j] if j < len(names) else f"column {j}"
            raise SingularDesign(f"predictor {label} is constant")
    design = _design(x)
    q, r, perm = qr(design, mode="economic", pivoting=True)
    col_norm = np.linalg.norm(design, axis=0).max()
    diag = np.abs(np.diag(r))
    if diag.min() <= RANK_TOL * col_norm:
        raise SingularDesign("design matrix is rank deficient (collinear predictors)")
    beta_p = solve_triangular(r, q.T @ y)
    r_inv_p = solve_triangular(r, np.eye(k + 1))
    beta = np.empty(k + 1)
    beta[perm] = beta_p
    r_inv = np.empty_like(r_inv_p)
    r_inv[perm, :] = r_inv_p
    return beta, r_inv


def _tss(y: np.ndarray) -> float:
    tss = float(np.sum((y - y.mean()) ** 2))
    if tss == 0.0:
        raise DegenerateResponse("response has zero variance; R-squared is undefined")
    return tss


def r_squared(spec: RegressionSpec, columns: Sequence[int] | None = None) -> float:
    """R-squared of the intercept model on the selected predictor columns."""
    columns = list(range(spec.k)) if columns is None else list(columns)
    tss = _tss(spec.y)
    if not columns:
        return 0.0
    _check_shape(spec.n, len(columns))
    x = spec.x[:, columns]
    beta, _ = _qr_solve(x, spec.y, [spec.predictor_names[j] for j in columns])
    resid = spec.y - _design(x) @ beta
    return 1.0 - float(resid @ resid) / tss


def adjusted_r2(r2: float, n: int, k: int) -> float:
    if n <= k + 1:
        raise InsufficientRows(f"adjusted R-squared needs n > k + 1 (n={n}, k={k})")
    return 1.0 - (1.0 - r2) * (n - 1) / (n - k - 1)


def fit_ols(spec: RegressionSpec) -> RegressionFit:
    """Ordinary least squares of ``spec.y`` on an intercept and ``spec.x``.

    Standard errors use s^2 = RSS / (n - k - 1); p-values are two-sided
    Student-t with the same degrees of freedom.
    """
    n, k = spec.n, spec.k
    _check_shape(n, k)
    beta, r_inv = _qr_solve(spec.x, spec.y, spec.predictor_names)
    tss = _tss(spec.y)
    resid = spec.y - _design(spec.x) @ beta
    rss = float(resid @ resid)
    dof = n - k - 1
    s2 = rss / dof
    se = np.sqrt(s2 * np.sum(r_inv * r_inv, axis=1))

    coefs = []
    for name, b, s in zip(("(Intercept)",) + spec.predictor_names, beta, se):
        b, s = float(b), float(s)
        if s > 0:
            t = b / s
            p = t_pvalue(t, dof)
        else:
            # exact fit: an infinitely precise nonzero estimate
            t = math.copysign(math.inf, b) if b != 0 else 0.0
            p = 0.0 if b != 0 else 1.0
        coefs.append(Coefficient(name, b, s, t, p))

    r2 = min(max(1.0 - rss / tss, 0.0), 1.0)
    resid.setflags(write=False)
    return RegressionFit(
        output_name=spec.output_name,
        intercept=coefs[0],
        coefficients=tuple(coefs[1:]),
        r_squared=r2,
        adj_r_squared=adjusted_r2(r2, n, k),
        n_obs=n,
        dof_residual=dof,
        residuals=resid,
    )


# -- rank correlation ---------------------------------------------------------

def kendall_tau(x: Sequence[float], y: Sequence[float]) -> float:
    """Kendall's tau-b with tie correction.

    tau_b = sum_{i<j} sgn(dx) sgn(dy) / sqrt(n_x n_y), where n_x and n_y count
    the pairs untied in x and in y respectively.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatch(f"samples have lengths {x.size} and {y.size}")
    if x.size < 2:
        raise InsufficientRows("kendall_tau needs at least two observations")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(y))):
        raise DomainError("kendall_tau requires finite values")
    iu = np.triu_indices(x.size, k=1)
    sx = np.sign(x[:, None] - x[None, :])[iu]
    sy = np.sign(y[:, None] - y[None, :])[iu]
    nx = np.count_nonzero(sx)
    ny = np.count_nonzero(sy)
    if nx == 0 or ny == 0:
        raise DegenerateSample("one sample is entirely tied; tau-b is undefined")
    tau = float(np.dot(sx, sy)) / math.sqrt(float(nx) * float(ny))
    return min(1.0, max(-1.0, tau))


@dataclass(frozen=True)
class CorrelationMatrix:
    """Per-(output, institution) Kendall tau for one input; ``None`` marks an absent cell."""

    input_name: str
    outputs: tuple[str, ...]
    institutions: tuple[str, ...]
    entries: dict

    def __getitem__(self, key):
        return self.entries[key]
