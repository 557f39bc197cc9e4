"""Independent reference computations used only by the tests.

None of these touch the package's solvers: OLS goes through the normal
equations, Kendall's tau through explicit pair counting, Student-t tails
through quadrature of the density, lmg through explicit permutations.
"""

import math
from itertools import permutations

import numpy as np
from scipy import integrate


def inv3(m):
    """Adjugate inverse of a 3x3 matrix."""
    (a, b, c), (d, e, f), (g, h, i) = m
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    adj = np.array([
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ])
    return adj / det


def normal_equations_ols(x, y, explicit3=False):
    """(beta, se, r2) with intercept first, via (X'X)^{-1} X'y."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    y = np.asarray(y, dtype=float)
    n, k = x.shape
    X = np.column_stack([np.ones(n), x])
    xtx = X.T @ X
    xtx_inv = inv3(xtx) if explicit3 else np.linalg.inv(xtx)
    beta = xtx_inv @ (X.T @ y)
    resid = y - X @ beta
    s2 = resid @ resid / (n - k - 1)
    se = np.sqrt(s2 * np.diag(xtx_inv))
    r2 = 1 - resid @ resid / np.sum((y - y.mean()) ** 2)
    return beta, se, r2


def subset_r2_oracle(x, y, cols):
    if not cols:
        return 0.0
    return normal_equations_ols(np.asarray(x)[:, list(cols)], y)[2]


def lmg_by_orderings(x, y):
    """Average incremental R^2 over all k! entry orders."""
    k = np.asarray(x).shape[1]
    cache = {}

    def r2(cols):
        key = frozenset(cols)
        if key not in cache:
            cache[key] = subset_r2_oracle(x, y, sorted(key))
        return cache[key]

    shares = np.zeros(k)
    perms = list(permutations(range(k)))
    for order in perms:
        entered = []
        for j in order:
            before = r2(entered)
            entered.append(j)
            shares[j] += r2(entered) - before
    return shares / len(perms)


def tau_b_bruteforce(x, y):
    n = len(x)
    conc = disc = tx = ty = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = x[i] - x[j]
            dy = y[i] - y[j]
            if dx == 0 and dy == 0:
                continue
            if dx == 0:
                tx += 1
            elif dy == 0:
                ty += 1
            elif (dx > 0) == (dy > 0):
                conc += 1
            else:
                disc += 1
    return (conc - disc) / math.sqrt((conc + disc + tx) * (conc + disc + ty))


def t_density(u, dof):
    logc = math.lgamma((dof + 1) / 2) - math.lgamma(dof / 2) - 0.5 * math.log(dof * math.pi)
    return math.exp(logc - (dof + 1) / 2 * math.log1p(u * u / dof))


def t_two_sided_quad(t, dof):
    """1 - 2 * integral_0^|t| f(u) du."""
    t = abs(t)
    if t == 0:
        return 1.0
    val, _ = integrate.quad(t_density, 0.0, t, args=(dof,), epsabs=1e-14, epsrel=1e-13, limit=500)
    return 1.0 - 2.0 * val


def normal_two_sided(t):
    return math.erfc(abs(t) / math.sqrt(2))
