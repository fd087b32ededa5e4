"""Adaptive 1-D Gauss-Legendre quadrature with interval bisection."""

from __future__ import annotations

import numpy as np

LEAF_BUDGET = 2**20

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(8)


class QuadratureError(RuntimeError):
    """Subdivision budget exhausted before reaching the requested tolerance."""

    def __init__(self, message, value=float("nan"), error=float("inf")):
        super().__init__(message)
        self.value = value
        self.error = error


def _gauss(f, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * _NODES[None, :]
    return half * (f(x) @ _WEIGHTS)


def integrate(f, a: float, b: float, tol: float, budget: int = LEAF_BUDGET):
    """Integrate a vectorised ``f`` over [a, b]; returns (value, error_estimate).

    Each leaf carries the two-halves Gauss value and the difference from the
    single-interval value as its error estimate.  Leaves with the largest
    estimates are split until the summed estimate is below ``tol``.
    Integrable endpoint singularities (log-type) are handled by repeated
    bisection toward the endpoint.
    """
    lo = np.array([a], dtype=float)
    hi = np.array([b], dtype=float)
    whole = _gauss(f, lo, hi)
    done_value = 0.0
    done_error = 0.0
    while True:
        mid = 0.5 * (lo + hi)
        left = _gauss(f, lo, mid)
        right = _gauss(f, mid, hi)
        value = left + right
        err = np.abs(value - whole)
        total_err = done_error + err.sum()
        if total_err <= tol:
            return done_value + float(value.sum()), float(total_err)
        if lo.size * 2 > budget:
            raise QuadratureError(
                "quadrature failure: leaf budget exhausted",
                done_value + float(value.sum()),
                float(total_err),
            )
        # split the largest contributors until the rest fits in half the budget
        order = np.argsort(-err, kind="stable")
        cum = np.cumsum(err[order])
        rest = done_error + err.sum() - cum
        n_split = int(np.searchsorted(-rest, -0.5 * tol)) + 1
        n_split = min(max(n_split, 1), order.size)
        split = np.zeros(err.size, dtype=bool)
        split[order[:n_split]] = True
        keep = ~split
        done_value += float(value[keep].sum())
        done_error += float(err[keep].sum())
        lo, hi, mid = lo[split], hi[split], mid[split]
        whole = np.concatenate([left[split], right[split]])
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
