"""Adaptive quadrature on (0, 1) with vectorized interval batching.

Each interval is estimated by a Gauss-Legendre 21-point rule with the
10-point rule embedded for the error estimate; intervals whose error
exceeds their share of the tolerance are bisected, all pending intervals
being evaluated in one vectorized call per round.  Nodes come from numpy at
import time, so there are no hard-coded tables.  Endpoints are never
evaluated, which lets integrable endpoint singularities through.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_XG10, _WG10 = np.polynomial.legendre.leggauss(10)
_XG21, _WG21 = np.polynomial.legendre.leggauss(21)


class QuadratureError(RuntimeError):
    """Requested tolerance not reached within the refinement budget."""


@dataclass(frozen=True)
class QuadConfig:
    rel_tol: float = 1e-8
    abs_tol: float = 1e-300
    max_depth: int = 48
    max_intervals: int = 20000

    def doubled(self) -> "QuadConfig":
        """Config for self-convergence checks: twice the depth, tighter tol."""
        return QuadConfig(self.rel_tol * 1e-2, self.abs_tol, self.max_depth * 2, self.max_intervals * 4)


def adaptive_quad(f, a: float, b: float, config: QuadConfig = QuadConfig()) -> float:
    """Integrate a vectorized callable over (a, b).

    f receives a flat numpy array of abscissae and must return values of the
    same shape.  Raises QuadratureError when the error estimate stalls above
    tolerance.
    """

    def panels(lo: np.ndarray, hi: np.ndarray):
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        x10 = mid[:, None] + half[:, None] * _XG10[None, :]
        x21 = mid[:, None] + half[:, None] * _XG21[None, :]
        vals = f(np.concatenate([x10.ravel(), x21.ravel()]))
        v10 = vals[: x10.size].reshape(x10.shape)
        v21 = vals[x10.size :].reshape(x21.shape)
        g10 = (v10 * _WG10[None, :]).sum(axis=1) * half
        g21 = (v21 * _WG21[None, :]).sum(axis=1) * half
        return g21, np.abs(g21 - g10)

    lo = np.array([float(a)])
    hi = np.array([float(b)])
    vals, errs = panels(lo, hi)
    done_val = 0.0
    done_err = 0.0
    for _ in range(config.max_depth):
        total = done_val + vals.sum()
        total_err = done_err + errs.sum()
        tol = max(config.abs_tol, config.rel_tol * abs(total))
        if total_err <= tol or not np.isfinite(total_err):
            break
        # keep converged panels, bisect the rest
        share = tol / max(1, 2 * len(vals))
        settled = errs <= share
        done_val += vals[settled].sum()
        done_err += errs[settled].sum()
        lo, hi = lo[~settled], hi[~settled]
        if len(lo) == 0:
            break
        if 2 * len(lo) > config.max_intervals:
            raise QuadratureError("interval budget exhausted")
        mid = 0.5 * (lo + hi)
        lo = np.concatenate([lo, mid])
        hi = np.concatenate([mid, hi])
        vals, errs = panels(lo, hi)
    total = done_val + vals.sum()
    total_err = done_err + errs.sum()
    if not np.isfinite(total):
        raise QuadratureError("integrand produced non-finite values")
    if total_err > 10 * max(config.abs_tol, config.rel_tol * abs(total)):
        raise QuadratureError(f"error estimate {total_err:.2e} above tolerance")
    return float(total)
