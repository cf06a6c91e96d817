"""Vectorized adaptive Gauss-Legendre quadrature.

The integrand is called with a 1-D array of abscissae and may return either an
array of the same shape or an array with extra leading axes (one integral per
leading index, e.g. one per value of a parameter).  All panels that are still
active are evaluated in a single call, so the number of Python-level calls is
the number of refinement levels rather than the number of panels.
"""

from functools import lru_cache

import numpy as np

from .errors import QuadratureError


@lru_cache(maxsize=None)
def _rule(order):
    return np.polynomial.legendre.leggauss(order)


def _panels(func, lo, hi, order):
    nodes, weights = _rule(order)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * nodes[None, :]
    values = np.asarray(func(x.ravel()), dtype=float)
    values = values.reshape(values.shape[:-1] + x.shape)
    return (values @ weights) * half


def integrate(func, a, b, *, tol=1e-11, order=16, initial=8, breakpoints=(),
              max_panels=200_000):
    """Integrate ``func`` over ``[a, b]`` to absolute tolerance ``tol``.

    Each panel is accepted when its ``order``-point estimate agrees with the
    sum over its two halves to within its share of ``tol`` (proportional to
    its length).  Interior ``breakpoints`` are inserted as panel edges.

    Returns a float, or an array when ``func`` returns extra leading axes.
    """
    a, b = float(a), float(b)
    if b == a:
        probe = np.asarray(func(np.array([a])), dtype=float)
        return np.zeros(probe.shape[:-1]) if probe.ndim > 1 else 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    cuts = sorted({float(p) for p in np.asarray(breakpoints, dtype=float).ravel() if a < p < b})
    edges = np.concatenate([
        np.linspace(lo, hi, initial + 1)[:-1]
        for lo, hi in zip([a] + cuts, cuts + [b])
    ] + [[b]])
    lo, hi = edges[:-1], edges[1:]
    length = b - a
    total = None
    n_done = 0
    while lo.size:
        mid = 0.5 * (lo + hi)
        coarse = _panels(func, lo, hi, order)
        fine = _panels(func, lo, mid, order) + _panels(func, mid, hi, order)
        err = np.abs(fine - coarse).reshape(-1, lo.size).max(axis=0)
        ok = err <= tol * (hi - lo) / length
        # panels already at rounding level cannot improve by splitting
        ok |= (hi - lo) <= 64 * np.finfo(float).eps * max(abs(a), abs(b), 1.0)
        accepted = fine[..., ok].sum(axis=-1)
        total = accepted if total is None else total + accepted
        n_done += lo.size
        if n_done > max_panels:
            raise QuadratureError(
                f"adaptive quadrature on [{a}, {b}] exceeded {max_panels} panels; "
                f"worst remaining panel error {err[~ok].max():.3e} vs tol {tol:.1e}")
        keep = ~ok
        lo, hi = (np.concatenate([lo[keep], mid[keep]]),
                  np.concatenate([mid[keep], hi[keep]]))
    total = sign * total
    return float(total) if np.ndim(total) == 0 else total


def cell_averages(func, edges, order=8):
    """Average of ``func`` over each cell ``[edges[i], edges[i+1]]`` (fixed Gauss-Legendre rule)."""
    edges = np.asarray(edges, dtype=float)
    lo, hi = edges[:-1], edges[1:]
    return _panels(func, lo, hi, order) / (hi - lo)
