"""Monotone cubic Hermite interpolation with known slopes."""

import numpy as np
from scipy.interpolate import CubicHermiteSpline


def fritsch_carlson(x, y, m):
    """Limit Hermite slopes ``m`` so the cubic interpolant of nondecreasing ``(x, y)`` stays monotone."""
    m = np.maximum(np.asarray(m, dtype=float).copy(), 0.0)
    delta = np.diff(y) / np.diff(x)
    flat = delta <= 0.0
    m[:-1][flat] = 0.0
    m[1:][flat] = 0.0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        a = m[:-1] / delta
        b = m[1:] / delta
        r = a * a + b * b
    over = (~flat) & (r > 9.0)
    t = np.zeros_like(r)
    t[over] = 3.0 / np.sqrt(r[over])
    idx = np.nonzero(over)[0]
    m[idx] = t[idx] * a[idx] * delta[idx]
    m[idx + 1] = t[idx] * b[idx] * delta[idx]
    return m


def monotone_hermite(x, y, slopes):
    """``CubicHermiteSpline`` through nondecreasing data with limited ``slopes``."""
    return CubicHermiteSpline(x, y, fritsch_carlson(x, y, slopes))
