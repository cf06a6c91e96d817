r"""Interaction switch functions.

For two regularized fronts ``e1*omega01((-x)/eps) + e2*omega02((-x+a)/eps)`` on a
background ``u0`` the weak expansion of ``f(u)`` carries two coefficients
``B1(rho)`` and ``B2(-rho)``, ``rho = a/eps``:

.. math::

    B_1(\rho) = \int \big[f'(u_0 + e_1\omega_{01}(z) + e_2\omega_{02}(z+\rho))
                 - f'(u_0 + e_1\omega_{01}(z))\big]\, e_1\omega_1(z)\,dz,

    B_2(-\rho) = \int \big[f'(u_0 + e_1\omega_{01}(z-\rho) + e_2\omega_{02}(z))
                 - f'(u_0 + e_2\omega_{02}(z))\big]\, e_2\omega_2(z)\,dz.

Their sum is the constant ``f(u0+e1+e2) - f(u0+e1) - f(u0+e2) + f(u0)``.
For ``f = u**2, u0 = 0, e1 = e2 = 1`` they reduce (up to the factor 2) to the
convolution CDFs computed by :func:`b1_hopf` and :func:`b2_hopf`.

Throughout, ``b2_*`` functions take ``rho`` and return ``B2(-rho)``.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import special

from .errors import DomainError, KernelDecayError, NoRootError
from .interpolation import monotone_hermite
from .quadrature import integrate

QUAD_TOL = 1e-11
SATURATION_TOL = 1e-8


def interaction_constant(flux, u0, e1, e2):
    """``f(u0+e1+e2) - f(u0+e1) - f(u0+e2) + f(u0)``; the limit ``B1(+inf)``."""
    f = flux.f
    return float(f(u0 + e1 + e2) - f(u0 + e1) - f(u0 + e2) + f(u0))


def _both_gaussian(k1, k2):
    return k1.family == "gaussian" and k2.family == "gaussian"


def _gauss_params(k1, k2):
    sigma = np.sqrt(0.5 * (k1.width ** 2 + k2.width ** 2))
    return k2.shift - k1.shift, sigma


def _scalar(out, rho):
    return float(out) if np.ndim(rho) == 0 else out


# -- Hopf (convolution CDF) form ------------------------------------------

def b1_hopf(k1, k2, rho):
    """``B1(rho) = int_{-inf}^{rho} (check(omega1) * omega2)``."""
    rho = np.asarray(rho, dtype=float)
    if _both_gaussian(k1, k2):
        mean, sigma = _gauss_params(k1, k2)
        return _scalar(special.ndtr((rho - mean) / sigma), rho)
    r = np.atleast_1d(rho)
    lo, hi = k1.support
    out = integrate(lambda z: k2.cdf(z[None, :] + r[:, None]) * k1.pdf(z)[None, :],
                    lo, hi, tol=QUAD_TOL)
    return _scalar(out.reshape(rho.shape), rho)


def b2_hopf(k1, k2, rho):
    """``B2(-rho) = int_{-inf}^{-rho} (omega1 * check(omega2))``."""
    rho = np.asarray(rho, dtype=float)
    if _both_gaussian(k1, k2):
        mean, sigma = _gauss_params(k1, k2)
        return _scalar(special.ndtr((mean - rho) / sigma), rho)
    r = np.atleast_1d(rho)
    lo, hi = k2.support
    out = integrate(lambda z: k1.cdf(z[None, :] - r[:, None]) * k2.pdf(z)[None, :],
                    lo, hi, tol=QUAD_TOL)
    return _scalar(out.reshape(rho.shape), rho)


def hopf_density(k1, k2, rho):
    """``dB1/drho = (check(omega1) * omega2)(rho)``."""
    rho = np.asarray(rho, dtype=float)
    if _both_gaussian(k1, k2):
        mean, sigma = _gauss_params(k1, k2)
        d = (rho - mean) / sigma
        return _scalar(np.exp(-0.5 * d * d) / (sigma * np.sqrt(2.0 * np.pi)), rho)
    r = np.atleast_1d(rho)
    lo, hi = k1.support
    out = integrate(lambda z: k2.pdf(z[None, :] + r[:, None]) * k1.pdf(z)[None, :],
                    lo, hi, tol=QUAD_TOL)
    return _scalar(out.reshape(rho.shape), rho)


# -- general flux ---------------------------------------------------------

def _check_amplitudes(e1, e2):
    if not (e1 > 0 and e2 > 0):
        raise DomainError(f"amplitudes must be positive, got e1={e1}, e2={e2}")


def b1_general(flux, u0, e1, e2, k1, k2, rho):
    """``B1(rho)`` for an arbitrary flux, by adaptive quadrature."""
    _check_amplitudes(e1, e2)
    rho = np.asarray(rho, dtype=float)
    r = np.atleast_1d(rho)
    fp = flux.f_prime

    def integrand(z):
        base = u0 + e1 * k1.cdf(z)
        bumped = base[None, :] + e2 * k2.cdf(z[None, :] + r[:, None])
        return (fp(bumped) - fp(base)[None, :]) * (e1 * k1.pdf(z))[None, :]

    lo, hi = k1.support
    out = integrate(integrand, lo, hi, tol=QUAD_TOL)
    return _scalar(out.reshape(rho.shape), rho)


def b2_general(flux, u0, e1, e2, k1, k2, rho):
    """``B2(-rho)`` for an arbitrary flux, by adaptive quadrature."""
    _check_amplitudes(e1, e2)
    rho = np.asarray(rho, dtype=float)
    r = np.atleast_1d(rho)
    fp = flux.f_prime

    def integrand(z):
        base = u0 + e2 * k2.cdf(z)
        bumped = base[None, :] + e1 * k1.cdf(z[None, :] - r[:, None])
        return (fp(bumped) - fp(base)[None, :]) * (e2 * k2.pdf(z))[None, :]

    lo, hi = k2.support
    out = integrate(integrand, lo, hi, tol=QUAD_TOL)
    return _scalar(out.reshape(rho.shape), rho)


def b1_general_derivative(flux, u0, e1, e2, k1, k2, rho):
    """``dB1/drho = e1 e2 int f''(u0 + e1 w01(z) + e2 w02(z+rho)) w1(z) w2(z+rho) dz``."""
    _check_amplitudes(e1, e2)
    rho = np.asarray(rho, dtype=float)
    r = np.atleast_1d(rho)
    fpp = flux.f_double_prime

    def integrand(z):
        shifted = z[None, :] + r[:, None]
        u = u0 + e1 * k1.cdf(z)[None, :] + e2 * k2.cdf(shifted)
        return fpp(u) * (k1.pdf(z)[None, :] * k2.pdf(shifted))

    lo, hi = k1.support
    out = e1 * e2 * integrate(integrand, lo, hi, tol=QUAD_TOL)
    return _scalar(out.reshape(rho.shape), rho)


# -- tables -----------------------------------------------------------------

@dataclass(frozen=True)
class SwitchTable:
    """Tabulated ``B1`` (and ``B2(-rho)``) on a sorted ``rho`` grid.

    ``kind`` is ``"hopf"`` for the normalized convolution form (limits 0 and
    1) or ``"general"`` for the flux-dependent form (limits 0 and
    ``constant``).  Evaluation outside the grid returns the saturation limits.
    """

    rho: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    db1: np.ndarray
    constant: float
    kind: str
    context: dict
    exact: Callable = field(default=None, repr=False, compare=False)
    _spline: object = field(default=None, init=False, repr=False, compare=False)
    _spline_b2: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_spline", monotone_hermite(self.rho, self.b1, self.db1))
        object.__setattr__(self, "_spline_b2", monotone_hermite(-self.rho[::-1], self.b2[::-1], self.db1[::-1]))

    @property
    def saturation_limits(self):
        return (0.0, self.constant)

    @property
    def interpolation(self):
        return "monotone cubic Hermite (exact slopes, Fritsch-Carlson limited)"

    def __call__(self, rho):
        rho = np.asarray(rho, dtype=float)
        out = self._spline(np.clip(rho, self.rho[0], self.rho[-1]))
        out = np.where(rho < self.rho[0], 0.0, np.where(rho > self.rho[-1], self.constant, out))
        return _scalar(out, rho)

    def derivative(self, rho):
        rho = np.asarray(rho, dtype=float)
        inside = (rho >= self.rho[0]) & (rho <= self.rho[-1])
        out = np.where(inside, self._spline(np.clip(rho, self.rho[0], self.rho[-1]), 1), 0.0)
        return _scalar(out, rho)

    def b2_at(self, rho):
        """Interpolated ``B2(-rho)``."""
        rho = np.asarray(rho, dtype=float)
        out = self._spline_b2(-np.clip(rho, self.rho[0], self.rho[-1]))
        out = np.where(rho < self.rho[0], self.constant, np.where(rho > self.rho[-1], 0.0, out))
        return _scalar(out, rho)

    def rows(self):
        """``(rho, b1, b2, sum_residual)`` rows for CSV export."""
        resid = self.b1 + self.b2 - self.constant
        return np.column_stack([self.rho, self.b1, self.b2, resid])


def _auto_range(k1, k2):
    lo1, hi1 = k1.support
    lo2, hi2 = k2.support
    return 1.05 * max(abs(lo2 - hi1), abs(hi2 - lo1))


def _default_count(k1, k2, rho_max):
    h = min(k1.width, k2.width) / 80.0
    n = int(np.ceil(2 * rho_max / h)) + 1
    return max(n + (n + 1) % 2, 65)


def _build(evaluate, constant, k1, k2, rho_max, n, kind, context):
    radius_sum = k1.radius + k2.radius + abs(k1.shift) + abs(k2.shift)
    if rho_max is None:
        rho_max = _auto_range(k1, k2)
    if n is not None and n < 64:
        raise DomainError(f"switch table needs n >= 64 nodes, got {n}")
    while True:
        ends = np.array([-rho_max, rho_max])
        b1_ends, _, b2_ends = evaluate(ends)
        scale = max(1.0, abs(constant))
        if (abs(b1_ends[0]) < SATURATION_TOL and abs(b1_ends[1] - constant) < SATURATION_TOL
                and abs(b2_ends[0] - constant) < SATURATION_TOL and abs(b2_ends[1]) < SATURATION_TOL):
            break
        rho_max *= 1.5
        if rho_max > 100.0 * radius_sum:
            raise KernelDecayError(
                f"switch function not saturated within 100*(R1+R2) = {100 * radius_sum:.3g}; "
                f"endpoint residuals {abs(b1_ends[0]):.2e}, {abs(b1_ends[1] - constant) / scale:.2e}")
    count = n if n is not None else _default_count(k1, k2, rho_max)
    rho = np.linspace(-rho_max, rho_max, count)
    b1, db1, b2 = evaluate(rho)
    return SwitchTable(rho, b1, b2, db1, constant, kind, context,
                       exact=lambda r: evaluate(np.atleast_1d(np.asarray(r, float)))[:2])


def build_hopf_table(k1, k2, rho_max=None, n=None):
    """Table of the normalized (Hopf) switch ``B1(rho)`` with limits 0 and 1."""

    def evaluate(r):
        return b1_hopf(k1, k2, r), hopf_density(k1, k2, r), b2_hopf(k1, k2, r)

    context = {"flux": "hopf", "u0": None, "e1": None, "e2": None,
               "kernels": (k1.to_config(), k2.to_config())}
    return _build(evaluate, 1.0, k1, k2, rho_max, n, "hopf", context)


def build_switch_table(flux, u0, e1, e2, k1, k2, rho_max=None, n=None):
    """Table of the general switch ``B1(rho)`` for constant ``u0, e1, e2``."""
    _check_amplitudes(e1, e2)
    constant = interaction_constant(flux, u0, e1, e2)

    def evaluate(r):
        return (b1_general(flux, u0, e1, e2, k1, k2, r),
                b1_general_derivative(flux, u0, e1, e2, k1, k2, r),
                b2_general(flux, u0, e1, e2, k1, k2, r))

    context = {"flux": flux.label, "u0": u0, "e1": e1, "e2": e2,
               "kernels": (k1.to_config(), k2.to_config())}
    return _build(evaluate, constant, k1, k2, rho_max, n, "general", context)


def solve_switch_root(table, target, tol=1e-10):
    """Unique ``rho0`` with ``B1(rho0) = target``.

    Bisection on the monotone interpolant, then Newton steps on the direct
    quadrature (when the table carries it), safeguarded by the bracket.
    """
    lo_lim, hi_lim = table.saturation_limits
    if not lo_lim < target < hi_lim:
        raise NoRootError(f"target {target} outside the open switch range ({lo_lim}, {hi_lim})")
    idx = int(np.searchsorted(table.b1, target))
    idx = min(max(idx, 1), table.rho.size - 1)
    a, b = table.rho[idx - 1], table.rho[idx]
    if table(a) > target:
        a = table.rho[0]
    if table(b) < target:
        b = table.rho[-1]
    for _ in range(200):
        mid = 0.5 * (a + b)
        if table(mid) < target:
            a = mid
        else:
            b = mid
        if b - a < 1e-13 * max(1.0, abs(mid)):
            break
    rho0 = 0.5 * (a + b)
    if table.exact is None:
        return rho0

    def g(r):
        v, d = table.exact(r)
        return float(v[0]) - target, float(d[0])

    lo, hi = rho0 - 1e-3, rho0 + 1e-3
    while g(lo)[0] > 0:
        lo -= 2 * (hi - lo)
    while g(hi)[0] < 0:
        hi += 2 * (hi - lo)
    r = rho0
    for _ in range(60):
        val, der = g(r)
        if abs(val) < tol:
            return r
        if val < 0:
            lo = r
        else:
            hi = r
        step = r - val / der if der > 0 else None
        r = step if step is not None and lo < step < hi else 0.5 * (lo + hi)
    raise NoRootError(f"switch root refinement stalled at rho={r} (residual {val:.3e})")
