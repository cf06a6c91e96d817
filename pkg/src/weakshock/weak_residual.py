r"""Distributional pairings and the weak residual of a smooth ansatz.

For a test function ``phi(x)`` the residual of ``u_t + f(u)_x = 0`` is

.. math::

    R(t) = \langle \partial_t u^*, \varphi\rangle - \langle f(u^*), \varphi'\rangle,

with ``d u*/dt`` taken analytically from the phase velocities.  A generalized
solution has ``R = O(eps)`` for every fixed ``phi``, uniformly in ``t``.
"""

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .quadrature import integrate

PAIR_TOL = 1e-10


def _bump(s):
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    inside = np.abs(s) < 1.0
    si = s[inside]
    out[inside] = np.exp(-1.0 / (1.0 - si * si))
    return out


_BUMP_MASS = integrate(_bump, -1.0, 1.0, tol=1e-14)


@dataclass(frozen=True)
class TestFunction:
    """Unit-mass bump ``exp(-1/(1 - ((x-c)/r)**2))`` supported on ``[c-r, c+r]``."""

    __test__ = False  # not a pytest class

    center: float
    radius: float
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.radius > 0:
            raise DomainError(f"test function radius must be positive, got {self.radius}")

    @property
    def support(self):
        return (self.center - self.radius, self.center + self.radius)

    def __call__(self, x):
        s = (np.asarray(x, dtype=float) - self.center) / self.radius
        return _bump(s) / (_BUMP_MASS * self.radius)

    def derivative(self, x):
        s = (np.asarray(x, dtype=float) - self.center) / self.radius
        out = np.zeros_like(s)
        inside = np.abs(s) < 1.0
        si = s[inside]
        out[inside] = _bump(si) * (-2.0 * si / (1.0 - si * si) ** 2)
        return out / (_BUMP_MASS * self.radius ** 2)


def pair(field_fn, tf, breakpoints=(), tol=PAIR_TOL):
    """``<field, tf>`` by adaptive quadrature over the support of ``tf``."""
    lo, hi = tf.support
    return integrate(lambda x: field_fn(x) * tf(x), lo, hi, tol=tol, breakpoints=breakpoints)


def _front_breaks(A, t):
    pts = []
    for p, w in zip(A.fronts(t), A.half_widths):
        pts += [p - w, p - 0.1 * w, p, p + 0.1 * w, p + w]
    return pts


def partially_covered(A, t, tf):
    """True when a smoothed front straddles an end of the test-function support."""
    lo, hi = tf.support
    return any((p - w < lo < p + w) or (p - w < hi < p + w)
               for p, w in zip(A.fronts(t), A.half_widths))


def residual(A, t, tf, tol=PAIR_TOL):
    """``<d_t u*, tf> - <f(u*), tf'>`` at time ``t``."""
    lo, hi = tf.support
    f = A.flux.f

    def integrand(x):
        return A.dt(x, t) * tf(x) - f(A(x, t)) * tf.derivative(x)

    return integrate(integrand, lo, hi, tol=tol, breakpoints=_front_breaks(A, t))


def residual_direct(A, t, tf, tol=PAIR_TOL):
    """``<d_t u* + f'(u*) d_x u*, tf>`` (no integration by parts)."""
    lo, hi = tf.support
    fp = A.flux.f_prime

    def integrand(x):
        return (A.dt(x, t) + fp(A(x, t)) * A.dx(x, t)) * tf(x)

    return integrate(integrand, lo, hi, tol=tol, breakpoints=_front_breaks(A, t))


def fit_order(eps, values):
    """Least-squares slope of ``log|values|`` against ``log eps``."""
    eps = np.asarray(eps, dtype=float)
    values = np.abs(np.asarray(values, dtype=float))
    return float(np.polyfit(np.log(eps), np.log(values), 1)[0])


@dataclass(frozen=True)
class ResidualReport:
    """Residuals indexed ``[eps, t, test function]`` with summary statistics.

    ``norms[i, j]`` is the maximum over the test-function family, a finite
    proxy for the supremum in the distributional estimate.  ``fitted_order``
    is the smallest per-time slope of ``log norms`` against ``log eps``;
    ``uniformity_gap`` is ``max_t norms/eps`` at the smallest ``eps`` and
    ``uniformity_ratio`` divides it by the corresponding minimum over ``t``.
    """

    eps_values: np.ndarray
    t_values: np.ndarray
    tf_ids: tuple
    residuals: np.ndarray
    flags: tuple = ()

    def __post_init__(self):
        if np.any(np.diff(self.eps_values) >= 0):
            raise DomainError("eps_values must be strictly decreasing")

    @property
    def norms(self):
        return np.max(np.abs(self.residuals), axis=2)

    @property
    def order_by_t(self):
        return np.array([fit_order(self.eps_values, self.norms[:, j]) for j in range(self.t_values.size)])

    @property
    def fitted_order(self):
        return float(np.min(self.order_by_t))

    @property
    def scaled(self):
        """``norms / eps`` at the smallest ``eps``, per time."""
        return self.norms[-1] / self.eps_values[-1]

    @property
    def uniformity_gap(self):
        return float(np.max(self.scaled))

    @property
    def uniformity_ratio(self):
        return float(np.max(self.scaled) / np.min(self.scaled))

    def summary(self):
        return {"fitted_order": self.fitted_order, "uniformity_gap": self.uniformity_gap,
                "uniformity_ratio": self.uniformity_ratio, "partial_coverage_flags": len(self.flags)}

    def to_csv(self, metadata=None):
        """CSV text: a ``#`` comment block, then ``eps,t,tf_id,residual`` rows."""
        buf = io.StringIO()
        for key, value in {**(metadata or {}), **self.summary()}.items():
            buf.write(f"# {key}: {value}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["eps", "t", "tf_id", "residual"])
        for i, e in enumerate(self.eps_values):
            for j, t in enumerate(self.t_values):
                for k, tid in enumerate(self.tf_ids):
                    w.writerow([repr(float(e)), repr(float(t)), tid, repr(float(self.residuals[i, j, k]))])
        return buf.getvalue()


def epsilon_sweep(make_ansatz, t_grid, tf_set, eps_list):
    """Residuals of ``make_ansatz(eps)`` over a geometric ``eps`` sequence."""
    eps = np.sort(np.asarray(eps_list, dtype=float))[::-1]
    if eps.size < 4 or np.any(eps <= 0):
        raise DomainError("epsilon_sweep needs at least four positive eps values")
    ratios = eps[1:] / eps[:-1]
    if np.any(ratios >= 1) or not np.allclose(ratios, ratios[0], rtol=1e-9):
        raise DomainError("eps values must form a strictly decreasing geometric sequence")
    t_grid = np.asarray(t_grid, dtype=float)
    out = np.empty((eps.size, t_grid.size, len(tf_set)))
    flags = []
    for i, e in enumerate(eps):
        A = make_ansatz(float(e))
        for j, t in enumerate(t_grid):
            for k, tf in enumerate(tf_set):
                out[i, j, k] = residual(A, float(t), tf)
                if partially_covered(A, float(t), tf):
                    flags.append((float(e), float(t), k))
    ids = tuple(tf.label or f"tf{k}" for k, tf in enumerate(tf_set))
    return ResidualReport(eps, t_grid, ids, out, tuple(flags))
