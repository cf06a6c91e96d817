r"""Smooth ansatz, singular limit, single-shock propagation and the "naive" W gallery.

The smooth ansatz is

.. math::

    u^*(x, t, \varepsilon) = u_0 + \sum_k e_k\,\omega_{0k}\big((-x + \phi_k(t,\varepsilon))/\varepsilon\big)

and its singular limit replaces each CDF by the Heaviside step, with the
convention that the value at a jump is the left limit.
"""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import optimize
from scipy.integrate import solve_ivp

from . import phase_dynamics as pd
from .errors import DomainError, ExistenceHorizonError
from .flux import existence_time_bound, rh_speed


@dataclass(frozen=True)
class SmoothAnsatz:
    """Background ``u0`` plus smoothed steps with phases ``phases(t) -> (phi_1, ...)``.

    ``velocities(t)`` returns the matching phase derivatives.
    """

    flux: object
    u0: float
    amplitudes: tuple
    kernels: tuple
    phases: Callable = field(repr=False)
    velocities: Callable = field(repr=False)
    eps: float
    state: object = None

    def __post_init__(self):
        if not self.eps > 0:
            raise DomainError(f"eps must be positive, got {self.eps}")
        if len(self.amplitudes) != len(self.kernels):
            raise DomainError("one kernel per front is required")

    def _args(self, x, t):
        x = np.asarray(x, dtype=float)
        return x, [(p - x) / self.eps for p in self.phases(t)]

    def __call__(self, x, t):
        x, zs = self._args(x, t)
        out = self.u0 + sum(e * k.cdf(z) for e, k, z in zip(self.amplitudes, self.kernels, zs))
        return float(out) if np.ndim(out) == 0 else out

    def dt(self, x, t):
        x, zs = self._args(x, t)
        vel = self.velocities(t)
        return sum(e * k.pdf(z) * v / self.eps
                   for e, k, z, v in zip(self.amplitudes, self.kernels, zs, vel))

    def dx(self, x, t):
        x, zs = self._args(x, t)
        return -sum(e * k.pdf(z) / self.eps for e, k, z in zip(self.amplitudes, self.kernels, zs))

    def fronts(self, t):
        return tuple(float(p) for p in self.phases(t))

    @property
    def half_widths(self):
        """Distances from each phase to the edges of its smoothed layer."""
        return tuple(self.eps * max(abs(a), abs(b))
                     for a, b in (k.support for k in self.kernels))


def interaction_ansatz(ps, kernels, eps, flux=None):
    """Two-front ansatz driven by a :class:`~weakshock.phase_dynamics.PhaseSet`."""
    s = ps.state
    return SmoothAnsatz(flux, s.u0, (s.e1, s.e2), tuple(kernels),
                        lambda t: ps.full_phase(t, eps),
                        lambda t: ps.phase_velocity(t, eps), eps, s)


def single_wave_ansatz(flux, u0, e, x0, kernel, eps, speed=None):
    """One smoothed constant-state shock moving with ``speed`` (RH by default)."""
    c = rh_speed(flux, u0 + e, u0) if speed is None else float(speed)
    return SmoothAnsatz(flux, u0, (e,), (kernel,),
                        lambda t: (x0 + c * np.asarray(t, float),),
                        lambda t: (c,), eps)


def eval_smooth_ansatz(A, x, t):
    return A(x, t)


# -- singular limit -----------------------------------------------------------

@dataclass(frozen=True)
class LimitSolution:
    """Piecewise-constant ``u0 + sum_k e_k H(phi_k(t) - x)``."""

    flux: object
    u0: float
    amplitudes: tuple
    phases: Callable = field(repr=False)
    state: object = None

    def __call__(self, x, t):
        x = np.asarray(x, dtype=float)
        out = self.u0 + sum(e * (x <= p) for e, p in zip(self.amplitudes, self.phases(t)))
        return float(out) if np.ndim(out) == 0 else out.astype(float)

    def cell_averages(self, edges, t):
        """Exact cell averages over ``[edges[i], edges[i+1]]``."""
        edges = np.asarray(edges, dtype=float)
        lo, hi = edges[:-1], edges[1:]
        out = np.full(lo.shape, float(self.u0))
        for e, p in zip(self.amplitudes, self.phases(t)):
            out += e * np.clip((p - lo) / (hi - lo), 0.0, 1.0)
        return out

    def jumps(self, t):
        """``(position, left, right)`` for each distinct front, left to right."""
        ph = np.asarray(self.phases(t), dtype=float)
        out = []
        for p in np.unique(ph):
            e = sum(a for a, q in zip(self.amplitudes, ph) if q == p)
            right = self(np.nextafter(p, np.inf), t)
            out.append((float(p), right + e, right))
        return out


def two_shock_limit(flux, s, hopf_path=False):
    if hopf_path:
        fn = lambda t: pd.hopf_limit_phases(s, t)
    else:
        fn = lambda t: pd.limit_phases(flux, s, t)
    return LimitSolution(flux, s.u0, (s.e1, s.e2), fn, s)


def single_shock_limit(flux, u0, e, x0):
    c = rh_speed(flux, u0 + e, u0)
    return LimitSolution(flux, u0, (e,), lambda t: (x0 + c * np.asarray(t, float),))


def eval_limit_solution(L, x, t):
    if np.any(np.asarray(t) < 0):
        raise DomainError("limit solution is defined for t >= 0")
    return L(x, t)


# -- single shock on a smooth background --------------------------------------

def _foot(flux, u_init, x, t, guess):
    """Foot ``xi`` of the characteristic through ``(x, t)``: ``xi + f'(u_init(xi)) t = x``."""
    if t == 0:
        return x
    g = lambda xi: xi + flux.f_prime(u_init(xi)) * t - x
    width = max(1.0, abs(flux.f_prime(u_init(guess))) * t)
    a, b = guess - width, guess + width
    for _ in range(60):
        if g(a) <= 0 <= g(b):
            break
        a, b = a - 2 * width, b + 2 * width
        width *= 2
    else:
        raise ExistenceHorizonError(f"no characteristic foot for ({x}, {t})")
    return optimize.brentq(g, a, b, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=200)


def characteristic_value(flux, u_init, x, t):
    """Smooth solution at ``(x, t)`` by shooting back along the characteristic."""
    xi = _foot(flux, u_init, float(x), float(t), float(x))
    return float(u_init(xi))


@dataclass(frozen=True)
class SingleShockSolution:
    t_grid: np.ndarray
    front: np.ndarray
    x_grid: np.ndarray
    field: np.ndarray     # shape (len(t_grid), len(x_grid))
    horizon: float


def single_shock_solve(flux, s, t_grid, x_grid, dt=1e-3, horizon_grid=None):
    """Front and field for ``u0_init + e_init H(x0 - x)`` before characteristics cross.

    The background left and right of the front is carried by characteristics
    (each sample point solved by bisection on its foot); the front obeys
    ``phi' = [f(u_left) - f(u_right)] / (u_left - u_right)``, integrated with
    classical RK4 at step ``dt`` and sampled at ``t_grid``.  The existence
    horizon is measured on ``horizon_grid`` (default: ``x0 +- 10`` at spacing
    0.01, plus ``x_grid``).
    """
    t_grid = np.asarray(t_grid, dtype=float)
    x_grid = np.asarray(x_grid, dtype=float)
    if np.any(t_grid < 0) or np.any(np.diff(t_grid) < 0):
        raise DomainError("t_grid must be nonnegative and nondecreasing")
    if horizon_grid is None:
        grid = np.union1d(x_grid, s.x0 + np.linspace(-10.0, 10.0, 2001))
    else:
        grid = np.asarray(horizon_grid, dtype=float)
    horizon = existence_time_bound(flux, s, grid)
    if t_grid.size and t_grid[-1] >= horizon:
        raise ExistenceHorizonError(
            f"requested t={t_grid[-1]} reaches the characteristic crossing time {horizon:.6g}")
    left_init = lambda xi: s.u0_init(xi) + s.e_init(xi)
    right_init = s.u0_init

    def speed(x, t):
        ul = characteristic_value(flux, left_init, x, t)
        ur = characteristic_value(flux, right_init, x, t)
        return float(rh_speed(flux, ul, ur))

    front = np.empty_like(t_grid)
    x, t = float(s.x0), 0.0
    for i, target in enumerate(t_grid):
        while t < target:
            h = min(dt, target - t)
            k1 = speed(x, t)
            k2 = speed(x + 0.5 * h * k1, t + 0.5 * h)
            k3 = speed(x + 0.5 * h * k2, t + 0.5 * h)
            k4 = speed(x + h * k3, t + h)
            x += h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0
            t += h
        front[i] = x
    field_values = np.empty((t_grid.size, x_grid.size))
    for i, (tt, p) in enumerate(zip(t_grid, front)):
        for j, xx in enumerate(x_grid):
            init = left_init if xx <= p else right_init
            field_values[i, j] = characteristic_value(flux, init, xx, tt)
    return SingleShockSolution(t_grid, front, x_grid, field_values, horizon)


# -- the naive W solution -------------------------------------------------------

def _check_a(a):
    if not a > 1:
        raise DomainError(f"naive W construction needs a > 1, got {a}")


def naive_time_range(a):
    """Open interval of the time parameter on which ``W`` is defined."""
    _check_a(a)
    return (-0.5 / a, 0.5 * (a + 2.0))


def naive_phi(a, t):
    """Jump position ``phi(t)`` solving ``phi' = a phi/(1+2at) - 1``, ``phi(0) = 1``.

    With ``r = sqrt(1 + 2at)`` the equation becomes ``d(phi/r)/dr = -1/a``,
    so ``phi = (1 + 1/a) r - r**2/a``; it vanishes at ``t = (a+2)/2`` where
    the two jumps meet again.
    """
    lo, hi = naive_time_range(a)
    t = np.asarray(t, dtype=float)
    if np.any(t <= lo) or np.any(t >= hi):
        raise DomainError(f"t must lie in ({lo}, {hi}) for a={a}")
    r = np.sqrt(1.0 + 2.0 * a * t)
    out = (1.0 + 1.0 / a) * r - r * r / a
    return float(out) if out.ndim == 0 else out


def naive_phi_numeric(a, t_eval, rtol=1e-11):
    """``phi`` on ``t_eval >= 0`` by direct integration of the Rankine-Hugoniot ODE."""
    lo, hi = naive_time_range(a)
    t_eval = np.asarray(t_eval, dtype=float)
    if np.any(t_eval < 0) or np.any(t_eval >= hi):
        raise DomainError(f"t must lie in [0, {hi}) for a={a}")
    sol = solve_ivp(lambda t, y: a * y / (1.0 + 2.0 * a * t) - 1.0, (0.0, float(t_eval.max())),
                    [1.0], t_eval=np.sort(t_eval), rtol=rtol, atol=1e-13, method="DOP853")
    out = np.empty_like(t_eval)
    out[np.argsort(t_eval)] = sol.y[0]
    return out


def naive_phi_rate(a, t):
    phi = naive_phi(a, t)
    return a * phi / (1.0 + 2.0 * a * np.asarray(t, float)) - 1.0


def naive_W_solution(a, t, x):
    """``1`` for ``x <= -phi``, ``a x/(1+2at)`` on ``(-phi, phi]``, ``-1`` beyond."""
    phi = naive_phi(a, t)
    x = np.asarray(x, dtype=float)
    middle = a * x / (1.0 + 2.0 * a * t)
    out = np.where(x <= -phi, 1.0, np.where(x <= phi, middle, -1.0))
    return float(out) if out.ndim == 0 else out


def naive_W_initial(a, x):
    """``W(x, 0)``: ``1`` left of ``-1``, ``ax`` on ``[-1, 1]``, ``-1`` right of ``1``."""
    _check_a(a)
    x = np.asarray(x, dtype=float)
    return np.where(x < -1.0, 1.0, np.where(x <= 1.0, a * x, -1.0))


def naive_pasted_solution(a, t, x):
    """The merging pair ``H(-x+t-1) - H(x+t-1)`` up to ``t = 1``, then
    ``W(x, t - 1/(2a) - 1)``.

    The time argument of ``W`` is shifted into its negative range, where the
    two jumps re-emerge from a single point as ``t -> 1 + 0``.
    """
    _check_a(a)
    x = np.asarray(x, dtype=float)
    if t <= 1.0:
        out = np.where(x <= t - 1.0, 1.0, 0.0) - np.where(x > 1.0 - t, 1.0, 0.0)
        return float(out) if out.ndim == 0 else out
    return naive_W_solution(a, t - 0.5 / a - 1.0, x)
