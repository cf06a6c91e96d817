r"""Two-shock interaction: merge kinematics, the fast variable and phase corrections.

Two fronts with constant states ``u0 + e1 + e2 | u0 + e2 | u0`` start at
``x1_0 < x2_0``.  The smoothed phases are sought as

.. math::

    \phi_k(t, \varepsilon) = \phi_{k0}(t) + \psi_0(t)\,\phi_{k1}(\tau),
    \qquad \tau = \psi_0(t)/\varepsilon,\quad \psi_0 = \phi_{20} - \phi_{10},

where ``phi_k0`` are the non-interacting Rankine-Hugoniot lines (extended past
the merge time).  The scaled separation ``rho = tau (1 + phi_21 - phi_11)``
obeys the autonomous ODE ``rho' = F(rho)`` with ``rho/tau -> 1`` as
``tau -> +inf``, and ``Phi_k(tau) = tau phi_k1(tau)`` solves
``Phi_k' = g_k(rho(tau))``.

The library carries ``Phi_k`` rather than ``phi_k1``: the product
``psi0 * phi_k1(psi0/eps) = eps * Phi_k(tau)`` is regular at the merge time
while ``phi_k1`` itself has a simple pole at ``tau = 0``.  ``Phi_k`` is fixed
by ``Phi_k(+inf) = 0``, which makes ``Phi_2 - Phi_1 = rho - tau`` hold
identically; then ``Phi_1 = -e2 (rho - tau)/(e1 + e2)`` and
``Phi_2 = e1 (rho - tau)/(e1 + e2)``.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from . import switch as sw
from .errors import DomainError, NonMergingError, NoRootError, StepSizeError


@dataclass(frozen=True)
class TwoShockState:
    """Riemann-type data ``u0 + e1 H(x1_0 - x) + e2 H(x2_0 - x)`` (left value at a jump)."""

    u0: float
    e1: float
    e2: float
    x1_0: float
    x2_0: float

    def __post_init__(self):
        if not (self.e1 > 0 and self.e2 > 0):
            raise DomainError(f"amplitudes must be positive (stability), got e1={self.e1}, e2={self.e2}")
        if not self.x1_0 < self.x2_0:
            raise DomainError(f"need x1_0 < x2_0, got {self.x1_0}, {self.x2_0}")

    @property
    def states(self):
        """``(left, middle, right)`` constant states."""
        return (self.u0 + self.e1 + self.e2, self.u0 + self.e2, self.u0)

    def initial(self, x):
        x = np.asarray(x, dtype=float)
        return self.u0 + self.e1 * (x <= self.x1_0) + self.e2 * (x <= self.x2_0)


@dataclass(frozen=True)
class AffinePhase:
    """``x0 + speed * t``."""

    x0: float
    speed: float

    def __call__(self, t):
        return self.x0 + self.speed * np.asarray(t, dtype=float)


@dataclass(frozen=True)
class MergeEvent:
    t_star: float
    x_star: float
    pre_speeds: tuple
    post_speed: float


def _flux_values(flux, s):
    f = flux.f
    return (float(f(s.u0 + s.e1 + s.e2)), float(f(s.u0 + s.e1)),
            float(f(s.u0 + s.e2)), float(f(s.u0)))


def pre_interaction_phases(flux, s):
    """Speeds and Rankine-Hugoniot lines of the two fronts before they meet."""
    f123, _, f2, f0 = _flux_values(flux, s)
    speed1 = (f123 - f2) / s.e1
    speed2 = (f2 - f0) / s.e2
    return _lines(speed1, speed2, s)


def hopf_pre_interaction_phases(s):
    """Closed-form speeds ``2u0 + e1 + 2e2`` and ``2u0 + e2`` for ``f = u**2``."""
    return _lines(2 * s.u0 + s.e1 + 2 * s.e2, 2 * s.u0 + s.e2, s)


def _lines(speed1, speed2, s):
    if not speed1 > speed2:
        raise NonMergingError(f"lagging front speed {speed1} does not exceed leading speed {speed2}")
    return speed1, speed2, (AffinePhase(s.x1_0, speed1), AffinePhase(s.x2_0, speed2))


def merge_point(flux, s):
    """Merge time, position and the post-merge Rankine-Hugoniot speed."""
    f123, _, f2, f0 = _flux_values(flux, s)
    speed1, speed2, (line1, _) = pre_interaction_phases(flux, s)
    denom = s.e2 * f123 - (s.e1 + s.e2) * f2 + s.e1 * f0
    if denom == 0:
        raise NonMergingError("fronts are parallel; no merge time")
    t_star = s.e1 * s.e2 * (s.x2_0 - s.x1_0) / denom
    if not t_star > 0:
        raise NonMergingError(f"fronts diverge (t* = {t_star})")
    x_star = float(line1(t_star))
    post = (f123 - f0) / (s.e1 + s.e2)
    return MergeEvent(t_star, x_star, (speed1, speed2), post)


def hopf_merge_point(s):
    """Merge event for ``f = u**2`` from the closed-form speeds."""
    speed1, speed2, (line1, _) = hopf_pre_interaction_phases(s)
    t_star = (s.x2_0 - s.x1_0) / (s.e1 + s.e2)
    return MergeEvent(t_star, float(line1(t_star)), (speed1, speed2), 2 * s.u0 + s.e1 + s.e2)


def _limit(event, lines, t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("limit phases are defined for t >= 0")
    merged = event.x_star + event.post_speed * (t - event.t_star)
    after = t >= event.t_star
    p1 = np.where(after, merged, lines[0](t))
    p2 = np.where(after, merged, lines[1](t))
    if t.ndim == 0:
        return float(p1), float(p2)
    return p1, p2


def limit_phases(flux, s, t):
    """Piecewise-linear singular-limit phases; equal for ``t >= t*``."""
    return _limit(merge_point(flux, s), pre_interaction_phases(flux, s)[2], t)


def hopf_limit_phases(s, t):
    return _limit(hopf_merge_point(s), hopf_pre_interaction_phases(s)[2], t)


# -- fast-variable dynamics -----------------------------------------------

@dataclass(frozen=True)
class _Dynamics:
    """``F``, ``F'`` and the perturbation integrands ``g_k`` for one table."""

    table: object
    scale: float      # F = scale * (B1 - target)
    target: float     # B1(rho0)
    g_coef: tuple     # g_k = g_coef[k] * (C - B1)
    constant: float

    def F(self, rho):
        return self.scale * (self.table(rho) - self.target)

    def dF(self, rho):
        return self.scale * self.table.derivative(rho)

    def g(self, k, rho):
        return self.g_coef[k] * (self.constant - self.table(rho))

    def dg(self, k, rho):
        return -self.g_coef[k] * self.table.derivative(rho)


def _dynamics(table, s, flux):
    e1, e2 = s.e1, s.e2
    if table.kind == "hopf":
        # F = 2 B1 - 1; g_1 = 2 e2 (1 - B1)/(e1+e2), g_2 = -2 e1 (1 - B1)/(e1+e2)
        return _Dynamics(table, 2.0, 0.5, (2 * e2 / (e1 + e2), -2 * e1 / (e1 + e2)), 1.0)
    ctx = table.context
    for key in ("u0", "e1", "e2"):
        if ctx.get(key) is not None and not np.isclose(ctx[key], getattr(s, key), rtol=0, atol=1e-14):
            raise DomainError(f"switch table built for {key}={ctx[key]}, state has {getattr(s, key)}")
    f123, f1, f2, f0 = _flux_values(flux, s)
    denom = (f123 - f2) * e2 - (f2 - f0) * e1
    if not denom > 0:
        raise NonMergingError("fronts do not approach each other")
    target = ((f123 - f1) * e1 - (f1 - f0) * e2) / (e1 + e2)
    return _Dynamics(table, (e1 + e2) / denom, target, (e2 / denom, -e1 / denom), table.constant)


def switch_target(table, s, flux):
    """The value ``B1(rho0)`` at which the merged front moves with its RH speed."""
    return _dynamics(table, s, flux).target


def rhs(table, s, flux):
    """The right-hand side ``F(rho)`` as a vectorized callable."""
    return _dynamics(table, s, flux).F


@dataclass(frozen=True)
class RhoSolution:
    """``rho(tau)`` on an ascending grid over ``[-tau_max, tau_max]``.

    The values were produced by integrating from ``+tau_max`` downwards;
    ``rho(tau_max) = tau_max`` fixes the translation freedom of the
    autonomous equation.
    """

    tau_grid: np.ndarray
    rho_values: np.ndarray
    rho0: float
    F: object = field(repr=False, compare=False)
    dynamics: object = field(default=None, repr=False, compare=False)
    _spline: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        spline = CubicHermiteSpline(self.tau_grid, self.rho_values, self.F(self.rho_values))
        object.__setattr__(self, "_spline", spline)

    @property
    def tau_max(self):
        return float(self.tau_grid[-1])

    def __call__(self, tau):
        """``rho(tau)``; ``tau`` beyond ``tau_max`` continues as ``rho = tau`` and
        below ``-tau_max`` as the asymptote."""
        tau = np.asarray(tau, dtype=float)
        lo, hi = self.tau_grid[0], self.tau_grid[-1]
        out = self._spline(np.clip(tau, lo, hi))
        out = np.where(tau > hi, tau, np.where(tau < lo, self.rho_values[0], out))
        return float(out) if out.ndim == 0 else out


def _rk4_step(F, y, h):
    k1 = F(y)
    k2 = F(y + 0.5 * h * k1)
    k3 = F(y + 0.5 * h * k2)
    k4 = F(y + h * k3)
    return y + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0


def solve_rho(table, s, flux, tau_max=50.0, step=0.01, check_tol=1e-6):
    """Integrate ``rho' = F(rho)`` backward from ``rho(tau_max) = tau_max``.

    Every step is re-integrated forward; a round-trip mismatch above
    ``check_tol`` raises :class:`StepSizeError`.
    """
    if not (tau_max > 0 and step > 0):
        raise DomainError("tau_max and step must be positive")
    dyn = _dynamics(table, s, flux)
    f_lo, f_hi = dyn.F(table.rho[0] - 1.0), dyn.F(table.rho[-1] + 1.0)
    if not (f_lo < 0 < f_hi):
        raise NoRootError(f"F has no sign change (F(-inf)={f_lo:.3g}, F(+inf)={f_hi:.3g})")
    rho0 = sw.solve_switch_root(table, dyn.target)
    n = int(round(tau_max / step))
    if n < 1 or not np.isclose(n * step, tau_max, rtol=1e-9):
        raise DomainError(f"tau_max={tau_max} is not a multiple of step={step}")
    tau = np.linspace(-tau_max, tau_max, 2 * n + 1)
    F = lambda r: float(dyn.F(r))
    rho = np.empty_like(tau)
    rho[-1] = tau_max
    for i in range(2 * n, 0, -1):
        h = tau[i - 1] - tau[i]
        rho[i - 1] = _rk4_step(F, rho[i], h)
        back = _rk4_step(F, rho[i - 1], -h)
        if abs(back - rho[i]) > check_tol:
            raise StepSizeError(
                f"step {step} unstable at tau={tau[i]:.3f}: round-trip mismatch {abs(back - rho[i]):.2e}")
    return RhoSolution(tau, rho, rho0, dyn.F, dyn)


@dataclass(frozen=True)
class Perturbations:
    """``Phi_k(tau) = tau phi_k1(tau)`` on the fast grid, with ``Phi_k(+inf) = 0``."""

    tau_grid: np.ndarray
    Phi1: np.ndarray
    Phi2: np.ndarray
    rho: RhoSolution = field(repr=False, compare=False)
    _splines: tuple = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        dyn = self.rho.dynamics
        r = self.rho.rho_values
        splines = tuple(CubicHermiteSpline(self.tau_grid, P, dyn.g(k, r))
                        for k, P in enumerate((self.Phi1, self.Phi2)))
        object.__setattr__(self, "_splines", splines)

    def Phi(self, k, tau):
        """``tau * phi_k1(tau)`` for ``k`` in ``(1, 2)``; linear beyond the grid on the left."""
        tau = np.asarray(tau, dtype=float)
        lo, hi = self.tau_grid[0], self.tau_grid[-1]
        spline = self._splines[k - 1]
        tail = (self.Phi1, self.Phi2)[k - 1][0] + self.rho.dynamics.g(k - 1, self.rho.rho_values[0]) * (tau - lo)
        out = np.where(tau > hi, 0.0, np.where(tau < lo, tail, spline(np.clip(tau, lo, hi))))
        return float(out) if out.ndim == 0 else out

    def dPhi(self, k, tau):
        """``d Phi_k / d tau = g_k(rho(tau))``."""
        return self.rho.dynamics.g(k - 1, self.rho(tau))

    def phi_k1(self, k, tau):
        """``Phi_k(tau)/tau``; NaN at ``tau = 0`` where it has a pole."""
        tau = np.asarray(tau, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(tau == 0.0, np.nan, self.Phi(k, tau) / tau)
        return float(out) if out.ndim == 0 else out

    def phi11(self, tau):
        return self.phi_k1(1, tau)

    def phi21(self, tau):
        return self.phi_k1(2, tau)

    def psi1(self, tau):
        return self.phi21(tau) - self.phi11(tau)

    def rows(self):
        with np.errstate(divide="ignore", invalid="ignore"):
            p11 = np.where(self.tau_grid == 0, np.nan, self.Phi1 / self.tau_grid)
            p21 = np.where(self.tau_grid == 0, np.nan, self.Phi2 / self.tau_grid)
        return np.column_stack([self.tau_grid, p11, p21])


def _cumulative_from_right(tau, g, dg):
    """``-int_tau^{tau_max} g`` by the derivative-corrected trapezoid rule."""
    h = np.diff(tau)
    pieces = 0.5 * h * (g[:-1] + g[1:]) + h * h / 12.0 * (dg[:-1] - dg[1:])
    out = np.zeros_like(tau)
    out[:-1] = -np.cumsum(pieces[::-1])[::-1]
    return out


def phase_perturbations(rho, table=None, flux=None, s=None):
    """Cumulative integrals ``Phi_k`` on the fast grid.

    ``table``, ``flux`` and ``s`` are accepted for symmetry with
    :func:`solve_rho`; the integrands travel with ``rho``.
    """
    dyn = rho.dynamics
    r = rho.rho_values
    F = dyn.F(r)
    Phis = [_cumulative_from_right(rho.tau_grid, dyn.g(k, r), dyn.dg(k, r) * F) for k in (0, 1)]
    return Perturbations(rho.tau_grid, Phis[0], Phis[1], rho)


@dataclass(frozen=True)
class PhaseSet:
    phi10: AffinePhase
    phi20: AffinePhase
    psi0: AffinePhase
    perturbations: Perturbations
    merge: MergeEvent
    state: TwoShockState

    @property
    def rho(self):
        return self.perturbations.rho

    def phi11(self, tau):
        return self.perturbations.phi11(tau)

    def phi21(self, tau):
        return self.perturbations.phi21(tau)

    def full_phase(self, t, eps):
        """``(phi_1(t, eps), phi_2(t, eps))``."""
        if not eps > 0:
            raise DomainError(f"eps must be positive, got {eps}")
        t = np.asarray(t, dtype=float)
        tau = self.psi0(t) / eps
        p = self.perturbations
        return self.phi10(t) + eps * p.Phi(1, tau), self.phi20(t) + eps * p.Phi(2, tau)

    def phase_velocity(self, t, eps):
        """``d phi_k/dt = phi_k0' + psi0' * d[tau phi_k1]/d tau``."""
        if not eps > 0:
            raise DomainError(f"eps must be positive, got {eps}")
        tau = self.psi0(np.asarray(t, dtype=float)) / eps
        p = self.perturbations
        return (self.phi10.speed + self.psi0.speed * p.dPhi(1, tau),
                self.phi20.speed + self.psi0.speed * p.dPhi(2, tau))


def full_phase(ps, t, eps):
    return ps.full_phase(t, eps)


def build_phase_set(flux, s, k1, k2, tau_max=50.0, step=0.01, table=None, hopf_path=False):
    """Table, fast-variable solution and phases for one two-shock state.

    ``hopf_path`` uses the normalized convolution switch and the closed-form
    Hopf speeds (only meaningful for ``f = u**2``).
    """
    # kinematics first: a non-merging state fails before any quadrature
    if hopf_path:
        _, _, (l1, l2) = hopf_pre_interaction_phases(s)
        event = hopf_merge_point(s)
    else:
        _, _, (l1, l2) = pre_interaction_phases(flux, s)
        event = merge_point(flux, s)
    if table is None:
        table = (sw.build_hopf_table(k1, k2) if hopf_path
                 else sw.build_switch_table(flux, s.u0, s.e1, s.e2, k1, k2))
    rho = solve_rho(table, s, flux, tau_max, step)
    pert = phase_perturbations(rho, table, flux, s)
    psi0 = AffinePhase(l2.x0 - l1.x0, l2.speed - l1.speed)
    return PhaseSet(l1, l2, psi0, pert, event, s)
