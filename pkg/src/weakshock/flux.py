"""Flux functions, Rankine-Hugoniot speeds and the smooth-background horizon."""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import optimize
from scipy.interpolate import PchipInterpolator

from .errors import DegenerateJumpError, DomainError


@dataclass(frozen=True)
class FluxFunction:
    """A flux ``f`` with its first two derivatives.

    ``argmin`` is the minimizer of ``f`` (``-inf``/``inf`` when ``f`` is
    monotone); the Godunov flux needs it for transonic rarefactions.
    """

    f: Callable
    f_prime: Callable
    f_double_prime: Callable
    label: str
    argmin: float = field(default=np.nan, compare=False)

    def __call__(self, u):
        return self.f(u)


def hopf():
    """``f(u) = u**2``."""
    return FluxFunction(lambda u: np.square(u), lambda u: 2.0 * np.asarray(u, float),
                        lambda u: np.full_like(np.asarray(u, float), 2.0), "hopf", 0.0)


def burgers():
    """``f(u) = u**2 / 2``."""
    return FluxFunction(lambda u: 0.5 * np.square(u), lambda u: np.asarray(u, float) * 1.0,
                        lambda u: np.ones_like(np.asarray(u, float)), "burgers", 0.0)


def quartic():
    """``f(u) = u**4``."""
    return FluxFunction(lambda u: np.asarray(u, float) ** 4, lambda u: 4.0 * np.asarray(u, float) ** 3,
                        lambda u: 12.0 * np.asarray(u, float) ** 2, "quartic", 0.0)


def exponential():
    """``f(u) = exp(u)``; monotone, so no sonic point."""
    return FluxFunction(np.exp, np.exp, np.exp, "exp", -np.inf)


BUILTIN = {"hopf": hopf, "burgers": burgers, "quartic": quartic, "exp": exponential}


def tabulated(u, f, label="tabulated"):
    """Flux from samples ``(u, f(u))`` via monotone (PCHIP) cubic interpolation.

    Outside the sampled range the interpolant is extrapolated; keep solution
    states inside it.
    """
    u = np.asarray(u, dtype=float)
    fv = np.asarray(f, dtype=float)
    if u.ndim != 1 or u.shape != fv.shape or u.size < 4 or np.any(np.diff(u) <= 0):
        raise DomainError("tabulated flux needs >= 4 strictly increasing u samples with matching f")
    spline = PchipInterpolator(u, fv, extrapolate=True)
    d1 = spline.derivative(1)
    d2 = spline.derivative(2)
    i = int(np.argmin(fv))
    if i == 0:
        argmin = -np.inf if d1(u[0]) >= 0 else u[0]
    elif i == u.size - 1:
        argmin = np.inf if d1(u[-1]) <= 0 else u[-1]
    else:
        lo, hi = u[i - 1], u[i + 1]
        argmin = optimize.minimize_scalar(spline, bounds=(lo, hi), method="bounded",
                                          options={"xatol": 1e-12}).x

    return FluxFunction(lambda x: spline(np.asarray(x, float)),
                        lambda x: d1(np.asarray(x, float)),
                        lambda x: d2(np.asarray(x, float)), label, float(argmin))


def from_config(cfg):
    """``"hopf"`` or ``{"label": ..., "table": {"u": [...], "f": [...]}}``."""
    if isinstance(cfg, str):
        cfg = {"label": cfg}
    label = cfg["label"]
    if "table" in cfg:
        return tabulated(cfg["table"]["u"], cfg["table"]["f"], label)
    try:
        return BUILTIN[label]()
    except KeyError:
        raise DomainError(f"unknown flux {label!r}; built-ins are {sorted(BUILTIN)}") from None


def rh_speed(flux, u_left, u_right):
    """Rankine-Hugoniot speed ``(f(u_l) - f(u_r)) / (u_l - u_r)``."""
    u_left = np.asarray(u_left, dtype=float)
    u_right = np.asarray(u_right, dtype=float)
    jump = u_left - u_right
    if np.any(jump == 0):
        raise DegenerateJumpError("Rankine-Hugoniot speed of a zero jump is undefined")
    s = (flux.f(u_left) - flux.f(u_right)) / jump
    return float(s) if np.ndim(s) == 0 else s


def check_convexity(flux, interval, samples=201):
    """True iff ``f'' >= -1e-12`` at ``samples`` equispaced points of ``interval``."""
    lo, hi = interval
    if not hi > lo:
        raise DomainError(f"degenerate interval {interval}")
    u = np.linspace(lo, hi, samples)
    return bool(np.all(flux.f_double_prime(u) >= -1e-12))


@dataclass(frozen=True)
class SingleShockState:
    """Initial data ``u0_init(x) + e_init(x) H(x0 - x)`` for one shock.

    ``u0_init`` and ``e_init`` are vectorized callables; ``T`` is the horizon
    over which a solution is requested.
    """

    u0_init: Callable
    e_init: Callable
    x0: float
    T: float = 1.0

    def __post_init__(self):
        if not self.T > 0:
            raise DomainError(f"horizon T must be positive, got {self.T}")
        probe = self.x0 + np.linspace(-5.0, 5.0, 101)
        if np.any(np.asarray(self.e_init(probe)) <= 0):
            raise DomainError("shock amplitude e_init must be positive (Oleinik stability)")

    def initial(self, x):
        x = np.asarray(x, dtype=float)
        return self.u0_init(x) + np.where(x <= self.x0, self.e_init(x), 0.0)


def existence_time_bound(flux, state, grid):
    """Largest ``T`` with no characteristic crossing on either side of ``x0``.

    ``T = 1 / max(0, -inf_{x>x0} u0'(x) f''(u0), -inf_{x<x0} (u0+e)'(x) f''(u0+e))``
    with derivatives by centred differences at the points of ``grid``; ``inf`` when both
    infima are nonnegative.
    """
    grid = np.unique(np.asarray(grid, dtype=float))
    right = grid[grid > state.x0]
    left = grid[grid < state.x0]
    if right.size < 3 or left.size < 3:
        raise DomainError("grid needs at least three points on each side of x0")

    def worst(xs, u):
        # step independent of the grid spacing, which may contain near-duplicates
        h = 1e-5 * max(1.0, np.max(np.abs(xs)))
        du = (u(xs + h) - u(xs - h)) / (2.0 * h)
        return -np.min(du * flux.f_double_prime(u(xs)))

    rate = max(0.0,
               worst(right, state.u0_init),
               worst(left, lambda x: state.u0_init(x) + state.e_init(x)))
    return np.inf if rate <= 0.0 else 1.0 / rate
