r"""Mollifier kernels and the regularized Heaviside / delta functions.

A kernel is a nonnegative unit-mass density :math:`\omega` together with its
cumulative primitive :math:`\omega_0(z) = \int_{-\infty}^z \omega`.  With a
scale :math:`\varepsilon` they give

.. math::

    H(x, \varepsilon) = \omega_0(x/\varepsilon), \qquad
    \delta(x, \varepsilon) = \varepsilon^{-1}\omega(x/\varepsilon).

Three families are provided: the unit-mass Gaussian ``exp(-z**2)/sqrt(pi)``
(closed-form CDF), the compact bump ``exp(-1/(1-z**2))`` on ``(-1, 1)`` and a
tabulated density.  Every family accepts a ``width`` (scale) and a ``shift``
(translation): ``omega(z) = base((z - shift)/width)/width``.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import special
from scipy.interpolate import PchipInterpolator

from .errors import DomainError
from .interpolation import monotone_hermite
from .quadrature import integrate

FAMILIES = ("gaussian", "bump", "tabulated")

# Radius (in units of width) outside which the base density is negligible:
# Gaussian tail mass erfc(6)/2 ~ 1e-17; the bump is exactly zero past 1.
_GAUSSIAN_RADIUS = 6.0
_BUMP_RADIUS = 1.0


def _bump_base(z):
    z = np.asarray(z, dtype=float)
    out = np.zeros_like(z)
    inside = np.abs(z) < 1.0
    zi = z[inside]
    out[inside] = np.exp(-1.0 / (1.0 - zi * zi))
    return out


def _bump_mass():
    return integrate(_bump_base, -1.0, 1.0, tol=1e-14)


class _BumpTable:
    """Hermite tabulation of the normalized bump CDF on [-1, 1]."""

    def __init__(self, n=2000):
        mass = _bump_mass()
        z = np.linspace(-1.0, 1.0, n + 1)
        nodes, weights = np.polynomial.legendre.leggauss(12)
        half = 0.5 * (z[1:] - z[:-1])
        mid = 0.5 * (z[1:] + z[:-1])
        x = mid[:, None] + half[:, None] * nodes[None, :]
        pieces = (_bump_base(x) @ weights) * half
        cdf = np.concatenate([[0.0], np.cumsum(pieces)]) / mass
        cdf[-1] = 1.0
        self.mass = mass
        self.spline = monotone_hermite(z, cdf, _bump_base(z) / mass)


_BUMP = None


def _bump_table():
    global _BUMP
    if _BUMP is None:
        _BUMP = _BumpTable()
    return _BUMP


@dataclass(frozen=True)
class Kernel:
    """Immutable mollifier.

    ``family`` is one of ``gaussian``, ``bump`` or ``tabulated``.  For the
    tabulated family ``samples`` holds ``(z, w)`` arrays of the (unnormalized)
    density; the kernel is normalized on construction.
    """

    family: str = "gaussian"
    width: float = 1.0
    shift: float = 0.0
    samples: tuple = field(default=None, repr=False, compare=False)
    _pdf_interp: object = field(default=None, init=False, repr=False, compare=False)
    _cdf_interp: object = field(default=None, init=False, repr=False, compare=False)
    _key: tuple = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown kernel family {self.family!r}; expected one of {FAMILIES}")
        if not np.isfinite(self.width) or self.width <= 0.0:
            raise DomainError(f"kernel width must be positive, got {self.width}")
        if not np.isfinite(self.shift):
            raise DomainError(f"kernel shift must be finite, got {self.shift}")
        key = None
        if self.family == "tabulated":
            if self.samples is None:
                raise DomainError("tabulated kernel needs samples=(z, w)")
            z, w = (np.asarray(a, dtype=float) for a in self.samples)
            if z.ndim != 1 or z.shape != w.shape or z.size < 4:
                raise DomainError("tabulated kernel needs matching 1-D z, w with at least 4 points")
            if np.any(np.diff(z) <= 0):
                raise DomainError("tabulated kernel abscissae must be strictly increasing")
            if np.any(w < 0) or not np.all(np.isfinite(w)):
                raise DomainError("tabulated kernel values must be finite and nonnegative")
            pdf = PchipInterpolator(z, w, extrapolate=False)
            prim = pdf.antiderivative()
            mass = float(prim(z[-1]))
            if mass <= 0:
                raise DomainError("tabulated kernel has zero mass")
            object.__setattr__(self, "_pdf_interp", (pdf, mass, z[0], z[-1]))
            object.__setattr__(self, "_cdf_interp", prim)
            key = (tuple(z), tuple(w))
        object.__setattr__(self, "_key", key)

    # -- metadata -------------------------------------------------------
    @property
    def decay_class(self):
        return "rapid" if self.family == "gaussian" else "compact"

    @property
    def radius(self):
        """Effective support radius about the kernel centre."""
        if self.family == "gaussian":
            return _GAUSSIAN_RADIUS * self.width
        if self.family == "bump":
            return _BUMP_RADIUS * self.width
        _, _, lo, hi = self._pdf_interp
        return self.width * max(abs(lo), abs(hi))

    @property
    def center(self):
        return self.shift

    @property
    def support(self):
        """Interval outside which the density is zero or below rounding."""
        if self.family == "tabulated":
            _, _, lo, hi = self._pdf_interp
            return (self.shift + self.width * lo, self.shift + self.width * hi)
        return (self.shift - self.radius, self.shift + self.radius)

    @property
    def is_symmetric(self):
        return self.family in ("gaussian", "bump") and self.shift == 0.0

    def to_config(self):
        cfg = {"family": self.family, "width": self.width, "shift": self.shift}
        if self.family == "tabulated":
            cfg["z"] = list(self._key[0])
            cfg["w"] = list(self._key[1])
        return cfg

    # -- evaluation -----------------------------------------------------
    def pdf(self, z):
        s = (np.asarray(z, dtype=float) - self.shift) / self.width
        if self.family == "gaussian":
            out = np.exp(-s * s) / np.sqrt(np.pi)
        elif self.family == "bump":
            out = _bump_base(s) / _bump_table().mass
        else:
            pdf, mass, lo, hi = self._pdf_interp
            out = np.nan_to_num(pdf(s), nan=0.0) / mass
            out = np.where((s < lo) | (s > hi), 0.0, np.maximum(out, 0.0))
        out = out / self.width
        return float(out) if np.ndim(out) == 0 else out

    def cdf(self, z):
        s = (np.asarray(z, dtype=float) - self.shift) / self.width
        if self.family == "gaussian":
            out = special.ndtr(np.sqrt(2.0) * s)
        elif self.family == "bump":
            out = np.where(s <= -1.0, 0.0,
                           np.where(s >= 1.0, 1.0, _bump_table().spline(np.clip(s, -1.0, 1.0))))
            out = np.clip(out, 0.0, 1.0)
        else:
            _, mass, lo, hi = self._pdf_interp
            prim = self._cdf_interp
            out = np.clip(prim(np.clip(s, lo, hi)) / mass, 0.0, 1.0)
            out = np.where(s <= lo, 0.0, np.where(s >= hi, 1.0, out))
        return float(out) if np.ndim(out) == 0 else out

    def mean(self):
        """First moment of the density."""
        lo, hi = self.support
        return integrate(lambda z: z * self.pdf(z), lo, hi, tol=1e-13)

    def __hash__(self):
        return hash((self.family, self.width, self.shift, self._key))


def gaussian(width=1.0, shift=0.0):
    return Kernel("gaussian", width, shift)


def bump(width=1.0, shift=0.0):
    return Kernel("bump", width, shift)


def tabulated(z, w, width=1.0, shift=0.0):
    return Kernel("tabulated", width, shift, samples=(tuple(np.asarray(z, float)),
                                                     tuple(np.asarray(w, float))))


def from_config(cfg):
    """Build a kernel from ``{"family": ..., "width": ..., "shift": ..., "z": ..., "w": ...}``."""
    if cfg is None:
        return gaussian()
    family = cfg.get("family", "gaussian")
    width = float(cfg.get("width", 1.0))
    shift = float(cfg.get("shift", 0.0))
    if family == "tabulated":
        return tabulated(cfg["z"], cfg["w"], width, shift)
    return Kernel(family, width, shift)


def eval_kernel(k, z):
    """Density ``omega(z)``."""
    return k.pdf(z)


def eval_cdf(k, z):
    """Cumulative primitive ``omega_0(z)``."""
    return k.cdf(z)


def _check_eps(eps):
    if not (np.isfinite(eps) and eps > 0):
        raise DomainError(f"eps must be positive, got {eps}")


def heaviside_approx(k, x, eps):
    """Regularized Heaviside ``omega_0(x/eps)``."""
    _check_eps(eps)
    return k.cdf(np.asarray(x, dtype=float) / eps)


def delta_approx(k, x, eps):
    """Regularized delta ``omega(x/eps)/eps``."""
    _check_eps(eps)
    out = k.pdf(np.asarray(x, dtype=float) / eps) / eps
    return out
