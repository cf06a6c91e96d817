"""Exception hierarchy.

Everything raised on purpose by the library derives from :class:`WeakShockError`;
the CLI maps these to exit status 3.
"""


class WeakShockError(Exception):
    """Base class for numerical/domain failures."""


class DomainError(WeakShockError, ValueError):
    """An argument lies outside the domain of an operation."""


class DegenerateJumpError(DomainError):
    """A jump with equal left and right states."""


class NonMergingError(WeakShockError):
    """Two-shock data whose fronts never meet (lagging wave not faster)."""


class NoRootError(WeakShockError):
    """A target value lies outside the range of a monotone function."""


class QuadratureError(WeakShockError):
    """Adaptive quadrature did not reach its tolerance."""


class KernelDecayError(WeakShockError):
    """A switch function failed to saturate inside the allowed window."""


class StepSizeError(WeakShockError):
    """A fixed-step integrator was run with an unstable step."""


class ExistenceHorizonError(WeakShockError):
    """Characteristics cross before the requested time."""


class CFLError(WeakShockError):
    """The finite-volume time step cannot be chosen (unbounded wave speed)."""
