import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from weakshock import flux as fl
from weakshock.errors import DegenerateJumpError, DomainError
from weakshock.quadrature import integrate

FLUXES = [fl.hopf(), fl.burgers(), fl.quartic(), fl.exponential()]
states = st.floats(-2.0, 2.0)


def test_rh_speed_examples():
    assert fl.rh_speed(fl.hopf(), 1.0, 0.0) == 1.0
    assert fl.rh_speed(fl.quartic(), 1.0, 0.0) == 1.0
    # the quartic speed is the mean of f' over [0, 1]
    assert integrate(fl.quartic().f_prime, 0.0, 1.0) == pytest.approx(1.0, abs=1e-13)
    for u0, e in [(0.0, 1.0), (-1.0, 2.0), (0.3, 0.25)]:
        assert fl.rh_speed(fl.hopf(), u0 + e, u0) == pytest.approx(2 * u0 + e, abs=1e-14)


def test_rh_speed_rejects_zero_jump():
    with pytest.raises(DegenerateJumpError):
        fl.rh_speed(fl.hopf(), 0.5, 0.5)


def test_convexity_examples():
    assert fl.check_convexity(fl.hopf(), (-2, 2))
    assert fl.check_convexity(fl.quartic(), (-1, 1))
    sine = fl.FluxFunction(np.sin, np.cos, lambda u: -np.sin(u), "sin")
    assert not fl.check_convexity(sine, (0, np.pi))


@pytest.mark.parametrize("flux", FLUXES, ids=lambda f: f.label)
def test_derivatives_match_finite_differences(flux):
    u = np.linspace(-1.5, 1.5, 31)
    h = 1e-5
    fd1 = (flux.f(u + h) - flux.f(u - h)) / (2 * h)
    fd2 = (flux.f_prime(u + h) - flux.f_prime(u - h)) / (2 * h)
    np.testing.assert_allclose(flux.f_prime(u), fd1, rtol=1e-6, atol=1e-8)
    np.testing.assert_allclose(flux.f_double_prime(u), fd2, rtol=1e-6, atol=1e-8)
    assert np.all(flux.f_double_prime(u) >= 0)


def test_tabulated_flux_tracks_samples():
    u = np.linspace(-2, 2, 401)
    tab = fl.tabulated(u, u ** 2, "tab")
    x = np.linspace(-1.9, 1.9, 57)
    np.testing.assert_allclose(tab.f(x), x ** 2, atol=1e-4)
    np.testing.assert_allclose(tab.f_prime(x), 2 * x, atol=1e-2)
    assert tab.argmin == pytest.approx(0.0, abs=1e-6)
    with pytest.raises(DomainError):
        fl.tabulated([0, 1, 1, 2], [0, 1, 1, 4])


def test_from_config():
    assert fl.from_config("quartic").label == "quartic"
    assert fl.from_config({"label": "t", "table": {"u": [0, 1, 2, 3], "f": [0, 1, 4, 9]}}).label == "t"
    with pytest.raises(DomainError):
        fl.from_config("cubic")


def _state(u0, e, x0=0.0):
    return fl.SingleShockState(u0, e, x0)


def test_existence_time_examples():
    grid = np.linspace(-5, 5, 1001)
    const = lambda c: (lambda x: np.full_like(np.asarray(x, float), c))
    assert fl.existence_time_bound(fl.hopf(), _state(const(0.2), const(1.0)), grid) == np.inf
    assert fl.existence_time_bound(fl.hopf(), _state(lambda x: x, const(1.0)), grid) == np.inf
    T = fl.existence_time_bound(fl.hopf(), _state(lambda x: -x, const(1.0)), grid)
    assert T == pytest.approx(0.5, abs=1e-3)


def test_existence_time_uses_left_state_too():
    # smooth right background, compressive amplitude on the left: (u0 + e)' f'' = -0.5 * 2
    grid = np.linspace(-5, 5, 1001)
    s = _state(lambda x: np.zeros_like(np.asarray(x, float)), lambda x: 3.0 - 0.5 * np.asarray(x, float))
    assert fl.existence_time_bound(fl.hopf(), s, grid) == pytest.approx(1.0, abs=1e-6)


def test_existence_time_needs_both_sides():
    s = _state(lambda x: -np.asarray(x, float), lambda x: np.ones_like(np.asarray(x, float)))
    with pytest.raises(DomainError):
        fl.existence_time_bound(fl.hopf(), s, np.linspace(0.5, 3, 20))


def test_single_shock_state_validation():
    with pytest.raises(DomainError):
        _state(lambda x: 0 * x, lambda x: 0 * x - 1.0)
    with pytest.raises(DomainError):
        fl.SingleShockState(lambda x: 0 * x, lambda x: 0 * x + 1, 0.0, T=0.0)


@given(states, states)
def test_rh_speed_symmetric(a, b):
    assume(abs(a - b) > 1e-6)
    for flux in FLUXES:
        assert fl.rh_speed(flux, a, b) == fl.rh_speed(flux, b, a)


@given(states, states)
def test_lax_inequalities(a, b):
    assume(a - b > 1e-6)
    for flux in FLUXES:
        s = fl.rh_speed(flux, a, b)
        tol = 1e-9 * max(1.0, abs(s))
        assert flux.f_prime(b) - tol <= s <= flux.f_prime(a) + tol


@given(states, states)
def test_hopf_speed_is_twice_the_midpoint(a, b):
    assume(a != b)
    assert fl.rh_speed(fl.hopf(), a, b) == pytest.approx(a + b, abs=1e-12)


def test_existence_bound_ignores_near_duplicate_grid_points(hopf):
    st = fl.SingleShockState(lambda x: -x, lambda x: np.ones_like(x), 0.0)
    grid = np.union1d(np.linspace(-1, 1, 41), np.linspace(-10, 10, 2001))
    assert np.min(np.diff(grid)) < 1e-12
    assert fl.existence_time_bound(hopf, st, grid) == pytest.approx(0.5, abs=1e-6)
