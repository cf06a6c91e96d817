import numpy as np
import pytest
from hypothesis import given, strategies as st

from weakshock import ansatz as an
from weakshock import flux as fl
from weakshock import fv_oracle as fv
from weakshock import kernels as kn
from weakshock import phase_dynamics as pd
from weakshock import weak_residual as wr
from weakshock.errors import DomainError, ExistenceHorizonError

ones = lambda x: np.ones_like(np.asarray(x, float))
zeros = lambda x: np.zeros_like(np.asarray(x, float))


# -- smooth ansatz ------------------------------------------------------------

def test_far_field_values(hopf_phases, gauss, hopf):
    s = hopf_phases.state
    A = an.interaction_ansatz(hopf_phases, (gauss, gauss), 0.05, hopf)
    for t in (0.0, 0.3, 0.5, 1.2):
        lo, hi = min(A.fronts(t)), max(A.fronts(t))
        assert an.eval_smooth_ansatz(A, lo - 1.0, t) == pytest.approx(s.u0 + s.e1 + s.e2, abs=1e-10)
        assert an.eval_smooth_ansatz(A, hi + 1.0, t) == pytest.approx(s.u0, abs=1e-10)


@given(st.floats(0.0, 1.5), st.sampled_from([0.2, 0.05, 0.01]))
def test_ansatz_bounded_and_nonincreasing(hopf_phases, gauss, hopf, t, eps):
    s = hopf_phases.state
    A = an.interaction_ansatz(hopf_phases, (gauss, gauss), eps, hopf)
    x = np.linspace(-2, 5, 2001)
    u = A(x, t)
    assert np.all(u >= s.u0 - 1e-9) and np.all(u <= s.u0 + s.e1 + s.e2 + 1e-9)
    assert np.all(np.diff(u) <= 1e-15)
    assert np.all(A.dx(x, t) <= 0)


def test_ansatz_derivatives_match_finite_differences(shifted_phases, hopf):
    ks = (kn.gaussian(), kn.gaussian(shift=0.5))
    A = an.interaction_ansatz(shifted_phases, ks, 0.05, hopf)
    x = np.linspace(0.5, 2.5, 41)
    h = 1e-6
    for t in (0.3, 0.5, 0.7):
        np.testing.assert_allclose(A.dt(x, t), (A(x, t + h) - A(x, t - h)) / (2 * h), atol=1e-5)
        np.testing.assert_allclose(A.dx(x, t), (A(x + h, t) - A(x - h, t)) / (2 * h), atol=1e-5)


def test_eps_must_be_positive(hopf_phases, gauss, hopf):
    with pytest.raises(DomainError):
        an.interaction_ansatz(hopf_phases, (gauss, gauss), 0.0, hopf)


def _pairing_errors(ps, kernels, hopf, times, eps_list, tf):
    L = an.two_shock_limit(hopf, ps.state)
    out = []
    for eps in eps_list:
        A = an.interaction_ansatz(ps, kernels, eps, hopf)
        row = []
        for t in times:
            br = list(A.fronts(t)) + list(L.phases(t))
            row.append(abs(wr.pair(lambda x: A(x, t) - L(x, t), tf, breakpoints=br)))
        out.append(row)
    return np.array(out)


def test_weak_convergence_halves_with_eps(shifted_phases, hopf):
    times = [0.1, 0.25, 0.4, 0.5, 0.6, 0.8]     # straddles t* = 0.5
    errs = _pairing_errors(shifted_phases, (kn.gaussian(), kn.gaussian(shift=0.5)), hopf, times,
                           [0.04, 0.02, 0.01, 0.005], wr.TestFunction(1.25, 1.5))
    np.testing.assert_allclose(errs[:-1] / errs[1:], 2.0, rtol=0.2)


def test_weak_convergence_is_second_order_for_symmetric_kernels(hopf_phases, gauss, hopf):
    times = [0.1, 0.4, 0.5, 0.6, 1.0]
    errs = _pairing_errors(hopf_phases, (gauss, gauss), hopf, times, [0.02, 0.01, 0.005],
                           wr.TestFunction(1.25, 1.5))
    np.testing.assert_allclose(errs[:-1] / errs[1:], 4.0, rtol=0.05)


# -- singular limit -------------------------------------------------------------

def test_limit_solution_examples(hopf, merge_state):
    L = an.two_shock_limit(hopf, merge_state)
    assert an.eval_limit_solution(L, -0.5, 2.0) == 1.0
    assert an.eval_limit_solution(L, 0.5, 2.0) == -1.0
    assert an.eval_limit_solution(L, 0.0, 0.5) == 0.0
    x = np.linspace(-3, 3, 601)
    np.testing.assert_array_equal(L(x, 0.0), merge_state.initial(x))
    with pytest.raises(DomainError):
        an.eval_limit_solution(L, 0.0, -1.0)


def test_limit_value_at_jump_is_left_limit(hopf, merge_state):
    L = an.two_shock_limit(hopf, merge_state)
    assert L(-1.0, 0.0) == 1.0 and L(1.0, 0.0) == 0.0
    assert L(0.0, 2.0) == 1.0


def test_jumps_are_oleinik_stable(hopf, quartic, merge_state, unit_state):
    for flux, s in ((hopf, merge_state), (quartic, unit_state)):
        L = an.two_shock_limit(flux, s)
        ts = pd.merge_point(flux, s).t_star
        assert len(L.jumps(0.5 * ts)) == 2 and len(L.jumps(2 * ts)) == 1
        for t in (0.5 * ts, 2 * ts):
            for _, left, right in L.jumps(t):
                assert left > right
        (_, left, right), = L.jumps(2 * ts)
        assert (left, right) == pytest.approx((s.u0 + s.e1 + s.e2, s.u0))


def test_limit_cell_averages_exact(hopf, merge_state):
    L = an.two_shock_limit(hopf, merge_state)
    edges = np.linspace(-2.05, 2.0, 28)
    for t in (0.0, 0.3, 1.7):
        from weakshock.quadrature import integrate
        ref = [integrate(lambda x: L(x, t), a, b, breakpoints=L.phases(t)) / (b - a)
               for a, b in zip(edges[:-1], edges[1:])]
        np.testing.assert_allclose(L.cell_averages(edges, t), ref, atol=1e-12)


def test_hopf_path_limit_matches_general(hopf, unit_state):
    a, b = an.two_shock_limit(hopf, unit_state), an.two_shock_limit(hopf, unit_state, hopf_path=True)
    for t in np.linspace(0, 2, 21):
        assert a.phases(t) == pytest.approx(b.phases(t), abs=1e-12)


# -- single shock on a background ----------------------------------------------------

def test_single_shock_constant_states(hopf, quartic):
    for flux, u0, e in ((hopf, 0.0, 1.0), (quartic, 0.2, 0.5)):
        s = fl.SingleShockState(lambda x, c=u0: c + zeros(x), lambda x, c=e: c + zeros(x), 0.3)
        t = np.array([0.0, 0.1, 0.25, 0.5])
        sol = an.single_shock_solve(flux, s, t, np.linspace(-1, 1, 5))
        L = an.single_shock_limit(flux, u0, e, 0.3)
        np.testing.assert_allclose(sol.front, [L.phases(tt)[0] for tt in t], atol=1e-13)
        assert sol.horizon == np.inf
    s = fl.SingleShockState(zeros, ones, 0.0)
    sol = an.single_shock_solve(hopf, s, [1.0], [0.0])
    assert sol.front[0] == pytest.approx(1.0, abs=1e-13)


def test_single_shock_field_follows_characteristics(hopf):
    s = fl.SingleShockState(lambda x: -np.asarray(x, float), ones, 0.0)
    t = np.array([0.2, 0.4])
    x = np.linspace(-1, 1, 9)
    sol = an.single_shock_solve(hopf, s, t, x, horizon_grid=np.linspace(-8, 8, 1601))
    for i, tt in enumerate(t):
        # u = -x/(1-2t) right of the front and (1-x)/(1-2t) left of it
        expect = np.where(x <= sol.front[i], (1 - x) / (1 - 2 * tt), -x / (1 - 2 * tt))
        np.testing.assert_allclose(sol.field[i], expect, atol=1e-10)
    np.testing.assert_allclose(sol.front, t, atol=1e-12)


def test_single_shock_tanh_amplitude_matches_oracle(hopf):
    s = fl.SingleShockState(zeros, lambda x: 1 + 0.1 * np.tanh(np.asarray(x, float)), 0.0)
    sol = an.single_shock_solve(hopf, s, [1.0], [0.0])
    g = fv.godunov_solve(hopf, s.initial, (-4, 4), 4096, t_end=1.0)
    pos = fv.extract_shock_positions(g, 1.0, threshold=0.45)
    assert len(pos) == 1
    assert abs(pos[0] - sol.front[0]) <= 2 * g.dx


def test_existence_horizon_enforced(hopf):
    s = fl.SingleShockState(lambda x: -np.asarray(x, float), ones, 0.0)
    with pytest.raises(ExistenceHorizonError):
        an.single_shock_solve(hopf, s, [0.2, 0.6], [0.0], horizon_grid=np.linspace(-8, 8, 1601))


def test_characteristic_value(hopf):
    u_init = lambda x: np.sin(np.asarray(x, float))
    for x, t in ((0.3, 0.2), (-1.0, 0.4)):
        u = an.characteristic_value(hopf, u_init, x, t)
        assert u == pytest.approx(np.sin(x - 2 * u * t), abs=1e-12)


# -- the naive W construction ----------------------------------------------------

def test_naive_initial_data():
    x = np.array([-2.0, -1.0, -0.5, 0.0, 0.7, 1.0, 1.5])
    np.testing.assert_allclose(an.naive_W_solution(2.0, 0.0, x), [1, 1, -1, 0, 1.4, 2, -1])
    np.testing.assert_allclose(an.naive_W_initial(2.0, x), [1, -2, -1, 0, 1.4, 2, -1])


def test_naive_initial_slope():
    for a in (1.5, 2.0, 4.0):
        assert an.naive_phi_rate(a, 0.0) == pytest.approx(a - 1, abs=1e-12)
        assert an.naive_phi(a, 0.0) == pytest.approx(1.0, abs=1e-15)


def test_naive_phi_closed_form_matches_ode():
    for a in (1.5, 2.0, 3.0):
        hi = an.naive_time_range(a)[1]
        t = np.linspace(0, 0.95 * hi, 17)
        np.testing.assert_allclose(an.naive_phi(a, t), an.naive_phi_numeric(a, t), atol=1e-9)


def test_naive_phi_nonmonotone():
    a = 2.0
    t = np.linspace(0, 1.95, 400)
    rate = an.naive_phi_rate(a, t)
    assert rate[0] > 0 and rate[-1] < 0
    assert an.naive_phi(a, 2.0 - 1e-9) == pytest.approx(0.0, abs=1e-8)


def test_naive_range_errors():
    with pytest.raises(DomainError):
        an.naive_phi(1.0, 0.1)
    with pytest.raises(DomainError):
        an.naive_W_solution(2.0, 2.0, 0.0)
    with pytest.raises(DomainError):
        an.naive_phi(2.0, -0.25)


def test_naive_weak_limit_at_left_end_of_range():
    # phi ~ sqrt(2a d) as t = -1/(2a) + d, so the pairing defect shrinks like sqrt(d)
    a = 2.0
    tf = wr.TestFunction(0.2, 1.0)
    target = wr.pair(lambda x: np.where(x <= 0, 1.0, -1.0), tf, breakpoints=[0.0])
    errs = []
    for d in (1e-2, 1e-4, 1e-6):
        t = -0.5 / a + d
        phi = an.naive_phi(a, t)
        errs.append(abs(wr.pair(lambda x: an.naive_W_solution(a, t, x), tf, breakpoints=[-phi, phi]) - target))
    errs = np.array(errs)
    np.testing.assert_allclose(errs[:-1] / errs[1:], 10.0, rtol=0.15)
    assert errs[-1] < 5e-3


def test_pasted_solution():
    a = 2.0
    x = np.linspace(-2, 2, 81)
    np.testing.assert_array_equal(an.naive_pasted_solution(a, 0.0, x), np.where(x <= -1, 1.0, 0.0) - (x > 1))
    np.testing.assert_array_equal(an.naive_pasted_solution(a, 1.0, x), np.where(x <= 0, 1.0, -1.0))
    later = an.naive_pasted_solution(a, 1.5, x)
    np.testing.assert_array_equal(later, an.naive_W_solution(a, 0.25, x))
