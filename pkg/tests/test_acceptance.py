"""Acceptance criteria C1-C9.

Each test prints one ``PASS``/``FAIL`` line straight to the terminal (outside
pytest's capture) before asserting, so ``pytest -v`` output doubles as the
acceptance report.
"""

import time

import numpy as np
import pytest

from weakshock import ansatz as an
from weakshock import flux as fl
from weakshock import fv_oracle as fv
from weakshock import kernels as kn
from weakshock import phase_dynamics as pd
from weakshock import scenarios
from weakshock import switch as sw
from weakshock import weak_residual as wr


@pytest.fixture
def verdict(capsys):
    def report(tag, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {tag}: {detail}")
        assert ok, f"{tag}: {detail}"
    return report


def _front_errors(g, flux, s, times):
    """Largest |oracle shock - limit front| per time, and whether shock counts agree."""
    errs, counts_ok = [], True
    for t in times:
        found = fv.extract_shock_positions(g, t, threshold=0.5 * min(s.e1, s.e2))
        expected = sorted(set(np.round(np.atleast_1d(pd.limit_phases(flux, s, t)), 12)))
        counts_ok &= len(found) == len(expected)
        errs.append(max(abs(a - b) for a, b in zip(sorted(found), expected)) if found else np.inf)
    return np.array(errs), counts_ok


def test_c1_stationary_merge(verdict, hopf, merge_state):
    ev = pd.merge_point(hopf, merge_state)
    start = time.perf_counter()
    g = fv.godunov_solve(hopf, an.two_shock_limit(hopf, merge_state), (-4.0, 4.0), 4096,
                         t_end=2.0, snapshots=[2.0])
    elapsed = time.perf_counter() - start
    l1 = fv.l1_distance_field(g, lambda x: np.where(x <= 0.0, 1.0, -1.0), 2.0)
    ok = (abs(ev.t_star - 1) <= 1e-12 and abs(ev.x_star) <= 1e-12 and abs(ev.post_speed) <= 1e-12
          and l1 <= 4 * g.dx and elapsed < 10)
    verdict("C1", ok, f"t*={ev.t_star!r} x*={ev.x_star!r} speed={ev.post_speed!r} "
                      f"L1={l1:.2e} (4dx={4 * g.dx:.2e}) runtime={elapsed:.2f}s")


def test_c2_switch_sum_identity(verdict):
    pairs = [(kn.gaussian(), kn.gaussian()),
             (kn.gaussian(), kn.bump(1.5)),
             (kn.bump(), kn.gaussian(0.7, 0.3))]
    fluxes = [fl.hopf(), fl.quartic(), fl.exponential()]
    u0, e1, e2 = 0.2, 1.0, 0.5
    rho = np.linspace(-4.0, 4.0, 101)
    start = time.perf_counter()
    worst = 0.0
    for flux in fluxes:
        c = sw.interaction_constant(flux, u0, e1, e2)
        for k1, k2 in pairs:
            total = (sw.b1_general(flux, u0, e1, e2, k1, k2, rho)
                     + sw.b2_general(flux, u0, e1, e2, k1, k2, rho))
            worst = max(worst, float(np.max(np.abs(total - c))))
    elapsed = time.perf_counter() - start
    verdict("C2", worst < 1e-8 and elapsed < 30,
            f"max |B1(rho)+B2(-rho)-C| = {worst:.2e} over 9 combinations x 101 rho, runtime={elapsed:.2f}s")


def test_c3_hopf_reduction(verdict, hopf, gauss, unit_state):
    e1, e2 = unit_state.e1, unit_state.e2
    table = sw.build_switch_table(hopf, unit_state.u0, e1, e2, gauss, gauss)
    table_gap = float(np.max(np.abs(table.b1 - 2 * e1 * e2 * sw.b1_hopf(gauss, gauss, table.rho))))
    s = pd.TwoShockState(0.3, 1.0, 0.5, -0.5, 1.0)
    a, b = pd.merge_point(hopf, s), pd.hopf_merge_point(s)
    t = np.linspace(0.0, 2.0 * a.t_star, 41)
    kin_gap = max(abs(a.t_star - b.t_star), abs(a.x_star - b.x_star), abs(a.post_speed - b.post_speed),
                  *np.abs(np.subtract(a.pre_speeds, b.pre_speeds)),
                  float(np.max(np.abs(np.subtract(pd.limit_phases(hopf, s, t), pd.hopf_limit_phases(s, t))))))
    verdict("C3", table_gap < 1e-8 and kin_gap < 1e-8,
            f"table gap {table_gap:.2e}, kinematics/limit-phase gap {kin_gap:.2e}")


def test_c4_rho_asymptotics(verdict, general_phases):
    r = general_phases.rho
    mask = (r.tau_grid < -5) & (r.tau_grid > -20)
    lam = np.polyfit(r.tau_grid[mask], np.log(r.rho_values[mask] - r.rho0), 1)[0]
    slope = float(r.dynamics.dF(r.rho0))
    tail = abs(r(-50.0) - r.rho0)
    ok = abs(r.rho0) <= 1e-9 and tail < 1e-8 and abs(lam / slope - 1) <= 0.05
    verdict("C4", ok, f"rho0={r.rho0:.2e} |rho(-50)-rho0|={tail:.2e} "
                      f"fitted rate {lam:.5f} vs F'(rho0) {slope:.5f}")


def test_c5_perturbation_limits(verdict, hopf, gauss):
    worst_limit, worst_env = 0.0, 0.0
    for e1, e2 in ((1.0, 1.0), (1.0, 2.0)):
        s = pd.TwoShockState(0.0, e1, e2, 0.0, 1.0)
        p = pd.build_phase_set(hopf, s, gauss, gauss).perturbations
        worst_limit = max(worst_limit, abs(p.phi11(-50.0) - e2 / (e1 + e2)),
                          abs(p.phi21(-50.0) + e1 / (e1 + e2)))
        tau = np.linspace(1.0, 50.0, 491)
        worst_env = max(worst_env, float(np.max(np.abs(tau * p.phi11(tau)))),
                        float(np.max(np.abs(tau * p.phi21(tau)))))
    verdict("C5", worst_limit <= 1e-4 and worst_env < 1.0,
            f"max limit error at tau=-50: {worst_limit:.2e}; max tau|phi_k1| on [1, 50]: {worst_env:.3f}")


def test_c6_weak_residual_contract(verdict):
    cfg = scenarios.load("residual_uniformity")
    flux, (k1, k2), s = scenarios.build_flux(cfg), scenarios.build_kernels(cfg), scenarios.build_two_state(cfg)
    num = cfg["numerics"]
    ps = pd.build_phase_set(flux, s, k1, k2)
    t_grid = np.asarray(num["t_grid"])
    assert t_grid.min() < ps.merge.t_star < t_grid.max() and t_grid.size == 9
    tfs = [wr.TestFunction(c, r) for c, r in num["test_functions"]]
    rep = wr.epsilon_sweep(lambda e: an.interaction_ansatz(ps, (k1, k2), e, flux), t_grid, tfs,
                           [0.1, 0.05, 0.025, 0.0125])
    ok = rep.fitted_order >= 0.9 and np.isfinite(rep.uniformity_gap) and rep.uniformity_ratio <= 5
    verdict("C6", ok, f"fitted order {rep.fitted_order:.3f}, uniformity gap {rep.uniformity_gap:.3e}, "
                      f"max/min over t {rep.uniformity_ratio:.2f}")


@pytest.mark.parametrize("flux_name,domain", [("hopf", (-1.0, 4.0)), ("quartic", (-0.5, 2.5))])
def test_c7_oracle_trajectories(verdict, flux_name, domain):
    flux = fl.from_config(flux_name)
    s = pd.TwoShockState(0.0, 1.0, 1.0, 0.0, 1.0)
    ts = pd.merge_point(flux, s).t_star
    times = [0.5 * ts, ts, 1.5 * ts, 2.0 * ts]
    g = fv.godunov_solve(flux, an.two_shock_limit(flux, s), domain, 4096, t_end=times[-1], snapshots=times)
    errs, counts_ok = _front_errors(g, flux, s, times)
    verdict(f"C7[{flux_name}]", counts_ok and np.all(errs <= 2 * g.dx),
            f"front errors / dx at t*(1/2, 1, 3/2, 2) = {np.round(errs / g.dx, 3).tolist()}")


def test_c8_nonuniqueness(verdict, hopf):
    a, T = 2.0, 2.25
    slope = an.naive_phi_rate(a, 0.0)
    dist = []
    for n in (2048, 4096):
        g = fv.godunov_solve(hopf, lambda x: an.naive_pasted_solution(a, 0.0, x), (-4.0, 4.0), n,
                             t_end=T, snapshots=[T])
        dist.append(fv.l1_distance_field(g, lambda x: an.naive_pasted_solution(a, T, x), T))
    ratio = dist[1] / dist[0]
    verdict("C8", abs(slope - 1) <= 1e-6 and ratio > 0.8,
            f"dphi/dt(0)={float(slope)!r}; L1 at t={T}: {dist[0]:.4f} (2048), {dist[1]:.4f} (4096), ratio {ratio:.4f}")


def test_c9_single_shock_background(verdict, hopf):
    st = fl.SingleShockState(lambda x: -x, lambda x: np.ones_like(x), 0.0, 0.45)
    horizon = fl.existence_time_bound(hopf, st, np.linspace(-8.0, 8.0, 1601))
    t = np.array([0.1, 0.2, 0.3, 0.4])
    sol = an.single_shock_solve(hopf, st, t, np.linspace(-1.0, 1.0, 41))
    g = fv.godunov_solve(hopf, st.initial, (-12.0, 12.0), 4096, t_end=0.4, snapshots=t)
    errs = []
    for tt, p in zip(t, sol.front):
        found = fv.extract_shock_positions(g, tt, threshold=0.5)
        errs.append(min(abs(q - p) for q in found) if found else np.inf)
    errs = np.array(errs)
    verdict("C9", abs(horizon - 0.5) <= 1e-3 and np.all(errs <= 2 * g.dx),
            f"existence bound {horizon:.6f}; front errors / dx = {np.round(errs / g.dx, 3).tolist()}")
