"""Two Hopf shocks catching up with each other and merging into one.

Run with ``python demos/01_hopf_merge.py``.
"""

import numpy as np

from weakshock import flux as fl
from weakshock import kernels as kn
from weakshock import phase_dynamics as pd

hopf = fl.hopf()
state = pd.TwoShockState(u0=0.0, e1=1.0, e2=1.0, x1_0=0.0, x2_0=1.0)

# With f = u^2 the left shock (jump 2 -> 1) moves at speed 3 and the right one
# (1 -> 0) at speed 1, so the gap of 1 closes at t* = 1/2.  After the merge a
# single 2 -> 0 shock travels at speed 2.
event = pd.merge_point(hopf, state)
print("pre-merge speeds:", event.pre_speeds)
print(f"t* = {event.t_star}, x* = {event.x_star}, merged speed = {event.post_speed}")

# The smoothed picture lives on the fast scale tau = (gap)/eps.  rho(tau) is the
# true gap in units of eps; far before the merge it equals tau, far after it
# freezes at the root rho0 of the switch equation.
g = kn.gaussian()
ps = pd.build_phase_set(hopf, state, g, g)
r = ps.rho
for tau in (20.0, 5.0, 0.0, -5.0, -20.0):
    print(f"tau = {tau:6.1f}   rho = {r(tau): .6f}")
print("rho0 =", r.rho0)

# Phases for a few eps: they converge to the piecewise-linear limit.
t = np.array([0.25, 0.5, 0.75, 1.0])
limit = np.array(pd.limit_phases(hopf, state, t))
for eps in (0.1, 0.01, 0.001):
    phases = np.array(ps.full_phase(t, eps))
    print(f"eps = {eps:<6} max |phi - phi_limit| = {np.max(np.abs(phases - limit)):.2e}")
