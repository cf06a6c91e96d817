"""Checking the limit against a Godunov solver, and a weak solution that is not the right one.

Run with ``python demos/04_oracle_and_naive_solution.py``.
"""

import numpy as np

from weakshock import ansatz as an
from weakshock import flux as fl
from weakshock import fv_oracle as fv
from weakshock import phase_dynamics as pd

hopf = fl.hopf()
state = pd.TwoShockState(0.0, 1.0, 1.0, 0.0, 1.0)
L = an.two_shock_limit(hopf, state)

# The entropy solution computed by a first-order Godunov scheme tracks the
# limit fronts to a fraction of a cell.
times = [0.25, 0.5, 0.75, 1.0]
g = fv.godunov_solve(hopf, L, (-1.0, 4.0), 4096, t_end=1.0, snapshots=times)
for t in times:
    found = fv.extract_shock_positions(g, t)
    print(f"t = {t:4.2f}  oracle {np.round(found, 4)}  limit {np.unique(np.round(pd.limit_phases(hopf, state, t), 4))}")
print("dx =", g.dx)

# The naive W construction is also a weak solution of u_t + (u^2)_x = 0, but
# its jump moves non-monotonically and it is not the entropy solution: the
# L1 gap to the oracle does not shrink as the grid is refined.
a, T = 2.0, 2.25
print("naive front speed at t=0:", an.naive_phi_rate(a, 0.0))
for n in (1024, 2048, 4096):
    g = fv.godunov_solve(hopf, lambda x: an.naive_pasted_solution(a, 0.0, x), (-4.0, 4.0), n,
                         t_end=T, snapshots=[T])
    print(f"{n:5d} cells: L1(oracle, naive) = {fv.l1_distance_field(g, lambda x: an.naive_pasted_solution(a, T, x), T):.4f}")
