"""The smoothed two-shock ansatz solves the equation up to O(eps) in the weak sense.

Run with ``python demos/03_weak_residual.py`` (about two seconds).
"""

import numpy as np

from weakshock import ansatz as an
from weakshock import flux as fl
from weakshock import kernels as kn
from weakshock import phase_dynamics as pd
from weakshock import weak_residual as wr

hopf = fl.hopf()
state = pd.TwoShockState(0.0, 1.0, 1.0, 0.0, 1.0)
g = kn.gaussian()
ps = pd.build_phase_set(hopf, state, g, g)

# Pair the residual with five wide test functions at times before, at and
# after the merge (t* = 0.5).
tfs = [wr.TestFunction(c, 2.0) for c in (0.0, 0.6, 1.2, 1.8, 2.4)]
t_grid = np.linspace(0.1, 0.9, 9)
rep = wr.epsilon_sweep(lambda e: an.interaction_ansatz(ps, (g, g), e, hopf), t_grid, tfs,
                       [0.1, 0.05, 0.025, 0.0125])

print("order in eps per time:", np.round(rep.order_by_t, 3))
print("residual / eps at eps = 0.0125:", np.round(rep.scaled, 4))
print(rep.summary())

# A single smoothed shock is not exact either: the leading term is
# eps * psi'(phi) / sqrt(2 pi) for the unit Gaussian, with the front at
# phi = t (speed 1).
A = an.single_wave_ansatz(hopf, 0.0, 1.0, 0.0, g, 0.01)
tf = wr.TestFunction(0.3, 1.0)
print("single wave residual at eps=0.01:", wr.residual(A, 0.2, tf))
print("leading term:                   ", 0.01 * tf.derivative(0.2) / np.sqrt(2 * np.pi))
