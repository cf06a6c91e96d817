"""Interaction switch functions for a non-quadratic flux and mismatched kernels.

Run with ``python demos/02_switch_functions.py``.
"""

import numpy as np

from weakshock import flux as fl
from weakshock import kernels as kn
from weakshock import switch as sw

quartic = fl.quartic()
k1, k2 = kn.gaussian(), kn.bump(1.5)

# B1(rho) runs from 0 (fronts far apart, wave 1 behind) to the constant C once
# they overlap; B1(rho) + B2(-rho) = C holds exactly for every rho.
C = sw.interaction_constant(quartic, 0.0, 1.0, 1.0)
print("C =", C)
rho = np.linspace(-3.0, 3.0, 7)
b1 = sw.b1_general(quartic, 0.0, 1.0, 1.0, k1, k2, rho)
b2 = sw.b2_general(quartic, 0.0, 1.0, 1.0, k1, k2, rho)
for r, a, b in zip(rho, b1, b2):
    print(f"rho = {r:5.1f}   B1 = {a:9.5f}   B2(-rho) = {b:9.5f}   sum - C = {a + b - C: .1e}")

# A table with exact slopes makes root finding cheap; the root fixes where the
# merged front ends up relative to the two smoothed fronts.
table = sw.build_switch_table(quartic, 0.0, 1.0, 1.0, k1, k2)
print(f"table: {table.rho.size} nodes on [{table.rho[0]:.2f}, {table.rho[-1]:.2f}]")
print("root of B1 = C/2:", sw.solve_switch_root(table, C / 2))
