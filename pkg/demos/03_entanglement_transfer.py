"""
Transferring entanglement to a spectator
========================================

Positron B now starts entangled with a third particle C that never
interacts.  After A and B scatter, how is the entanglement shared?
"""

import math

import numpy as np

from bhabha_entanglement import SweepPlan, limit_C_AB, limit_C_AC, limit_C_BC, run_sweep

eta = math.pi / 4

# Before scattering only B and C are entangled: C_BC = |sin 2 eta| = 1.
# At high energy and theta = pi the entanglement moves from BC to AC.
plan = SweepPlan(theta_points=8, mu=(1000.0,), eta=(eta,))
print(" theta    C_AB     C_AC     C_BC    | limits AB  AC  BC")
for r in run_sweep(plan):
    lim = [f(eta, r.theta) for f in (limit_C_AB, limit_C_AC, limit_C_BC)]
    print(f"{r.theta:6.3f}  {r.C_AB:7.4f}  {r.C_AC:7.4f}  {r.C_BC:7.4f}   | "
          + " ".join(f"{x:6.4f}" for x in lim))

# At low energy the transfer is incomplete
for r in run_sweep(SweepPlan(theta_points=2, mu=(0.53, 1.0, 5.0), eta=(eta,))):
    if abs(r.theta - 3 * np.pi / 2) < 1e-9:
        print(f"mu = {r.mu:5.2f}, theta = 3pi/2:  C_AC = {r.C_AC:.4f}, C_BC = {r.C_BC:.4f}")
