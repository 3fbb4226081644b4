"""
What the spectator sees
=======================

C is entangled with B but sits far away.  Integrating over all scattering
directions gives C's spin state after the collision.
"""

import math

from bhabha_entanglement import rho_C_final, spectator_integrals
from bhabha_entanglement.spectator import cross_term

eta = math.pi / 4

# The interference term between the two positron branches carries exp(-i phi)
for phi in (0.0, math.pi / 2, math.pi):
    print(f"phi = {phi:5.3f}   cross term at theta = 1: {cross_term('R', 1.0, 1.0, phi):.6f}")

# so it integrates to zero over the azimuth
ints = spectator_integrals(1.0)
print(f"integrated cross term {abs(ints.cross):.1e} against branch weights {ints.up:.6e}, {ints.down:.6e}")

# The off-diagonal element of rho_C stays zero.  The diagonal moves by a tiny
# amount because the two branch weights above are not quite equal at tree level.
for w in (0.0, 1.0, 100.0):
    rho = rho_C_final(eta, 1.0, w)
    print(f"w = {w:5.1f}   |offdiag| = {rho.max_offdiag:.1e}   diagonal shift = {rho.deviation_from_initial():.2e}")
