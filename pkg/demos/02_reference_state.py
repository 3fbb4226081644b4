"""
Entanglement generated by scattering
====================================

Electron A and positron B start in a product-like state
|R>_A (cos eta |R> + sin eta |L>)_B and scatter at a fixed angle.
"""

import math

import numpy as np

from bhabha_entanglement import (MU_M, ScatteringConfig, concurrence, reference_final,
                                 to_density)
from bhabha_entanglement.sweep import locate_mu_peak, reference_curve

# Concurrence of the post-selected two-qubit state along theta
thetas = (np.arange(12) + 0.5) * 2 * np.pi / 12
for mu in (MU_M, 1.0, 5.0):
    curve = reference_curve(mu, thetas, eta=0.0)
    print(f"mu = {mu:6.4f}  " + " ".join(f"{c:5.3f}" for c in curve))

# Backscattering at mu_m turns the product state into a Bell state
state = reference_final(ScatteringConfig(MU_M, math.pi, 0.0))
print("amplitudes at theta = pi:", np.round(state.amplitudes, 6))
print("C =", concurrence(to_density(state)).value)

# The same value comes out of a blind search over mu
peak = locate_mu_peak(eta=0.0)
print(f"search: mu = {peak.mu:.9f} at theta = {peak.theta:.6f}, closed value {MU_M:.9f}")
