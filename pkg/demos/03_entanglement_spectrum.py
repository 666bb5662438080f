"""
Entanglement spectrum of the half chain
=======================================

The entanglement Hamiltonian of the left half is a free-fermion operator
with single-body energies eps_p = ln((1 - nu_p) / nu_p).  For the rainbow
chain these are nearly equally spaced, with spacing close to the
thermofield value 2 pi^2 / (h L).
"""

import numpy as np

import rainbowchain as rc

n, h = 32, 1.0
spec = rc.ChainSpec(n, h=h)
C = rc.ground_state_correlations(rc.diagonalize(rc.build_hopping_matrix(spec.couplings())))
data = rc.block_entanglement(C, range(n // 2), orders=(1, 2))
print("S_1 =", data.vn_entropy, " S_2 =", data.renyi[2])
print("eps_p:", np.round(data.single_body_energies, 3))

fit = rc.entanglement_spacing(data)
pred = rc.thermofield_spacing_prediction(n // 2, h)
print(f"fitted spacing {fit.delta:.4f} on the {fit.ladder} ladder, goodness {fit.goodness:.3f}")
print(f"thermofield prediction {pred:.4f}")

# the spacing shrinks as 1/L
big = rc.ChainSpec(2 * n, h=h)
C2 = rc.ground_state_correlations(rc.diagonalize(rc.build_hopping_matrix(big.couplings())))
fit2 = rc.entanglement_spacing(rc.block_entanglement(C2, range(n)))
print("spacing ratio N=64 / N=32:", fit2.delta / fit.delta)

# lowest many-body entanglement energies, measured from the ground level
levels = rc.many_body_entanglement_levels(data, 8)
print("many-body levels:", np.round(levels - levels[0], 3))
