"""
Couplings and single-body spectrum
==================================

The rainbow chain has hoppings that decay exponentially away from the
central link.  Its single-body spectrum is symmetric about zero, so half
filling is well defined.
"""

import numpy as np

import rainbowchain as rc

# a short chain keeps the numbers readable
spec = rc.ChainSpec(10, h=1.0)
print("positions x_i:", spec.site_positions())
print("couplings t_i:", np.round(spec.couplings(), 4))

# energies are eigenvalues of -T, ascending
spectrum = rc.diagonalize(rc.build_hopping_matrix(spec.couplings()))
print("energies:", np.round(spectrum.energies, 6))
print("max |e_k + e_(N+1-k)|:", np.abs(spectrum.energies + spectrum.energies[::-1]).max())

# strong inhomogeneity pushes the levels next to zero down to ~1e-25;
# the tridiagonal solver still resolves them to full relative accuracy
deep = rc.diagonalize(rc.build_hopping_matrix(rc.ChainSpec(16, h=8.0).couplings()))
print("smallest |e| at N=16, h=8:", np.abs(deep.energies).min())

# couplings round-trip through a one-column CSV
print(rc.write_couplings_csv(spec.couplings()[:3]))
