"""Spectral radius of a large symmetric network read off its small divisor matrix.

Run with ``python3 demos/spectral_radius.py``.
"""

import numpy as np

from eqdecomp import divisor_spectral_radius, planted_basic, radius_chain, spectral_radius

rng = np.random.default_rng(11)

# 4 fixed vertices and 20 orbits of length 5: a 104 x 104 nonnegative matrix
# whose divisor is only 24 x 24.
M, psi = planted_basic(rng, N=4, r=20, k=5, mode="nonnegative")
print("matrix size:", M.shape[0], "  automorphism order:", psi.order)

rho_div, is_member = divisor_spectral_radius(M, psi)
rho_full = spectral_radius(M)
print(f"radius from the divisor     : {rho_div:.12f}")
print(f"radius of the full matrix   : {rho_full:.12f}")
print("radius is a divisor eigenvalue:", is_member)

# The blocks B_1..B_{k-1} never beat B_0, and B_0 never beats the divisor.
blocks, rho_b0, rho_d = radius_chain(M, psi)
print("\nrho(B_m) for m = 1..4:", np.round(blocks, 6))
print(f"rho(B_0) = {rho_b0:.6f}   rho(divisor) = {rho_d:.6f}")
