"""The soft-edge density sigma_beta and its two tails.

For beta = 2 sigma is the Airy kernel on the diagonal; for beta = 4 it
comes from a four-fold contour integral.  The table shows how the exact
finite-N densities, rescaled at the largest eigenvalue, close in on
sigma_4 from both families.
"""

import math

from betaens import EnsembleSpec, k_asym_left, k_asym_right, k_det_beta2, soft_edge_density
from betaens.softedge import edge_to_physical
from betaens.symop import exact_density

print("   x     sigma_2     sigma_4")
for x in (-6.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0):
    print(f"{x:5.1f}  {float(soft_edge_density(2, x)):.6e}  {float(soft_edge_density(4, x)):.6e}")

print()
print("beta = 2 tails against the Airy kernel (K = 2 sigma)")
for x in (4.0, 6.0, 8.0):
    print(f"  right x = {x:4.1f}: relative error {abs(k_asym_right(2, x) / k_det_beta2(2, x) - 1):.3f}")
for x in (-4.0, -8.0, -16.0):
    s = float(soft_edge_density(2, x))
    print(f"  left  x = {x:5.1f}: relative error {abs(k_asym_left(2, x) / s - 1):.1e}, "
          f"sqrt|x|/pi = {math.sqrt(-x) / math.pi:.4f}, sigma = {s:.4f}")

print()
s4 = float(soft_edge_density(4, 0.0))
print(f"sigma_4(0) = {s4:.6e}; exact densities rescaled at the edge:")
print("   N    Hermite      Laguerre")
for N in (4, 6, 8, 10):
    out = []
    for spec in (EnsembleSpec.hermite(N, 4), EnsembleSpec.laguerre(N, 4, 0)):
        X, jac = edge_to_physical(spec, 0.0)
        out.append(float(exact_density(spec, X)) * jac)
    print(f"{N:4d}  {out[0]:.4e}   {out[1]:.4e}")
