"""Laguerre N = 4, beta = 6: how the oscillations move when a grows.

The a = 0 curve has a maximum against the hard edge that the window
[0.005, 0.995] cannot show as interior, so maxima are paired through
the oscillation phase rather than by their order.
"""

import math

import numpy as np

from betaens import EnsembleSpec
from betaens.bulk import bulk_laguerre_density, laguerre_phase
from betaens.cli import peak_locations
from betaens.symop import exact_density

x = np.arange(0.005, 0.995 + 1e-9, 0.001)
table = {}
for a in (0, 1, 2):
    spec = EnsembleSpec.laguerre(4, 6, a)
    bulk = bulk_laguerre_density(spec, x)
    exact = 4 * exact_density(spec, 16 * x)
    pb = peak_locations(x, bulk)
    pe = peak_locations(x, exact)
    branch = np.round((laguerre_phase(4, 6, a, pb) - math.pi) / (2 * math.pi)).astype(int)
    table[a] = dict(zip(branch.tolist(), pb.tolist()))
    print(f"a = {a}: bulk maxima  {np.array2string(pb, precision=3)}")
    print(f"       exact maxima {np.array2string(pe, precision=3)}")

print()
print("branch   a=0     a=1     a=2")
for m in sorted(set().union(*table.values())):
    cells = [f"{table[a][m]:.3f}" if m in table[a] else "  -  " for a in (0, 1, 2)]
    print(f"{m:6d}   " + "   ".join(cells))
