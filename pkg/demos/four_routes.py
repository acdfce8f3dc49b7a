"""Hermite N = 7, beta = 6 computed four ways.

Prints the peaks of the exact density next to the bulk series, and the
distance of a Monte Carlo histogram from the exact curve.  Run from the
repository root:  python3 demos/four_routes.py
"""

import numpy as np

from betaens import EnsembleSpec, Scaling
from betaens.cli import compute_curve, compare_curves, peak_locations

spec = EnsembleSpec.hermite(7, 6)
grid = np.arange(-0.99, 0.99 + 1e-9, 0.01)

exact = compute_curve(spec, "exact", grid, Scaling.BULK_HERMITE)
bulk = compute_curve(spec, "bulk", grid, Scaling.BULK_HERMITE)
fine = np.arange(-0.99, 0.99 + 1e-9, 0.001)
pe = peak_locations(fine, compute_curve(spec, "exact", fine, Scaling.BULK_HERMITE).values)
pb = peak_locations(fine, compute_curve(spec, "bulk", fine, Scaling.BULK_HERMITE).values)

print("peak   exact     bulk")
for i, (a, b) in enumerate(zip(pe, pb)):
    print(f"{i + 1:4d}  {a:+.3f}   {b:+.3f}")

# histogram cells: compare against the exact density averaged over each cell
mc = compute_curve(spec, "mc", grid, Scaling.BULK_HERMITE, samples=50_000, seed=1, threads=4)
cells = compute_curve(spec, "exact", grid, Scaling.BULK_HERMITE, cell_average=True)
m = compare_curves({"exact": cells, "mc": mc, "bulk": bulk})
for p in m["pairs"]:
    print(f"{p['a']:>5} vs {p['b']:<5} L1 {p['L1']:.4f}  Linf {p['Linf']:.4f}")

print()
print("bulk-scaled density, exact (#) and bulk series (.)")
rows = 16
ymax = exact.values.max()
for r in range(rows, 0, -1):
    level = ymax * (r - 0.5) / rows
    line = []
    for ye, yb in zip(exact.values[::2], bulk.values[::2]):
        line.append("#" if ye >= level else "." if yb >= level else " ")
    print("".join(line))
