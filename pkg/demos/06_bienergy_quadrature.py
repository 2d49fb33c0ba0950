"""Chart-domain bienergy: (1/2) int |tau|^2 sqrt|g| over the chart box.

The midpoint rule is spectrally accurate on smooth periodic integrands, so
the catalog values converge to their closed forms almost immediately.
Harmonic fixtures integrate to zero because the tension vanishes pointwise.
"""

import math

from bieigen import bienergy_quadrature, build_map, catalog_get

# proper biharmonic circle: |tau| = 1 on a period of length pi sqrt(2)
name, small = build_map(catalog_get("small_circle_S2").manifest)
closed_form = 0.5 * math.pi * math.sqrt(2)
print(f"{name}: closed form {closed_form:.15f}")
for grid in (4, 16, 64, 256):
    value = bienergy_quadrature(small, grid)
    print(f"  grid {grid:4d}: {value:.15f}   error {abs(value - closed_form):.2e}")

# the surface analogue: |tau| = 2 over a pi x pi torus chart
name, comp = build_map(catalog_get("clifford_comp_S4").manifest)
closed_form = 2 * math.pi ** 2
print(f"\n{name}: closed form {closed_form:.15f}")
for grid in (4, 8, 16, 32):
    value = bienergy_quadrature(comp, grid)
    print(f"  grid {grid:4d}: {value:.15f}   error {abs(value - closed_form):.2e}")

# harmonic fixtures have zero tension everywhere
for fixture in ("great_circle_S2", "kfold_equator_S2", "clifford_torus_S3"):
    name, smap = build_map(catalog_get(fixture).manifest)
    print(f"\n{name}: bienergy {bienergy_quadrature(smap, 32):.3e} (harmonic)")
