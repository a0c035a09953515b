# Noisy circle and sphere samples; the long bars are the loop and the void.
import time

import numpy as np

from vrbarcode import DenseDistanceMatrix, rips_barcodes
from vrbarcode.datasets import sphere_points

rng = np.random.default_rng(7)
angles = rng.uniform(0, 2 * np.pi, 60)
circle = np.c_[np.cos(angles), np.sin(angles)] + rng.normal(0, 0.05, (60, 2))

result = rips_barcodes(DenseDistanceMatrix.from_points(circle), max_dim=1)
bars = sorted(result.barcode[1], key=lambda bar: bar[0] - bar[1])
print("circle, longest dim 1 bars:", bars[:3])

points = sphere_points(100, seed=1)
start = time.perf_counter()
result = rips_barcodes(DenseDistanceMatrix.from_points(points), max_dim=2)
print(f"sphere with 100 points: {time.perf_counter() - start:.1f} s")
print("dim 2 bars:", result.barcode[2])

# most pairs never reach the reduction loop
for d, counts in sorted(result.stats.items()):
    print(d, counts, "non-zero", counts.non_zero)
print("columns reduced per dimension:", result.columns_reduced)
