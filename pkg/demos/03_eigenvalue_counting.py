"""Fractal scaling of resonance counts: the eigenvalue-counting experiment.

For a closed map all N eigenvalues sit on the unit circle, so the number
above any threshold grows like N exactly. For an open map the count of
eigenvalues with |lambda| > eps is conjectured to grow like N^(d/2), where
d is the box-counting dimension of the classical trapped set. This script
runs the counting fit at several thresholds and compares the fitted
exponents to the classical prediction.
"""

import math
import os
import time

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qmaplab import OpenBakerSpec, count_above, weyl_fit
from qmaplab.spectra import spectra_for_dims

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

spec = OpenBakerSpec(3, (0, 2))
dims = [81, 243, 729, 2187]
predicted = math.log(2) / math.log(3)

print(f"open baker D=3, kept={spec.kept}; predicted exponent d/2 = {predicted:.4f}")
start = time.perf_counter()
results = spectra_for_dims(spec, dims, threads=2)
print(f"diagonalized N = {dims} in {time.perf_counter() - start:.1f} s\n")

fig, ax = plt.subplots(figsize=(6.4, 4.8))
for eps in (0.3, 0.5, 0.7):
    counts = [count_above(results[n], eps) for n in dims]
    slope, intercept = np.polyfit(np.log(dims), np.log(counts), 1)
    print(f"eps = {eps}: counts {counts}  ->  slope {slope:.4f}")
    ax.loglog(dims, counts, "o-", label=f"eps = {eps} (slope {slope:.3f})")

ax.loglog(dims, np.array(dims, float) ** predicted, "k--",
          label=f"slope {predicted:.3f} (classical prediction)")
ax.set_xlabel("matrix dimension N")
ax.set_ylabel("# eigenvalues above threshold")
ax.set_title("eigenvalue counting for the open 3-baker")
ax.legend()
fig.tight_layout()
path = os.path.join(OUT, "eigenvalue_counting.png")
fig.savefig(path, dpi=150)
print(f"\nwrote {path}")

print("\nsanity identity: the closed map must give slope 1 exactly")
closed_fit = weyl_fit(OpenBakerSpec(3, (0, 1, 2)), [81, 243, 729], 0.5)
print(f"closed slope = {closed_fit.slope:.10f}")
