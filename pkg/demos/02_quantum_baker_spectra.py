"""Quantized baker maps: unitary when closed, strictly inside the disk when open.

Quantization replaces the classical map by an N x N matrix built from
discrete Fourier blocks (one block per vertical strip). Removing strips
zeroes the corresponding blocks: the matrix becomes subunitary and its
eigenvalues - the quantum decay rates - move off the unit circle into the
disk. The plot contrasts the closed and open spectra at the same N.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qmaplab import OpenBakerSpec, eigenvalues, quantize_closed_baker, quantize_open_baker

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

N = 243
closed = quantize_closed_baker(3, N)
opened = quantize_open_baker(OpenBakerSpec(3, (0, 2)), N)

defect = np.abs(closed.matrix.conj().T @ closed.matrix - np.eye(N)).max()
print(f"closed baker, N={N}: unitarity defect {defect:.2e}")

closed_spec = eigenvalues(closed)
open_spec = eigenvalues(opened)
print(f"closed spectrum: max ||lambda| - 1| = {np.abs(np.abs(closed_spec.eigenvalues) - 1).max():.2e}")
print(f"open spectrum:   spectral radius    = {np.abs(open_spec.eigenvalues).max():.6f}")
print(f"open spectrum:   eigenvalues with |lambda| > 0.5: "
      f"{(np.abs(open_spec.eigenvalues) > 0.5).sum()} of {N}")
print(f"trace residual (accuracy contract): {open_spec.trace_residual:.2e}")

fig, axes = plt.subplots(1, 2, figsize=(9.2, 4.6), sharex=True, sharey=True)
circle = np.exp(1j * np.linspace(0, 2 * np.pi, 400))
for ax, result, title in [
    (axes[0], closed_spec, "closed baker (unitary)"),
    (axes[1], open_spec, "open baker, middle strip removed"),
]:
    ax.plot(circle.real, circle.imag, "k-", lw=0.8, alpha=0.5)
    ax.scatter(result.eigenvalues.real, result.eigenvalues.imag, s=8, alpha=0.7)
    ax.set_title(f"{title}, N={N}")
    ax.set_xlabel("Re")
    ax.set_aspect("equal")
axes[0].set_ylabel("Im")
fig.tight_layout()
path = os.path.join(OUT, "baker_spectra.png")
fig.savefig(path, dpi=150)
print(f"\nwrote {path}")
