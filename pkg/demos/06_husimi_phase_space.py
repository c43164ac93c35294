"""Phase-space portraits: Husimi distributions of states under open dynamics.

The Husimi distribution projects a state onto coherent states at every
phase-space point, giving a nonnegative density on the torus. A coherent
state shows a single Gaussian spot; iterating the open baker stretches the
surviving mass along the unstable (horizontal) direction while the hole
bites pieces out of it, sketching the classical trapped-set structure.
"""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from qmaplab import (
    OpenBakerSpec,
    PhasePoint,
    PlanckParameter,
    TorusState,
    husimi,
    husimi_peak,
    quantize_open_baker,
    torus_coherent_state,
)

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

N = 243
RES = 64
spec = OpenBakerSpec(3, (0, 2))
qmap = quantize_open_baker(spec, N)
planck = PlanckParameter(N)

center = PhasePoint(0.2, 0.6)
state = torus_coherent_state(planck, center)
peak = husimi_peak(husimi(state, RES))
print(f"coherent state at ({center.x}, {center.xi}); Husimi peak at "
      f"({peak.x:.4f}, {peak.xi:.4f})")

fig, axes = plt.subplots(1, 4, figsize=(14.5, 3.8))
amplitudes = state.amplitudes
for step, ax in enumerate(axes):
    current = TorusState(planck, amplitudes)
    H = husimi(current, RES)
    norm = np.linalg.norm(amplitudes)
    # transpose so x runs horizontally, xi vertically
    ax.imshow(H.T, origin="lower", extent=(0, 1, 0, 1), cmap="magma")
    ax.set_title(f"step {step}, norm {norm:.3f}")
    ax.set_xlabel("x")
    amplitudes = qmap.matrix @ amplitudes
axes[0].set_ylabel("xi")
fig.suptitle("open 3-baker: coherent state stretched along x, eaten by the hole")
fig.tight_layout()
path = os.path.join(OUT, "husimi_iteration.png")
fig.savefig(path, dpi=150)
print(f"wrote {path}")

norms = [1.0]
amplitudes = state.amplitudes
for _ in range(8):
    amplitudes = qmap.matrix @ amplitudes
    norms.append(float(np.linalg.norm(amplitudes)))
print("decay of the surviving norm:", " ".join(f"{v:.3f}" for v in norms))
