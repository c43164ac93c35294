"""Wave packets ride the classical map: the propagator quadrature at work.

The quantum propagator is an oscillatory integral built from a generating
function W(x1, xi0). Feeding it a Gaussian coherent state at (x0, xi0)
must produce a state concentrated at the classically mapped point - that
is the whole content of "quantization". Here we integrate the propagator
numerically (trapezoid rule, phase-resolution controlled) and measure the
image packet's position and momentum centroids directly.
"""

import math

from qmaplab import box_symbol, shear_generating, solve_map_from_generating, transport_check
from qmaplab.lab import run_transport

# --- what the classical map does -------------------------------------------
W = shear_generating()
x0, xi0 = 0.1, 0.3
x1, xi1 = solve_map_from_generating(W, x0, xi0)
print(f"generating function: W = x1*xi0 + xi0^2/2  ('{W.name}')")
print(f"classical image of ({x0}, {xi0}): ({x1:.6f}, {xi1:.6f})")

# --- quantum transport at a fixed h ----------------------------------------
h = 0.02
report = run_transport("shear", h, (x0, xi0))
print(f"\nh = {h}: image packet measured at "
      f"({report.measured[0]:.6f}, {report.measured[1]:.6f})")
print(f"distance from classical image: {report.distance:.3e}"
      f"  (localization scale 0.5*sqrt(h) = {0.5 * math.sqrt(h):.3f})")

# --- the packet localizes as h shrinks --------------------------------------
print("\nlocalization sweep (distance should not grow as h decreases):")
for h in (0.08, 0.04, 0.02, 0.01):
    sweep = run_transport("shear", h, (x0, xi0))
    print(f"  h = {h:5.3f}: distance {sweep.distance:.3e}")

# --- the same machinery, called directly ------------------------------------
sigma = math.sqrt(0.05 / 2)
symbol = box_symbol(-1.0, 1.0, 0.3 - 8 * sigma, 0.3 + 8 * sigma)
direct = transport_check(shear_generating(), symbol, 0.05, (0.1, 0.3))
print(f"\ndirect transport_check call at h=0.05: distance {direct.distance:.3e}")
print("(quadratic phases are integrated essentially exactly; the distances sit")
print("at quadrature noise level, far below the packet width)")
