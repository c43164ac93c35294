"""Classical open baker maps: escape, trapped set, and exact oracles.

The open baker stretches position by D, compresses momentum by D, and
deletes every trajectory that enters a removed vertical strip. What
survives forever (in both time directions) is a self-similar fractal, and
for this piecewise-linear family everything about it is computable in
closed form. This script walks through the dynamics and checks the two
classical quantities the quantum experiments lean on: the box-counting
dimension of the trapped set and the topological pressure at s = 1/2.
"""

import math

from qmaplab import (
    ESCAPED,
    OpenBakerSpec,
    PhasePoint,
    apply_baker,
    apply_baker_inverse,
    box_count,
    minkowski_dimension,
    topological_pressure,
    trapped_set_points,
)

spec = OpenBakerSpec(base=3, kept=(0, 2))
print(f"map: base-{spec.base} baker keeping strips {spec.kept} (middle strip removed)")

# --- a surviving orbit and an escaping one --------------------------------
p = PhasePoint(0.8, 0.5)
print(f"\norbit of {p}:")
for step in range(4):
    q = apply_baker(spec, p)
    if q is ESCAPED:
        print(f"  step {step + 1}: escaped through the hole")
        break
    print(f"  step {step + 1}: ({q.x:.6f}, {q.xi:.6f})")
    p = q

back = apply_baker_inverse(spec, PhasePoint(0.4, 2.5 / 3))
print(f"one inverse step from (0.4, 0.8333...): ({back.x:.3f}, {back.xi:.3f})")

# --- trapped set at increasing resolution ---------------------------------
print("\ncylinder boxes meeting the trapped set:")
for depth in range(1, 6):
    count = box_count(spec, depth)
    print(f"  depth {depth}: {count:6d} boxes of side 3^-{depth}  (= 2^{2 * depth})")

centers = trapped_set_points(spec, 2)
print(f"depth-2 cylinder centers: {len(centers)} points, first three:")
for point in centers[:3]:
    print(f"  ({point.x:.6f}, {point.xi:.6f})")

# --- dimension and pressure ------------------------------------------------
est = minkowski_dimension(spec, max_depth=6)
exact_dim = 2 * math.log(2) / math.log(3)
print(f"\nbox-counting dimension: fitted {est.slope:.12f}")
print(f"                        exact  {exact_dim:.12f}  (residual {est.residual:.1e})")

print("\ntopological pressure of s * (unstable log-Jacobian):")
for s in (0.0, 0.5, 1.0):
    r = topological_pressure(spec, s, word_length=5)
    print(f"  s = {s:3.1f}: cycle sum {r.value:+.12f}, analytic {r.analytic_value:+.12f}")

print("\nthe s = 1/2 sign decides everything downstream:")
for base, kept in [(3, (0, 2)), (5, (0, 2))]:
    r = topological_pressure(OpenBakerSpec(base, kept), 0.5, 1)
    gamma = math.exp(r.value)
    verdict = "negative -> spectral gap predicted" if r.value < 0 else "positive -> no gap guaranteed"
    print(f"  D={base}, kept={kept}: P = {r.value:+.5f} ({verdict}; exp(P) = {gamma:.5f})")
