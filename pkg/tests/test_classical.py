"""Classical open-baker dynamics: exactness of every advertised oracle."""

import itertools
import math

import numpy as np
import pytest

from qmaplab import classical
from qmaplab.classical import (
    ESCAPED,
    OpenBakerSpec,
    PhasePoint,
    apply_baker,
    apply_baker_inverse,
    box_count,
    minkowski_dimension,
    periodic_point,
    topological_pressure,
    trapped_set_points,
    unstable_jacobian,
)
from qmaplab.errors import CapExceededError, EscapedPointError

SPEC32 = OpenBakerSpec(3, (0, 2))


def test_spec_validation():
    with pytest.raises(ValueError):
        OpenBakerSpec(1, (0,))
    with pytest.raises(ValueError):
        OpenBakerSpec(3, ())
    with pytest.raises(ValueError, match="out of range"):
        OpenBakerSpec(3, (7,))
    with pytest.raises(ValueError, match="strictly increasing"):
        OpenBakerSpec(3, (2, 0))
    assert OpenBakerSpec(3, (0, 1, 2)).is_closed
    assert not SPEC32.is_closed


def test_phase_point_reduced_mod_1():
    p = PhasePoint(1.25, -0.25)
    assert p.x == pytest.approx(0.25)
    assert p.xi == pytest.approx(0.75)


def test_apply_baker_fixed_point():
    p = apply_baker(SPEC32, PhasePoint(0.0, 0.0))
    assert (p.x, p.xi) == (0.0, 0.0)


def test_apply_baker_escape():
    assert apply_baker(SPEC32, PhasePoint(0.4, 0.1)) is ESCAPED


def test_apply_baker_branch_two():
    p = apply_baker(SPEC32, PhasePoint(0.8, 0.5))
    assert p.x == pytest.approx(0.4, abs=1e-14)
    assert p.xi == pytest.approx(2.5 / 3.0, abs=1e-14)


def test_inverse_examples():
    p = apply_baker_inverse(SPEC32, PhasePoint(0.4, 0.8333333333333333))
    assert p.x == pytest.approx(0.8, abs=1e-12)
    assert p.xi == pytest.approx(0.5, abs=1e-12)
    assert apply_baker_inverse(SPEC32, PhasePoint(0.2, 0.5)) is ESCAPED


@pytest.mark.parametrize("base,kept", [(2, (0,)), (3, (0, 2)), (5, (1, 3, 4)), (4, (0, 1, 2, 3))])
def test_forward_backward_roundtrip(base, kept):
    spec = OpenBakerSpec(base, kept)
    rng = np.random.default_rng(7)
    checked = 0
    for x, xi in rng.random((300, 2)):
        p = PhasePoint(x, xi)
        q = apply_baker(spec, p)
        if q is ESCAPED:
            continue
        back = apply_baker_inverse(spec, q)
        assert back is not ESCAPED
        assert abs(back.x - p.x) % 1.0 == pytest.approx(0.0, abs=1e-14)
        assert abs(back.xi - p.xi) % 1.0 == pytest.approx(0.0, abs=1e-14)
        checked += 1
    assert checked > 50


def test_trapped_set_depth_one():
    points = trapped_set_points(SPEC32, 1)
    assert len(points) == 4
    xs = sorted({p.x for p in points})
    xis = sorted({p.xi for p in points})
    assert xs == pytest.approx([1 / 6, 5 / 6])
    assert xis == pytest.approx([1 / 6, 5 / 6])


def test_trapped_set_full_torus_grid():
    spec = OpenBakerSpec(3, (0, 1, 2))
    points = trapped_set_points(spec, 1)
    assert len(points) == 9
    assert sorted({p.x for p in points}) == pytest.approx([1 / 6, 3 / 6, 5 / 6])


@pytest.mark.parametrize("depth", [1, 2, 3])
def test_trapped_set_count_law(depth):
    assert len(trapped_set_points(SPEC32, depth)) == 2 ** (2 * depth)


def test_trapped_set_cap():
    with pytest.raises(CapExceededError):
        trapped_set_points(SPEC32, 4, cap=100)


def test_box_count_values():
    assert box_count(SPEC32, 2) == 16
    closed = OpenBakerSpec(3, (0, 1, 2))
    assert box_count(closed, 2) == 3**4
    single = OpenBakerSpec(3, (1,))
    assert all(box_count(single, n) == 1 for n in range(1, 6))


def test_box_count_matches_cylinder_law():
    for base, kept in [(2, (0, 1)), (3, (0, 2)), (5, (0, 2, 3))]:
        spec = OpenBakerSpec(base, kept)
        for depth in range(1, 5):
            assert box_count(spec, depth) == len(kept) ** (2 * depth)


def test_minkowski_dimension_values():
    est = minkowski_dimension(SPEC32, 6)
    assert est.slope == pytest.approx(2 * math.log(2) / math.log(3), abs=1e-9)
    assert est.residual <= 1e-12
    assert minkowski_dimension(OpenBakerSpec(3, (0, 1, 2)), 5).slope == pytest.approx(2.0, abs=1e-12)
    assert minkowski_dimension(OpenBakerSpec(4, (2,)), 5).slope == pytest.approx(0.0, abs=1e-12)


def test_minkowski_counts_nonincreasing_in_scale():
    est = minkowski_dimension(SPEC32, 5)
    assert est.scales == sorted(est.scales, reverse=True)
    assert est.counts == sorted(est.counts)


def test_unstable_jacobian():
    assert unstable_jacobian(SPEC32, PhasePoint(0.1, 0.9)) == pytest.approx(-math.log(3))
    spec5 = OpenBakerSpec(5, (0, 2))
    assert unstable_jacobian(spec5, PhasePoint(0.45, 0.0)) == pytest.approx(-math.log(5))
    with pytest.raises(EscapedPointError):
        unstable_jacobian(SPEC32, PhasePoint(0.5, 0.5))


def test_unstable_jacobian_orbit_invariance():
    p = periodic_point(SPEC32, (0, 2))
    along = []
    while len(along) < 5:
        along.append(unstable_jacobian(SPEC32, p))
        p = apply_baker(SPEC32, p)
        assert p is not ESCAPED
    assert np.ptp(along) == 0.0


def test_periodic_point_is_periodic():
    word = (0, 2, 2)
    p = periodic_point(SPEC32, word)
    q = p
    for _ in word:
        q = apply_baker(SPEC32, q)
        assert q is not ESCAPED
    assert q.x == pytest.approx(p.x, abs=1e-12)
    assert q.xi == pytest.approx(p.xi, abs=1e-12)


def test_pressure_examples():
    r = topological_pressure(SPEC32, 0.5, 4)
    assert r.analytic_value == pytest.approx(math.log(2) - 0.5 * math.log(3), abs=1e-15)
    assert r.value == pytest.approx(0.14384103622589046, abs=1e-12)

    r5 = topological_pressure(OpenBakerSpec(5, (0, 2)), 0.5, 4)
    assert r5.value == pytest.approx(-0.11157177565710485, abs=1e-12)
    assert math.exp(r5.value) == pytest.approx(2 / math.sqrt(5), abs=1e-12)

    entropy = topological_pressure(OpenBakerSpec(3, (0, 1, 2)), 0.0, 3)
    assert entropy.value == pytest.approx(math.log(3), abs=1e-12)


@pytest.mark.parametrize("base,kept", [(3, (0, 2)), (5, (0, 2)), (4, (1, 2, 3)), (2, (1,))])
def test_pressure_word_length_independence(base, kept):
    spec = OpenBakerSpec(base, kept)
    values = [topological_pressure(spec, 0.5, n).value for n in range(1, 7)]
    for v in values:
        assert abs(v - values[0]) <= 1e-12
        assert abs(v - topological_pressure(spec, 0.5, 1).analytic_value) <= 1e-12


def test_pressure_strictly_decreasing_in_s():
    svals = [-0.5, 0.0, 0.3, 0.5, 1.0]
    values = [topological_pressure(SPEC32, s, 2).value for s in svals]
    for earlier, later in zip(values, values[1:]):
        assert later < earlier
    # slope is exactly -log D
    assert (values[1] - values[0]) / 0.5 == pytest.approx(-math.log(3), abs=1e-12)


def test_pressure_boundary_word_all_top_branch():
    # kept without branch 0: the all-(D-1) cycle sits on a strip boundary
    spec = OpenBakerSpec(3, (1, 2))
    r = topological_pressure(spec, 0.5, 3)
    assert r.value == pytest.approx(r.analytic_value, abs=1e-12)


def test_pressure_cap():
    with pytest.raises(CapExceededError):
        topological_pressure(SPEC32, 0.5, 25, cap=1000)


def test_sign_criterion_every_subset_up_to_base_7():
    """Pressure at s=1/2 is negative exactly when the trapped set is thin."""
    for base in range(2, 8):
        for r in range(1, base + 1):
            for kept in itertools.combinations(range(base), r):
                spec = OpenBakerSpec(base, kept)
                pressure = topological_pressure(spec, 0.5, 1).analytic_value
                slope = minkowski_dimension(spec, 3).slope
                if abs(pressure) < 1e-12:
                    assert abs(slope - 1.0) < 1e-9
                else:
                    assert (pressure < 0) == (slope < 1.0)
