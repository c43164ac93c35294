"""Dense spectra, counting fits, gap reports, and decay curves."""

import math

import numpy as np
import pytest

from qmaplab.classical import OpenBakerSpec, PhasePoint
from qmaplab.errors import DimensionTooLargeError
from qmaplab.quantize import (
    PlanckParameter,
    QuantumMap,
    TorusState,
    kept_position_mask,
    quantize_closed_baker,
    quantize_open_baker,
    quantize_open_cat,
    torus_coherent_state,
)
from qmaplab.spectra import (
    count_above,
    eigenvalues,
    gap_experiment,
    iterate,
    spectral_radius,
    weyl_fit,
    weyl_fit_from_counts,
)
from oracles import matched_max_distance, spectrum_oracle

SPEC32 = OpenBakerSpec(3, (0, 2))


def as_map(matrix):
    matrix = np.asarray(matrix, dtype=np.complex128)
    return QuantumMap(PlanckParameter(matrix.shape[0]), matrix, "test")


def test_identity_spectrum():
    result = eigenvalues(as_map(np.eye(5)))
    assert len(result.eigenvalues) == 5
    assert result.eigenvalues == pytest.approx(np.ones(5))


def test_closed_baker_spectrum_unit_circle():
    result = eigenvalues(quantize_closed_baker(3, 81))
    assert len(result.eigenvalues) == 81
    assert np.abs(np.abs(result.eigenvalues) - 1.0).max() <= 1e-8


def test_open_baker_matches_char_poly_oracle():
    qmap = quantize_open_baker(SPEC32, 9)
    result = eigenvalues(qmap)
    oracle = spectrum_oracle(qmap.matrix)
    assert matched_max_distance(result.eigenvalues, oracle) <= 1e-8


def test_trace_residual_contract():
    for qmap in [
        quantize_open_baker(SPEC32, 27),
        quantize_closed_baker(2, 32),
        quantize_open_cat(2, 1, 3, 2, (0.3, 0.5), 40),
    ]:
        result = eigenvalues(qmap)
        bound = 1e-8 * qmap.dim * np.abs(qmap.matrix).max()
        assert result.trace_residual <= bound
        assert result.trace2_residual <= bound


def test_dimension_too_large_guard():
    with pytest.raises(DimensionTooLargeError):
        eigenvalues(as_map(np.eye(10)), max_dim=5)


def test_eigenvalues_deterministic():
    qmap = quantize_open_baker(SPEC32, 27)
    first = eigenvalues(qmap).eigenvalues
    second = eigenvalues(qmap).eigenvalues
    assert np.array_equal(first, second)


def test_spectral_radius_cases():
    assert spectral_radius(eigenvalues(quantize_closed_baker(3, 27))) == pytest.approx(1.0, abs=1e-8)
    assert spectral_radius(eigenvalues(as_map(np.zeros((4, 4))))) == 0.0
    nilpotent = np.zeros((2, 2))
    nilpotent[0, 1] = 1.0
    assert spectral_radius(eigenvalues(as_map(nilpotent))) <= 1e-8


def test_count_above_cases():
    unitary = eigenvalues(quantize_closed_baker(3, 27))
    assert count_above(unitary, 0.5) == 27
    zero = eigenvalues(as_map(np.zeros((6, 6))))
    assert count_above(zero, 0.5) == 0
    open_result = eigenvalues(quantize_open_baker(SPEC32, 27))
    counts = [count_above(open_result, eps) for eps in (0.1, 0.3, 0.5, 0.7, 0.9)]
    assert counts == sorted(counts, reverse=True)
    with pytest.raises(ValueError):
        count_above(unitary, 0.0)
    with pytest.raises(ValueError):
        count_above(unitary, 1.0)


def test_weyl_closed_slope_is_one():
    fit = weyl_fit(OpenBakerSpec(3, (0, 1, 2)), [9, 27, 81], 0.5)
    assert fit.slope == pytest.approx(1.0, abs=1e-6)
    assert fit.counts == [9, 27, 81]
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.predicted_exponent == pytest.approx(1.0)


def test_weyl_open_fit_sane():
    fit = weyl_fit(SPEC32, [9, 27, 81], 0.5)
    assert fit.predicted_exponent == pytest.approx(math.log(2) / math.log(3))
    assert all(c <= n for c, n in zip(fit.counts, fit.dims))
    assert 0.0 <= fit.r_squared <= 1.0
    assert math.isfinite(fit.slope)


def test_weyl_requires_three_dims():
    with pytest.raises(ValueError):
        weyl_fit(SPEC32, [9, 27], 0.5)


def test_weyl_zero_count_rejected():
    with pytest.raises(ValueError, match="zero eigenvalue count"):
        weyl_fit_from_counts(SPEC32, [9, 27, 81], [3, 0, 5], 0.5)


def test_weyl_single_branch_counts_bounded():
    fit = weyl_fit(OpenBakerSpec(3, (1,)), [9, 27, 81], 0.5)
    assert -0.2 <= fit.slope <= 0.3
    assert max(fit.counts) <= 3


def test_gap_experiment_negative_pressure():
    report = gap_experiment(OpenBakerSpec(5, (0, 2)), [25, 125])
    assert report.gamma == pytest.approx(2 / math.sqrt(5), abs=1e-10)
    assert report.pressure_half == pytest.approx(math.log(2) - 0.5 * math.log(5), abs=1e-12)
    assert report.note is None
    assert report.passed is True
    assert [n for n, _ in report.radii] == [25, 125]
    assert all(r <= 1 + 1e-8 for _, r in report.radii)


def test_gap_experiment_positive_pressure_inapplicable():
    report = gap_experiment(SPEC32, [9, 27])
    assert report.pressure_half > 0
    assert report.passed is None
    assert "inapplicable" in report.note


def test_gap_experiment_closed_map():
    report = gap_experiment(OpenBakerSpec(2, (0, 1)), [8, 16])
    assert report.radii[-1][1] == pytest.approx(1.0, abs=1e-8)
    assert report.passed is None  # positive pressure: bound asserts nothing


def test_iterate_unitary_preserves_norm():
    qmap = quantize_closed_baker(3, 81)
    state = torus_coherent_state(qmap.planck, PhasePoint(0.2, 0.4))
    norms = iterate(qmap, state, 10)
    assert len(norms) == 11
    assert np.abs(np.asarray(norms) - 1.0).max() <= 1e-10


def test_iterate_zero_map():
    planck = PlanckParameter(8)
    qmap = QuantumMap(planck, np.zeros((8, 8), dtype=complex), "zero")
    state = torus_coherent_state(planck, PhasePoint(0.5, 0.5))
    norms = iterate(qmap, state, 3)
    assert norms[0] == pytest.approx(1.0, abs=1e-12)
    assert norms[1:] == [0.0, 0.0, 0.0]


@pytest.mark.parametrize(
    "qmap_factory",
    [
        lambda: quantize_open_baker(SPEC32, 81),
        lambda: quantize_open_baker(OpenBakerSpec(5, (1, 3)), 125),
        lambda: quantize_open_cat(2, 1, 3, 2, (0.2, 0.45), 64),
    ],
)
def test_iterate_norms_nonincreasing(qmap_factory):
    qmap = qmap_factory()
    state = torus_coherent_state(qmap.planck, PhasePoint(0.15, 0.65))
    norms = iterate(qmap, state, 20)
    for before, after in zip(norms, norms[1:]):
        assert after <= before + 1e-10


def test_iterate_hole_state_decays_like_projector_mass():
    qmap = quantize_open_baker(SPEC32, 81)
    state = torus_coherent_state(qmap.planck, PhasePoint(0.5, 0.5))
    norms = iterate(qmap, state, 1)
    projector_mass = float(np.linalg.norm(state.amplitudes[kept_position_mask(SPEC32, 81)]))
    assert norms[1] <= 0.1 * norms[0]
    assert norms[1] == pytest.approx(projector_mass, abs=1e-12)


def test_iterate_straddling_state_matches_projector_mass():
    qmap = quantize_open_baker(SPEC32, 81)
    state = torus_coherent_state(qmap.planck, PhasePoint(1 / 3, 0.5))
    norms = iterate(qmap, state, 1)
    projector_mass = float(np.linalg.norm(state.amplitudes[kept_position_mask(SPEC32, 81)]))
    assert norms[1] == pytest.approx(projector_mass, abs=1e-12)
    assert 0.5 <= norms[1] <= 0.9  # roughly half the mass sits in the hole
