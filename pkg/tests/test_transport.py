"""Generated maps, the propagator quadrature, and wave-packet transport."""

import math

import numpy as np
import pytest

from qmaplab.errors import (
    DegenerateJacobianError,
    PhaseResolutionError,
    SupportNotCoveredError,
)
from qmaplab.quantize import (
    GeneratingFunction,
    LineState,
    UniformGrid,
    box_symbol,
    fio_apply,
    identity_generating,
    kick_generating,
    line_coherent_state,
    required_quadrature_spacing,
    shear_generating,
    solve_map_from_generating,
    transport_check,
)
from qmaplab.lab import run_transport


def test_solve_identity():
    W = identity_generating()
    x1, xi1 = solve_map_from_generating(W, 0.37, -0.21)
    assert (x1, xi1) == pytest.approx((0.37, -0.21), abs=1e-10)


def test_solve_shear():
    W = shear_generating()
    x1, xi1 = solve_map_from_generating(W, 0.1, 0.3)
    assert (x1, xi1) == pytest.approx((-0.2, 0.3), abs=1e-10)


def test_solve_kick():
    W = kick_generating()
    x1, xi1 = solve_map_from_generating(W, 0.4, 0.25)
    assert (x1, xi1) == pytest.approx((0.4, 0.65), abs=1e-10)


def test_solve_degenerate_jacobian():
    flat = GeneratingFunction(
        evaluate=lambda x1, xi0: np.zeros(np.broadcast_shapes(np.shape(x1), np.shape(xi0))),
        grad=lambda x1, xi0: (
            np.zeros(np.broadcast_shapes(np.shape(x1), np.shape(xi0))),
            np.zeros(np.broadcast_shapes(np.shape(x1), np.shape(xi0))),
        ),
        name="flat",
    )
    with pytest.raises(DegenerateJacobianError):
        solve_map_from_generating(flat, 0.3, 0.1)


@pytest.mark.parametrize("factory", [identity_generating, shear_generating, kick_generating])
def test_gradients_match_finite_differences(factory):
    W = factory()
    rng = np.random.default_rng(42)
    step = 1e-6
    for x1, xi0 in rng.uniform(-1.5, 1.5, size=(100, 2)):
        gx, gxi = W.grad(x1, xi0)
        fd_x = (W.evaluate(x1 + step, xi0) - W.evaluate(x1 - step, xi0)) / (2 * step)
        fd_xi = (W.evaluate(x1, xi0 + step) - W.evaluate(x1, xi0 - step)) / (2 * step)
        scale = max(1.0, abs(gx), abs(gxi))
        assert abs(gx - fd_x) / scale <= 1e-6
        assert abs(gxi - fd_xi) / scale <= 1e-6


def packet_setup(h, x0, xi0, halfwidth_factor=6.5):
    """Input grid, state, and a symbol box sized like the transport driver."""
    W = identity_generating()
    sigma = math.sqrt(h / 2)
    box = box_symbol(x0 - 8 * math.sqrt(h), x0 + 8 * math.sqrt(h), xi0 - 8 * sigma, xi0 + 8 * sigma)
    halfwidth = halfwidth_factor * math.sqrt(h)
    bound = required_quadrature_spacing(
        W, h, (x0 - halfwidth, x0 + halfwidth), box.support_box[2:], (x0 - halfwidth, x0 + halfwidth)
    )
    spacing = min(math.sqrt(h) / 8, 0.95 * bound)
    count = int(math.ceil(2 * halfwidth / spacing)) + 2
    grid = UniformGrid(origin=x0 - halfwidth, spacing=spacing, count=count)
    state = line_coherent_state(x0, xi0, h, grid)
    return W, box, grid, state


def test_fio_identity_reproduces_input():
    h = 0.05
    W, box, grid, state = packet_setup(h, 0.0, 0.5)
    out = fio_apply(W, box, h, state, grid)
    rel = np.linalg.norm(out.samples - state.samples) / np.linalg.norm(state.samples)
    assert rel <= 0.05
    # quadrature is effectively exact for the quadratic phase
    assert rel <= 1e-5


def test_fio_zero_input_gives_zero():
    h = 0.05
    W, box, grid, state = packet_setup(h, 0.0, 0.5)
    zero = LineState(grid, np.zeros_like(state.samples))
    out = fio_apply(W, box, h, zero, grid)
    assert np.abs(out.samples).max() == 0.0


def test_fio_linearity():
    h = 0.05
    W, box, grid, psi1 = packet_setup(h, 0.0, 0.5)
    psi2 = line_coherent_state(0.05, 0.45, h, grid)
    combined = LineState(grid, psi1.samples + psi2.samples)
    lhs = fio_apply(W, box, h, combined, grid).samples
    rhs = fio_apply(W, box, h, psi1, grid).samples + fio_apply(W, box, h, psi2, grid).samples
    assert np.abs(lhs - rhs).max() <= 1e-10


def test_fio_conjugation_symmetry():
    # for real W and a: conj(M'[conj psi]) = M[psi], where M' has phase
    # W'(x1, xi) = -W(x1, -xi) and the momentum box mirrored through 0
    h = 0.05
    W, box, grid, state = packet_setup(h, 0.0, 0.5)
    x1_lo, x1_hi, xi_lo, xi_hi = box.support_box
    mirrored_box = box_symbol(x1_lo, x1_hi, -xi_hi, -xi_lo)

    def reflected_grad(x1, xi0):
        gx, gxi = W.grad(x1, -np.asarray(xi0))
        return -gx, gxi

    reflected_W = GeneratingFunction(
        evaluate=lambda x1, xi0: -W.evaluate(x1, -np.asarray(xi0)),
        grad=reflected_grad,
        name="reflected",
    )
    conj_state = LineState(grid, np.conj(state.samples))
    lhs = np.conj(fio_apply(reflected_W, mirrored_box, h, conj_state, grid).samples)
    rhs = fio_apply(W, box, h, state, grid).samples
    assert np.abs(lhs - rhs).max() <= 1e-10


def test_fio_phase_resolution_guard():
    h = 0.05
    W, box, grid, state = packet_setup(h, 0.0, 0.5)
    coarse = UniformGrid(grid.origin, math.sqrt(h) / 4, int(grid.count * grid.spacing / (math.sqrt(h) / 4)) + 1)
    coarse_state = line_coherent_state(0.0, 0.5, h, coarse)
    with pytest.raises(PhaseResolutionError):
        fio_apply(W, box, h, coarse_state, coarse)


def test_fio_support_not_covered_guard():
    h = 0.05
    W, box, grid, state = packet_setup(h, 0.0, 0.5)
    # momentum box far away from the state's content at xi = 0.5
    bad_box = box_symbol(box.support_box[0], box.support_box[1], -0.15, 0.1)
    with pytest.raises(SupportNotCoveredError):
        fio_apply(W, bad_box, h, state, grid)


def test_transport_shear():
    report = run_transport("shear", 0.02, (0.1, 0.3))
    assert report.expected == pytest.approx((-0.2, 0.3), abs=1e-9)
    assert report.distance <= 0.5 * math.sqrt(0.02)


def test_transport_identity():
    report = run_transport("identity", 0.05, (0.1, 0.3))
    assert report.expected == pytest.approx((0.1, 0.3), abs=1e-9)
    assert report.distance <= 0.5 * math.sqrt(0.05)


def test_transport_kick():
    report = run_transport("kick", 0.04, (0.3, 0.2))
    assert report.expected == pytest.approx((0.3, 0.5), abs=1e-9)
    assert report.distance <= 0.5 * math.sqrt(0.04)


def test_transport_localization_sweep_monotone():
    distances = [run_transport("shear", h, (0.1, 0.3)).distance for h in (0.08, 0.04, 0.02)]
    floor = 1e-8  # quadratic phases sit at quadrature noise level
    for wider, narrower in zip(distances, distances[1:]):
        assert narrower <= max(1.2 * wider, floor)
