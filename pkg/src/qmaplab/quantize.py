"""Quantizations of chaotic torus maps and the line-propagator quadrature.

Matrix models: the Balazs-Voros-Saraceno block-DFT baker (closed and open)
and a periodized quadratic-kernel quantization of hyperbolic torus
automorphisms ("cat maps") with an optional absorbing hole. Wave-packet
tools: torus and line coherent states, Husimi distributions, and a direct
trapezoid quadrature of the semiclassical Fourier-integral propagator

    (M psi)(x1) = (2 pi h)^-1 * integral a(x1, xi0)
                  * exp(i (W(x1, xi0) - xi0 x0) / h) psi(x0) dx0 dxi0,

used to check that wave packets are transported along the classical map
generated by W.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    BadDeterminantError,
    ConventionUnsatisfiableError,
    DegenerateJacobianError,
    DimensionNotDivisibleError,
    EmptyInputError,
    GridTooCoarseError,
    GridTooNarrowError,
    NoConvergenceError,
    NotHyperbolicError,
    PhaseResolutionError,
    SupportNotCoveredError,
)
from .classical import PhasePoint

DEFAULT_THETA = 0.5
PERIODIZATION_IMAGES = 3  # Gaussian tail below 1e-12 for N >= 8
PHASE_STEP_FRACTION = math.pi / 4


@dataclass(frozen=True)
class PlanckParameter:
    """Hilbert-space dimension N with the derived effective Planck constant."""

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dim must be >= 1, got {self.dim}")

    @property
    def h(self):
        return 1.0 / (2.0 * math.pi * self.dim)


@dataclass
class QuantumMap:
    """N x N (sub)unitary matrix quantizing a torus map, plus provenance."""

    planck: PlanckParameter
    matrix: np.ndarray
    model: str

    @property
    def dim(self):
        return self.planck.dim


@dataclass
class TorusState:
    """State vector on the N-dimensional torus Hilbert space."""

    planck: PlanckParameter
    amplitudes: np.ndarray

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class UniformGrid:
    """Uniform 1-d grid: origin + spacing * (0 .. count-1)."""

    origin: float
    spacing: float
    count: int

    def __post_init__(self):
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")
        if self.count < 2:
            raise ValueError("count must be >= 2")

    @property
    def nodes(self):
        return self.origin + self.spacing * np.arange(self.count)

    @property
    def last(self):
        return self.origin + self.spacing * (self.count - 1)


@dataclass
class LineState:
    """Complex samples of a wavefunction on a uniform grid over R."""

    grid: UniformGrid
    samples: np.ndarray

    def norm(self):
        """Trapezoid L2 norm."""
        return float(np.sqrt(np.trapezoid(np.abs(self.samples) ** 2, dx=self.grid.spacing)))


@dataclass(frozen=True)
class GeneratingFunction:
    """Scalar generating function W(x1, xi0) with its two first partials.

    ``evaluate`` and ``grad`` must broadcast over numpy arrays; ``grad``
    returns the pair (dW/dx1, dW/dxi0). The generated map (x0, xi0) ->
    (x1, xi1) solves xi1 = dW/dx1, x0 = dW/dxi0.
    """

    evaluate: Callable
    grad: Callable
    name: str = "custom"


@dataclass(frozen=True)
class SymbolFunction:
    """Amplitude a(x1, xi0), compactly supported in ``support_box``.

    support_box = (x1_lo, x1_hi, xi_lo, xi_hi); evaluate vanishes outside.
    """

    evaluate: Callable
    support_box: tuple


@dataclass
class TransportReport:
    """Result of one wave-packet transport experiment."""

    h: float
    start: tuple
    expected: tuple
    measured: tuple
    distance: float


def identity_generating():
    """W = x1*xi0, generating the identity map."""

    def grad(x1, xi0):
        x1, xi0 = np.broadcast_arrays(x1, xi0)
        return xi0, x1

    return GeneratingFunction(evaluate=lambda x1, xi0: x1 * xi0, grad=grad, name="identity")


def shear_generating():
    """W = x1*xi0 + xi0^2/2, generating the momentum shear (x - xi, xi)."""

    def grad(x1, xi0):
        x1, xi0 = np.broadcast_arrays(x1, xi0)
        return xi0, x1 + xi0

    return GeneratingFunction(
        evaluate=lambda x1, xi0: x1 * xi0 + 0.5 * xi0**2, grad=grad, name="shear"
    )


def kick_generating():
    """W = x1*xi0 + x1^2/2, generating the position kick (x, xi + x)."""

    def grad(x1, xi0):
        x1, xi0 = np.broadcast_arrays(x1, xi0)
        return xi0 + x1, x1

    return GeneratingFunction(
        evaluate=lambda x1, xi0: x1 * xi0 + 0.5 * x1**2, grad=grad, name="kick"
    )


def box_symbol(x1_lo, x1_hi, xi_lo, xi_hi):
    """Indicator symbol: 1 inside the box, 0 outside."""
    if not (x1_lo < x1_hi and xi_lo < xi_hi):
        raise ValueError("support box must have positive extent")

    def evaluate(x1, xi0):
        inside = (x1 >= x1_lo) & (x1 <= x1_hi) & (xi0 >= xi_lo) & (xi0 <= xi_hi)
        return np.where(inside, 1.0 + 0.0j, 0.0j)

    return SymbolFunction(evaluate=evaluate, support_box=(x1_lo, x1_hi, xi_lo, xi_hi))


# ---------------------------------------------------------------------------
# matrix models
# ---------------------------------------------------------------------------


def dft_matrix(N, theta=DEFAULT_THETA):
    """Generalized DFT kernel F[j,k] = exp(-2 pi i (j+theta)(k+theta)/N)/sqrt(N).

    theta = 1/2 gives antiperiodic boundary conditions (the parity-restoring
    standard choice for baker quantization); unitary for every theta.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    j = np.arange(N) + theta
    return np.exp(-2j * np.pi * np.outer(j, j) / N) / np.sqrt(N)


def _baker_blocks(D, kept, N, theta):
    M = N // D
    blocks = np.zeros((N, N), dtype=np.complex128)
    fm = dft_matrix(M, theta)
    for b in kept:
        blocks[b * M : (b + 1) * M, b * M : (b + 1) * M] = fm
    return dft_matrix(N, theta).conj().T @ blocks


def quantize_closed_baker(D, N, theta=DEFAULT_THETA):
    """Block-DFT quantization of the closed D-baker; unitary."""
    if D < 2:
        raise ValueError(f"base must be >= 2, got {D}")
    if N % D != 0:
        raise DimensionNotDivisibleError(f"N={N} is not divisible by base D={D}")
    matrix = _baker_blocks(D, range(D), N, theta)
    return QuantumMap(PlanckParameter(N), matrix, f"closed_baker(D={D}, theta={theta})")


def quantize_open_baker(spec, N, theta=DEFAULT_THETA):
    """Open baker: block-DFT with removed-branch blocks zeroed.

    Identical to quantize_closed_baker followed by the diagonal projector
    onto positions in kept strips (the factorization B_open = B_closed Pi).
    """
    if N % spec.base != 0:
        raise DimensionNotDivisibleError(f"N={N} is not divisible by base D={spec.base}")
    matrix = _baker_blocks(spec.base, spec.kept, N, theta)
    label = f"open_baker(D={spec.base}, kept={spec.kept}, theta={theta})"
    return QuantumMap(PlanckParameter(N), matrix, label)


def kept_position_mask(spec, N, theta=DEFAULT_THETA):
    """Boolean mask of position indices j whose strip floor(D(j+theta)/N) is kept."""
    strips = np.floor(spec.base * (np.arange(N) + theta) / N).astype(int)
    return np.isin(strips, spec.kept)


def quantize_open_cat(a, b, c, d, hole, N, unitarity_tol=1e-8):
    """Quantized hyperbolic torus automorphism [[a,b],[c,d]] with a hole.

    The kernel is the discretized quadratic-phase propagator

        U[j', j] = (N|b|)^(-1/2) * sum_{s=0}^{|b|-1}
                   exp(i pi (a (j+sN)^2 - 2 (j+sN) j' + d j'^2) / (N b)),

    periodized over |b| position images so the torus boundary conditions
    close up (for |b| = 1 this is the bare quadratic kernel). The convention
    is validated by the closed-map unitarity contract at construction; an N
    for which the check fails is rejected rather than silently rephased.
    ``hole`` is None or an interval (lo, hi) in [0, 1]: position columns
    with j/N inside [lo, hi) are zeroed.
    """
    a, b, c, d = int(a), int(b), int(c), int(d)
    if a * d - b * c != 1:
        raise BadDeterminantError(f"determinant {a * d - b * c} != 1")
    if b == 0:
        raise ValueError("b must be nonzero (position-position generating form)")
    if abs(a + d) <= 2:
        raise NotHyperbolicError(f"|trace| = {abs(a + d)} <= 2")
    if N < 1:
        raise ValueError("N must be >= 1")

    j_in = np.arange(N)[None, :]
    j_out = np.arange(N)[:, None]
    kernel = np.zeros((N, N), dtype=np.complex128)
    for s in range(abs(b)):
        u = j_in + s * N
        kernel += np.exp(1j * np.pi * (a * u * u - 2 * u * j_out + d * j_out * j_out) / (N * b))
    kernel /= math.sqrt(N * abs(b))

    unit_err = np.abs(kernel @ kernel.conj().T - np.eye(N)).max()
    if unit_err > unitarity_tol:
        raise ConventionUnsatisfiableError(
            f"closed cat kernel fails unitarity at N={N} (error {unit_err:.2e}); "
            "this N does not satisfy the convention's parity condition"
        )

    if hole is not None:
        lo, hi = float(hole[0]), float(hole[1])
        if not (0.0 <= lo <= hi <= 1.0):
            raise ValueError(f"hole interval must satisfy 0 <= lo <= hi <= 1, got ({lo}, {hi})")
        positions = np.arange(N) / N
        kernel = kernel * ((positions < lo) | (positions >= hi))[None, :]

    label = f"open_cat(A=[[{a},{b}],[{c},{d}]], hole={hole})"
    return QuantumMap(PlanckParameter(N), kernel, label)


# ---------------------------------------------------------------------------
# coherent states and Husimi distributions
# ---------------------------------------------------------------------------


def _torus_coherent_columns(planck, x0, xi_values, theta):
    """Matrix whose columns are normalized coherent states at (x0, xi_b)."""
    N = planck.dim
    xj = (np.arange(N) + theta) / N
    xi_values = np.atleast_1d(np.asarray(xi_values, dtype=float))
    cols = np.zeros((N, len(xi_values)), dtype=np.complex128)
    for m in range(-PERIODIZATION_IMAGES, PERIODIZATION_IMAGES + 1):
        disp = xj - x0 + m
        gauss = np.exp(-np.pi * N * disp**2)
        cols += gauss[:, None] * np.exp(2j * np.pi * N * np.outer(disp, xi_values))
    cols /= np.linalg.norm(cols, axis=0, keepdims=True)
    return cols


def torus_coherent_state(planck, center, theta=DEFAULT_THETA):
    """Periodized Gaussian wave packet microlocalized at ``center``, unit norm."""
    col = _torus_coherent_columns(planck, center.x, [center.xi], theta)[:, 0]
    return TorusState(planck, col)


def husimi(state, resolution, theta=DEFAULT_THETA):
    """Husimi distribution |<coherent(x_a, xi_b) | psi>|^2 on a torus grid.

    Grid convention: x_a = a/resolution, xi_b = b/resolution, H[a, b].
    """
    if resolution < 8:
        raise ValueError(f"resolution must be >= 8, got {resolution}")
    N = state.planck.dim
    xi_grid = np.arange(resolution) / resolution
    H = np.empty((resolution, resolution))
    for ia in range(resolution):
        cols = _torus_coherent_columns(state.planck, ia / resolution, xi_grid, theta)
        H[ia, :] = np.abs(cols.conj().T @ state.amplitudes) ** 2
    return H


def _parabolic_offset(lo, mid, hi):
    den = lo - 2.0 * mid + hi
    if abs(den) < 1e-300:
        return 0.0
    off = 0.5 * (lo - hi) / den
    return float(np.clip(off, -0.5, 0.5))


def husimi_peak(H):
    """Peak location of a Husimi array, sub-cell refined, as a PhasePoint.

    Quadratic fit over the 3x3 neighborhood with torus wraparound; ties in
    the raw maximum break to the lexicographically first cell.
    """
    H = np.asarray(H)
    if H.size == 0:
        raise EmptyInputError("empty Husimi array")
    res_x, res_xi = H.shape
    ia, ib = np.unravel_index(int(np.argmax(H)), H.shape)
    da = _parabolic_offset(H[(ia - 1) % res_x, ib], H[ia, ib], H[(ia + 1) % res_x, ib])
    db = _parabolic_offset(H[ia, (ib - 1) % res_xi], H[ia, ib], H[ia, (ib + 1) % res_xi])
    return PhasePoint((ia + da) / res_x, (ib + db) / res_xi)


def line_coherent_state(x0, xi0, h, grid):
    """Gaussian coherent state on R, sampled on ``grid``; unit L2 norm.

    psi(x) = (pi h)^(-1/4) exp(i xi0 (x - x0)/h - (x - x0)^2/(2h)).
    """
    half = 6.0 * math.sqrt(h)
    if grid.spacing > math.sqrt(h) / 4:
        raise GridTooCoarseError(
            f"spacing {grid.spacing:.4g} > sqrt(h)/4 = {math.sqrt(h) / 4:.4g}"
        )
    if grid.origin > x0 - half or grid.last < x0 + half:
        raise GridTooNarrowError(
            f"grid [{grid.origin:.4g}, {grid.last:.4g}] does not cover "
            f"[{x0 - half:.4g}, {x0 + half:.4g}]"
        )
    x = grid.nodes
    samples = (np.pi * h) ** (-0.25) * np.exp(1j * xi0 * (x - x0) / h - (x - x0) ** 2 / (2 * h))
    return LineState(grid, samples)


def position_centroid(state):
    """Trapezoid-rule mean of x against |psi(x)|^2."""
    x = state.grid.nodes
    density = np.abs(state.samples) ** 2
    total = np.trapezoid(density, dx=state.grid.spacing)
    return float(np.trapezoid(x * density, dx=state.grid.spacing) / total)


def momentum_transform(state, h, xi_grid):
    """h-Fourier transform (2 pi h)^(-1/2) integral e^(-i xi x / h) psi dx on xi_grid."""
    x = state.grid.nodes
    weights = np.full(state.grid.count, state.grid.spacing)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    kernel = np.exp(-1j * np.outer(xi_grid, x) / h)
    return kernel @ (weights * state.samples) / math.sqrt(2 * math.pi * h)


def momentum_centroid(state, h, xi_lo, xi_hi, samples=4001):
    """Mean momentum of the h-Fourier density over the window [xi_lo, xi_hi]."""
    xi = np.linspace(xi_lo, xi_hi, samples)
    density = np.abs(momentum_transform(state, h, xi)) ** 2
    total = np.trapezoid(density, xi)
    return float(np.trapezoid(xi * density, xi) / total)


# ---------------------------------------------------------------------------
# generated maps and the propagator quadrature
# ---------------------------------------------------------------------------


def solve_map_from_generating(W, x0, xi0, tol=1e-10, max_iter=50, fd_step=1e-7):
    """Evaluate the symplectic map generated by W at (x0, xi0).

    Newton iteration on g(x1) = dW/dxi0(x1, xi0) - x0 starting from x1 = x0,
    then xi1 = dW/dx1(x1, xi0).
    """

    def g(x1):
        return float(W.grad(x1, xi0)[1]) - x0

    x1 = float(x0)
    for _ in range(max_iter):
        gv = g(x1)
        if abs(gv) <= tol:
            xi1 = float(W.grad(x1, xi0)[0])
            return x1, xi1
        dg = (g(x1 + fd_step) - g(x1 - fd_step)) / (2 * fd_step)
        if abs(dg) < 1e-12:
            raise DegenerateJacobianError(
                f"mixed second derivative of {W.name} vanishes near x1={x1:.6g}"
            )
        x1 -= gv / dg
    raise NoConvergenceError(f"Newton failed after {max_iter} iterations for {W.name}")


def required_quadrature_spacing(W, h, x1_box, xi_box, x0_box, step_fraction=PHASE_STEP_FRACTION):
    """Grid spacing bound from the phase-resolution rule.

    The phase of the propagator integrand is W(x1, xi0) - xi0 x0; the rule
    caps the phase change per grid step at ``step_fraction`` radians, with
    the gradient maximum estimated by sampling a coarse grid over the boxes.
    """
    x1s = np.linspace(x1_box[0], x1_box[1], 17)
    xis = np.linspace(xi_box[0], xi_box[1], 33)
    X1, XI = np.meshgrid(x1s, xis, indexing="ij")
    _, dw_dxi = W.grad(X1, XI)
    grad_max = 0.0
    for x0_edge in x0_box:
        grad_max = max(grad_max, float(np.sqrt(XI**2 + (dw_dxi - x0_edge) ** 2).max()))
    if grad_max == 0.0:
        return np.inf
    return step_fraction * h / grad_max


def _trapezoid_weights(grid):
    w = np.full(grid.count, grid.spacing)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def _momentum_mass_outside(state, h, xi_lo, xi_hi):
    """Fraction of FFT momentum density outside [xi_lo, xi_hi]."""
    spectrum = np.abs(np.fft.fft(state.samples)) ** 2
    xi = 2 * np.pi * h * np.fft.fftfreq(state.grid.count, d=state.grid.spacing)
    outside = (xi < xi_lo) | (xi > xi_hi)
    total = spectrum.sum()
    if total == 0.0:
        return 0.0
    return float(spectrum[outside].sum() / total)


def fio_apply(W, a, h, state, output_grid, step_fraction=PHASE_STEP_FRACTION, leak_tol=1e-2):
    """Apply the Fourier-integral propagator with phase W and symbol a.

    Trapezoid quadrature over the product of the input grid (x0) and a
    momentum grid spanning the symbol's xi support; both the input and
    output grids must satisfy the phase-resolution spacing rule.
    """
    x1_lo, x1_hi, xi_lo, xi_hi = a.support_box
    in_grid = state.grid
    spacing_bound = required_quadrature_spacing(
        W, h, (output_grid.origin, output_grid.last), (xi_lo, xi_hi),
        (in_grid.origin, in_grid.last), step_fraction,
    )
    if in_grid.spacing > spacing_bound * (1 + 1e-12):
        raise PhaseResolutionError(
            f"input spacing {in_grid.spacing:.4g} exceeds bound {spacing_bound:.4g}"
        )
    if output_grid.spacing > spacing_bound * (1 + 1e-12):
        raise PhaseResolutionError(
            f"output spacing {output_grid.spacing:.4g} exceeds bound {spacing_bound:.4g}"
        )
    leak = _momentum_mass_outside(state, h, xi_lo, xi_hi)
    if leak > leak_tol:
        raise SupportNotCoveredError(
            f"{leak:.2%} of the state's momentum density lies outside the "
            f"symbol support [{xi_lo:.4g}, {xi_hi:.4g}]"
        )

    n_xi = max(int(math.ceil((xi_hi - xi_lo) / spacing_bound)) + 1, 2)
    xi_nodes = np.linspace(xi_lo, xi_hi, n_xi)
    w_xi = np.full(n_xi, xi_nodes[1] - xi_nodes[0])
    w_xi[0] *= 0.5
    w_xi[-1] *= 0.5

    # inner x0 transform, independent of x1
    w_x = _trapezoid_weights(in_grid)
    inner = np.exp(-1j * np.outer(xi_nodes, in_grid.nodes) / h) @ (w_x * state.samples)

    x1 = output_grid.nodes[:, None]
    xi = xi_nodes[None, :]
    kernel = a.evaluate(x1, xi) * np.exp(1j * W.evaluate(x1, xi) / h)
    out = (kernel @ (w_xi * inner)) / (2 * np.pi * h)
    return LineState(output_grid, out)


def _packet_grid(center, halfwidth, spacing):
    count = int(math.ceil(2 * halfwidth / spacing)) + 2
    return UniformGrid(origin=center - halfwidth, spacing=spacing, count=count)


def transport_check(W, a, h, start, halfwidth_factor=6.5):
    """Propagate a coherent state and compare its peak to the classical image.

    Builds a coherent state at ``start``, applies the propagator, measures
    the position and momentum centroids of the image, and reports the
    Euclidean distance to the point predicted by solving the generating
    equations.
    """
    x0, xi0 = start
    x1_exp, xi1_exp = solve_map_from_generating(W, x0, xi0)
    root_h = math.sqrt(h)
    halfwidth = halfwidth_factor * root_h

    _, _, xi_lo, xi_hi = a.support_box
    bound = required_quadrature_spacing(
        W, h,
        (x1_exp - halfwidth, x1_exp + halfwidth),
        (xi_lo, xi_hi),
        (x0 - halfwidth, x0 + halfwidth),
    )
    spacing = min(root_h / 8, 0.95 * bound)
    in_grid = _packet_grid(x0, halfwidth, spacing)
    out_grid = _packet_grid(x1_exp, halfwidth, spacing)

    psi = line_coherent_state(x0, xi0, h, in_grid)
    image = fio_apply(W, a, h, psi, out_grid)
    measured_x = position_centroid(image)
    measured_xi = momentum_centroid(image, h, xi_lo, xi_hi)
    distance = math.hypot(measured_x - x1_exp, measured_xi - xi1_exp)
    return TransportReport(
        h=h,
        start=(x0, xi0),
        expected=(x1_exp, xi1_exp),
        measured=(measured_x, measured_xi),
        distance=distance,
    )
