"""Non-Hermitian spectra of quantum maps and the two headline experiments.

Full dense diagonalization with trace-based accuracy contracts, eigenvalue
counting above a modulus threshold, power-law fits of the count growth
against the classical dimension prediction, spectral-radius-versus-pressure
reports, and quantum decay curves under iteration.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import classical
from .errors import DimensionTooLargeError, NoConvergenceError
from .quantize import TorusState, quantize_open_baker

DEFAULT_MAX_DIM = 4096
DEFAULT_GAP_MARGIN = 0.1


@dataclass
class SpectrumResult:
    """All N eigenvalues (with multiplicity) plus trace-identity residuals."""

    planck: object
    eigenvalues: np.ndarray
    trace_residual: float
    trace2_residual: float


@dataclass
class WeylFit:
    """Least-squares fit of log(count above epsilon) against log N."""

    epsilon: float
    dims: list
    counts: list
    slope: float
    intercept: float
    r_squared: float
    predicted_exponent: float


@dataclass
class GapReport:
    """Spectral radii per N against the pressure bound gamma = exp(P(1/2))."""

    spec: classical.OpenBakerSpec
    pressure_half: float
    gamma: float
    radii: list
    margin: float
    passed: object
    note: object


def _canonical_order(values):
    # descending modulus, then real, then imaginary part: deterministic
    order = np.lexsort((values.imag, values.real, -np.abs(values)))
    return values[order]


def eigenvalues(qmap, max_dim=DEFAULT_MAX_DIM):
    """Dense spectrum of the map with trace-residual diagnostics."""
    matrix = np.asarray(qmap.matrix)
    n = matrix.shape[0]
    if n > max_dim:
        raise DimensionTooLargeError(f"N={n} exceeds dense-solver maximum {max_dim}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix has non-finite entries")
    try:
        values = np.linalg.eigvals(matrix)
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(f"dense eigensolver failed: {exc}") from exc
    values = _canonical_order(values)
    trace_residual = abs(np.trace(matrix) - values.sum())
    trace2_residual = abs(np.trace(matrix @ matrix) - (values**2).sum())
    return SpectrumResult(
        planck=qmap.planck,
        eigenvalues=values,
        trace_residual=float(trace_residual),
        trace2_residual=float(trace2_residual),
    )


def spectral_radius(result):
    """Largest eigenvalue modulus."""
    return float(np.abs(result.eigenvalues).max())


def count_above(result, epsilon):
    """Number of eigenvalues with |lambda| > epsilon, multiplicities included."""
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    return int((np.abs(result.eigenvalues) > epsilon).sum())


def fit_power_law(dims, counts):
    """Slope, intercept, r^2 of log(count) against log(dim)."""
    x = np.log(np.asarray(dims, dtype=float))
    y = np.log(np.asarray(counts, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    ss_res = float(((y - fitted) ** 2).sum())
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r_squared = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), float(min(max(r_squared, 0.0), 1.0))


def spectra_for_dims(spec, dims, theta=0.5, max_dim=DEFAULT_MAX_DIM, threads=1):
    """Diagonalize the open baker at each N; returns results keyed by N.

    Per-N work may fan out over a thread pool (LAPACK releases the GIL);
    each diagonalization is independent, so results are identical to the
    serial run.
    """
    dims = [int(n) for n in dims]
    workers = max(1, threads)

    def solve(n):
        return eigenvalues(quantize_open_baker(spec, n, theta), max_dim=max_dim)

    if workers == 1 or len(dims) == 1:
        results = [solve(n) for n in dims]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(solve, dims))
    return dict(zip(dims, results))


def weyl_fit_from_counts(spec, dims, counts, epsilon):
    """Build a WeylFit from precomputed counts (raises on a zero count)."""
    if len(dims) < 3:
        raise ValueError("need at least 3 dimensions for a power-law fit")
    if any(c <= 0 for c in counts):
        raise ValueError(
            f"zero eigenvalue count above epsilon={epsilon}; "
            "log-log fit undefined (pick a smaller epsilon)"
        )
    slope, intercept, r_squared = fit_power_law(dims, counts)
    predicted = math.log(len(spec.kept)) / math.log(spec.base)
    return WeylFit(
        epsilon=float(epsilon),
        dims=[int(n) for n in dims],
        counts=[int(c) for c in counts],
        slope=slope,
        intercept=intercept,
        r_squared=r_squared,
        predicted_exponent=predicted,
    )


def weyl_fit(spec, dims, epsilon, theta=0.5, max_dim=DEFAULT_MAX_DIM, threads=1):
    """Quantize, diagonalize, count above epsilon, and fit the growth exponent.

    The classical prediction for the exponent is half the trapped-set box
    dimension, log|kept|/log D for this family.
    """
    results = spectra_for_dims(spec, dims, theta, max_dim, threads)
    counts = [count_above(results[int(n)], epsilon) for n in dims]
    return weyl_fit_from_counts(spec, dims, counts, epsilon)


def gap_experiment(spec, dims, theta=0.5, margin=DEFAULT_GAP_MARGIN,
                   max_dim=DEFAULT_MAX_DIM, threads=1):
    """Spectral radii against the pressure bound exp(P(1/2 phi_u)).

    The bound is asymptotic in N, so the report flags whether the radius at
    the largest N stays below gamma + margin; when the pressure is
    nonnegative the bound asserts nothing and the report says so.
    """
    dims = sorted(int(n) for n in dims)
    pressure = classical.topological_pressure(spec, 0.5, word_length=1)
    gamma = math.exp(pressure.value)
    results = spectra_for_dims(spec, dims, theta, max_dim, threads)
    radii = [(n, spectral_radius(results[n])) for n in dims]
    if pressure.value < 0:
        passed = bool(radii[-1][1] <= gamma + margin)
        note = None
    else:
        passed = None
        note = "pressure at s=1/2 is nonnegative; spectral-gap bound inapplicable"
    return GapReport(
        spec=spec,
        pressure_half=pressure.value,
        gamma=gamma,
        radii=radii,
        margin=float(margin),
        passed=passed,
        note=note,
    )


def iterate(qmap, state, steps):
    """Norms of the iterated state: ||M^k psi|| for k = 0..steps."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    amplitudes = np.asarray(state.amplitudes, dtype=np.complex128)
    norms = [float(np.linalg.norm(amplitudes))]
    for _ in range(steps):
        amplitudes = qmap.matrix @ amplitudes
        norms.append(float(np.linalg.norm(amplitudes)))
    return norms
