"""Numerical laboratory for open quantum maps.

Quantize chaotic torus maps as (sub)unitary matrices, compute their full
non-Hermitian spectra, and test the two headline spectral phenomena of open
chaotic systems: the pressure-driven spectral gap and the fractal scaling
of eigenvalue counts. A direct quadrature of the underlying
Fourier-integral propagator verifies wave-packet transport along the
classical map.
"""

from .classical import (
    ESCAPED,
    DimensionEstimate,
    Escaped,
    OpenBakerSpec,
    PhasePoint,
    PressureResult,
    apply_baker,
    apply_baker_inverse,
    box_count,
    minkowski_dimension,
    periodic_point,
    topological_pressure,
    trapped_set_points,
    unstable_jacobian,
)
from .io import TOOL_VERSION as __version__
from .quantize import (
    GeneratingFunction,
    LineState,
    PlanckParameter,
    QuantumMap,
    SymbolFunction,
    TorusState,
    TransportReport,
    UniformGrid,
    box_symbol,
    dft_matrix,
    fio_apply,
    husimi,
    husimi_peak,
    identity_generating,
    kept_position_mask,
    kick_generating,
    line_coherent_state,
    momentum_centroid,
    position_centroid,
    quantize_closed_baker,
    quantize_open_baker,
    quantize_open_cat,
    shear_generating,
    solve_map_from_generating,
    torus_coherent_state,
    transport_check,
)
from .spectra import (
    GapReport,
    SpectrumResult,
    WeylFit,
    count_above,
    eigenvalues,
    gap_experiment,
    iterate,
    spectral_radius,
    weyl_fit,
)

__all__ = [name for name in dir() if not name.startswith("_")]
