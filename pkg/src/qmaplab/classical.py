"""Classical dynamics of open baker maps.

The open baker with stretching factor D keeps a subset of the D vertical
strips and removes the rest; trajectories entering a removed strip escape.
Everything here is exact for this piecewise-linear family: cylinder
box counts, the box-counting (Minkowski) dimension, and the topological
pressure of multiples of the unstable log-Jacobian all admit closed forms,
which makes the module a source of machine-precision oracles for the
quantum experiments.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, EscapedPointError

DEFAULT_CAP = 10**6


class Escaped:
    """Marker value for a trajectory that fell into the hole.

    This is a value, not an error: escape is a regular outcome of the open
    dynamics. Use ``p is ESCAPED`` to test for it.
    """

    _singleton = None

    def __new__(cls):
        if cls._singleton is None:
            cls._singleton = super().__new__(cls)
        return cls._singleton

    def __repr__(self):
        return "Escaped"


ESCAPED = Escaped()


@dataclass(frozen=True, slots=True)
class PhasePoint:
    """Point on the phase-space torus; both coordinates reduced mod 1."""

    x: float
    xi: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x) % 1.0)
        object.__setattr__(self, "xi", float(self.xi) % 1.0)


@dataclass(frozen=True)
class OpenBakerSpec:
    """Open D-baker: stretching base and the strictly increasing kept branches.

    ``kept == (0, ..., D-1)`` encodes the closed (hole-free) baker map.
    The unstable direction is the horizontal (x) axis for this family.
    """

    base: int
    kept: tuple

    unstable_axis = "x"

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        kept = tuple(int(b) for b in self.kept)
        if not kept:
            raise ValueError("kept branch set must be nonempty")
        if any(b < 0 or b >= self.base for b in kept):
            raise ValueError(f"branch out of range [0, {self.base}): {kept}")
        if any(b2 <= b1 for b1, b2 in zip(kept, kept[1:])):
            raise ValueError(f"kept branches must be strictly increasing: {kept}")
        object.__setattr__(self, "kept", kept)

    @property
    def branch_count(self):
        return len(self.kept)

    @property
    def is_closed(self):
        return len(self.kept) == self.base


@dataclass
class PressureResult:
    """Cycle-sum pressure estimate next to its exact closed form."""

    s: float
    word_length: int
    value: float
    analytic_value: float


@dataclass
class DimensionEstimate:
    """Log-log box-counting fit: scales, counts, slope and max residual."""

    scales: list
    counts: list
    slope: float
    residual: float


def apply_baker(spec, p):
    """One forward step of the open baker; returns ESCAPED in the hole."""
    branch = int(math.floor(spec.base * p.x))
    if branch not in spec.kept:
        return ESCAPED
    return PhasePoint(spec.base * p.x - branch, (p.xi + branch) / spec.base)


def apply_baker_inverse(spec, p):
    """One backward step; the branch is read off the momentum coordinate."""
    branch = int(math.floor(spec.base * p.xi))
    if branch not in spec.kept:
        return ESCAPED
    return PhasePoint((p.x + branch) / spec.base, spec.base * p.xi - branch)


def _check_cap(n_items, cap):
    if n_items > cap:
        raise CapExceededError(f"enumeration of {n_items} items exceeds cap {cap}")


def _cylinder_indices(spec, depth):
    """Integer base-D values of all length-``depth`` kept words, lexicographic."""
    vals = np.zeros(1, dtype=np.int64)
    digits = np.asarray(spec.kept, dtype=np.int64)
    for _ in range(depth):
        vals = (vals[:, None] * spec.base + digits[None, :]).ravel()
    return vals


def trapped_set_points(spec, depth, cap=DEFAULT_CAP):
    """Centers of the depth-n cylinder boxes covering the trapped set.

    x runs over midpoints of all length-n forward cylinders (kept digit
    words), xi over the backward ones; the full product is returned in
    lexicographic (x-word, xi-word) order.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    _check_cap(len(spec.kept) ** (2 * depth), cap)
    scale = float(spec.base) ** depth
    centers = (_cylinder_indices(spec, depth) + 0.5) / scale
    return [PhasePoint(x, xi) for x in centers for xi in centers]


def box_count(spec, depth, cap=DEFAULT_CAP):
    """Number of side-D^(-n) boxes meeting the trapped set.

    Counted by enumerating cylinders (exact for this family), never by
    sampling orbits.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    _check_cap(len(spec.kept) ** (2 * depth), cap)
    # forward and backward words range over the same digit alphabet, so the
    # x- and xi-axis cylinder index sets coincide
    n_axis = len(np.unique(_cylinder_indices(spec, depth)))
    return int(n_axis) * int(n_axis)


def minkowski_dimension(spec, max_depth, cap=DEFAULT_CAP):
    """Box-counting dimension from depths 1..max_depth.

    Unweighted least squares of log N(delta) against log(1/delta) with
    delta = D^(-n); exactly 2 log|kept| / log D for the baker family.
    """
    if max_depth < 2:
        raise ValueError("max_depth must be >= 2")
    depths = range(1, max_depth + 1)
    scales = [float(spec.base) ** (-n) for n in depths]
    counts = [box_count(spec, n, cap) for n in depths]
    logs = np.log([1.0 / s for s in scales])
    logn = np.log(counts)
    slope, intercept = np.polyfit(logs, logn, 1)
    residual = float(np.abs(logn - (slope * logs + intercept)).max())
    return DimensionEstimate(scales=scales, counts=counts, slope=float(slope), residual=residual)


def unstable_jacobian(spec, p):
    """Log-contraction rate -log|det DT| along the unstable direction at p.

    Constant (-log D) for the piecewise-linear baker; the point argument is
    kept so nonlinear map families can share the signature.
    """
    branch = int(math.floor(spec.base * p.x))
    if branch not in spec.kept:
        raise EscapedPointError(f"point {p} lies in removed branch {branch}")
    return _branch_unstable_jacobian(spec, branch)


def _branch_unstable_jacobian(spec, branch):
    if branch not in spec.kept:
        raise EscapedPointError(f"branch {branch} is removed")
    return -math.log(spec.base)


def periodic_point(spec, word):
    """The phase point whose two-sided itinerary repeats ``word``."""
    n = len(word)
    denom = spec.base**n - 1
    v_fwd = 0
    for d in word:
        v_fwd = v_fwd * spec.base + d
    v_bwd = 0
    for d in reversed(word):
        v_bwd = v_bwd * spec.base + d
    return PhasePoint(v_fwd / denom, v_bwd / denom)


def topological_pressure(spec, s, word_length, cap=DEFAULT_CAP):
    """Topological pressure of s * (unstable log-Jacobian) by cycle sums.

    Sums exp(s * Birkhoff sum) over all length-n periodic kept-digit words;
    the Birkhoff weight at each orbit step is evaluated on the branch given
    by the word digit (the all-(D-1) word has its periodic point exactly on
    a strip boundary, where floor() would misread the branch).
    """
    if word_length < 1:
        raise ValueError("word_length must be >= 1")
    _check_cap(len(spec.kept) ** word_length, cap)
    terms = []
    for word in itertools.product(spec.kept, repeat=word_length):
        birkhoff = sum(_branch_unstable_jacobian(spec, d) for d in word)
        terms.append(math.exp(s * birkhoff))
    value = math.log(math.fsum(terms)) / word_length
    analytic = math.log(len(spec.kept)) - s * math.log(spec.base)
    return PressureResult(s=float(s), word_length=int(word_length), value=value, analytic_value=analytic)
