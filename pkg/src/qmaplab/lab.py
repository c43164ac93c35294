"""Command-line front end: reproducible experiment runs with manifests.

Every subcommand compiles its flags into an ExperimentConfig (or loads one
from --config), validates it up front, runs the pipeline, and writes
deterministic artifacts plus a per-command manifest with content hashes.

Exit codes: 2 invalid flags/config, 3 construction failure (divisibility,
caps, map preconditions), 4 solver failure, 5 missing or corrupt artifacts.
"""

import argparse
import dataclasses
import glob
import math
import os
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import classical, io, quantize, spectra
from .errors import (
    BadDeterminantError,
    CapExceededError,
    ConventionUnsatisfiableError,
    DegenerateJacobianError,
    DimensionNotDivisibleError,
    DimensionTooLargeError,
    EmptyInputError,
    EscapedPointError,
    GridTooCoarseError,
    GridTooNarrowError,
    NoConvergenceError,
    NotHyperbolicError,
    PhaseResolutionError,
    SupportNotCoveredError,
)

EXIT_VALIDATION = 2
EXIT_CONSTRUCTION = 3
EXIT_SOLVER = 4
EXIT_ARTIFACT = 5

GENERATING_FACTORIES = {
    "identity": quantize.identity_generating,
    "shear": quantize.shear_generating,
    "kick": quantize.kick_generating,
}


class ConfigError(ValueError):
    """Invalid flag or config field; maps to exit code 2."""


class ArtifactError(RuntimeError):
    """Missing or corrupt run artifact; maps to exit code 5."""


CONSTRUCTION_ERRORS = (
    CapExceededError,
    EscapedPointError,
    DimensionNotDivisibleError,
    NotHyperbolicError,
    BadDeterminantError,
    ConventionUnsatisfiableError,
    GridTooCoarseError,
    GridTooNarrowError,
    PhaseResolutionError,
    SupportNotCoveredError,
    DimensionTooLargeError,
    EmptyInputError,
)
SOLVER_ERRORS = (NoConvergenceError, DegenerateJacobianError, np.linalg.LinAlgError)


@dataclass
class ExperimentConfig:
    """Complete, serializable description of one experiment run."""

    model: str = "baker"
    base: int = 3
    kept: list = None  # None means all branches (closed map)
    cat_matrix: list = None  # [a, b, c, d]
    hole: list = None  # [lo, hi]
    theta: float = 0.5
    dim: int = None
    dims: list = field(default_factory=list)
    epsilons: list = field(default_factory=lambda: [0.3, 0.5, 0.7])
    pressure_s: float = 0.5
    word_length: int = 4
    max_depth: int = 6
    generating: str = "shear"
    fio_h: float = 0.02
    start: list = field(default_factory=lambda: [0.1, 0.3])
    h_sweep: list = field(default_factory=list)
    margin: float = 0.1
    cap: int = 10**6
    threads: int = 0
    output_dir: str = "qmaplab_out"


def config_to_dict(cfg):
    return dataclasses.asdict(cfg)


def config_from_dict(raw):
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    return ExperimentConfig(**raw)


def _parse_int_list(text, flag):
    try:
        return [int(tok) for tok in str(text).split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"{flag}: expected comma-separated integers, got {text!r}") from exc


def _parse_float_list(text, flag):
    try:
        return [float(tok) for tok in str(text).split(",") if tok.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"{flag}: expected comma-separated numbers, got {text!r}") from exc


def baker_spec_from_config(cfg):
    kept = cfg.kept if cfg.kept is not None else list(range(cfg.base))
    try:
        return classical.OpenBakerSpec(base=cfg.base, kept=tuple(kept))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def validate_config(cfg, command):
    """Reject every downstream precondition violation that is a user error.

    Construction-scale violations (divisibility, caps, map hyperbolicity)
    are deliberately left to the construction stage so they map to exit 3.
    """
    if cfg.model not in ("baker", "cat"):
        raise ConfigError(f"model must be 'baker' or 'cat', got {cfg.model!r}")
    if not math.isfinite(cfg.theta):
        raise ConfigError("theta must be finite")
    if cfg.cap < 1:
        raise ConfigError("cap must be >= 1")
    if cfg.threads < 0:
        raise ConfigError("threads must be >= 0 (0 = auto)")
    if not cfg.output_dir:
        raise ConfigError("output directory must be nonempty")

    needs_baker = command in ("pressure", "dimension", "weyl", "gap") or (
        command == "spectrum" and cfg.model == "baker"
    )
    if needs_baker:
        baker_spec_from_config(cfg)

    if command == "pressure" and cfg.word_length < 1:
        raise ConfigError("word length must be >= 1")
    if command == "dimension" and cfg.max_depth < 2:
        raise ConfigError("max depth must be >= 2")
    if command == "spectrum":
        if cfg.dim is None or cfg.dim < 1:
            raise ConfigError("spectrum requires a positive --dim")
        if cfg.model == "cat":
            if cfg.cat_matrix is None or len(cfg.cat_matrix) != 4:
                raise ConfigError("cat model requires --cat a,b,c,d")
            if cfg.hole is not None and len(cfg.hole) != 2:
                raise ConfigError("hole must be an interval lo,hi")
    if command == "weyl":
        if len(cfg.dims) < 3:
            raise ConfigError("weyl requires at least 3 dimensions in --dims")
        if not cfg.epsilons:
            raise ConfigError("weyl requires at least one epsilon")
        for eps in cfg.epsilons:
            if not 0.0 < eps < 1.0:
                raise ConfigError(f"epsilon must lie in (0, 1), got {eps}")
    if command == "gap":
        if not cfg.dims:
            raise ConfigError("gap requires at least one dimension in --dims")
        if cfg.margin < 0:
            raise ConfigError("margin must be >= 0")
    if command == "transport":
        if cfg.generating not in GENERATING_FACTORIES:
            raise ConfigError(
                f"generating must be one of {sorted(GENERATING_FACTORIES)}, got {cfg.generating!r}"
            )
        if not 0.0 < cfg.fio_h <= 0.5:
            raise ConfigError(f"h must lie in (0, 0.5], got {cfg.fio_h}")
        if len(cfg.start) != 2:
            raise ConfigError("start must be a pair x0,xi0")
        for h in cfg.h_sweep:
            if not 0.0 < h <= 0.5:
                raise ConfigError(f"sweep h values must lie in (0, 0.5], got {h}")


def config_from_args(args, command):
    if getattr(args, "config", None):
        path = args.config
        if not os.path.exists(path):
            raise ConfigError(f"config file not found: {path}")
        cfg = config_from_dict(io.read_json(path))
    else:
        cfg = ExperimentConfig()
        if getattr(args, "model", None) is not None:
            cfg.model = args.model
        if getattr(args, "base", None) is not None:
            cfg.base = args.base
        if getattr(args, "kept", None) is not None:
            cfg.kept = _parse_int_list(args.kept, "--kept")
        if getattr(args, "cat", None) is not None:
            cfg.cat_matrix = _parse_int_list(args.cat, "--cat")
            cfg.model = "cat"
        if getattr(args, "hole", None) is not None:
            cfg.hole = _parse_float_list(args.hole, "--hole")
        if getattr(args, "theta", None) is not None:
            cfg.theta = args.theta
        if getattr(args, "dim", None) is not None:
            cfg.dim = args.dim
        if getattr(args, "dims", None) is not None:
            cfg.dims = _parse_int_list(args.dims, "--dims")
        if getattr(args, "epsilons", None) is not None:
            cfg.epsilons = _parse_float_list(args.epsilons, "--epsilons")
        if getattr(args, "s", None) is not None:
            cfg.pressure_s = args.s
        if getattr(args, "length", None) is not None:
            cfg.word_length = args.length
        if getattr(args, "max_depth", None) is not None:
            cfg.max_depth = args.max_depth
        if getattr(args, "generating", None) is not None:
            cfg.generating = args.generating
        if getattr(args, "h", None) is not None:
            cfg.fio_h = args.h
        if getattr(args, "start", None) is not None:
            cfg.start = _parse_float_list(args.start, "--start")
        if getattr(args, "sweep", None) is not None:
            cfg.h_sweep = _parse_float_list(args.sweep, "--sweep")
        if getattr(args, "margin", None) is not None:
            cfg.margin = args.margin
        if getattr(args, "out", None) is not None:
            cfg.output_dir = args.out
        if getattr(args, "threads", None) is not None:
            cfg.threads = args.threads
        if getattr(args, "cap", None) is not None:
            cfg.cap = args.cap
    validate_config(cfg, command)
    return cfg


def _resolved_threads(cfg):
    if cfg.threads == 0:
        return os.cpu_count() or 1
    return cfg.threads


def _write_manifest(out_dir, command, cfg, artifact_names, stage_seconds):
    manifest = {
        "command": command,
        "tool_version": io.TOOL_VERSION,
        "created_utc": datetime.now(timezone.utc).isoformat(),
        "config": config_to_dict(cfg),
        "stages": {name: round(seconds, 6) for name, seconds in stage_seconds.items()},
        "artifacts": {
            name: io.sha256_file(os.path.join(out_dir, name)) for name in sorted(artifact_names)
        },
    }
    io.write_json(os.path.join(out_dir, f"manifest_{command}.json"), manifest)


def _prepare(args, command):
    cfg = config_from_args(args, command)
    out_dir = cfg.output_dir
    Path(out_dir).mkdir(parents=True, exist_ok=True)
    return cfg, out_dir


# ---------------------------------------------------------------------------
# artifact documents
# ---------------------------------------------------------------------------


def pressure_to_doc(result):
    doc = {
        "s": result.s,
        "word_length": result.word_length,
        "value": result.value,
        "analytic_value": result.analytic_value,
        "gamma": math.exp(result.value) if result.s == 0.5 else None,
    }
    return doc


def pressure_from_doc(doc):
    return classical.PressureResult(
        s=doc["s"],
        word_length=doc["word_length"],
        value=doc["value"],
        analytic_value=doc["analytic_value"],
    )


def dimension_to_doc(est):
    return {
        "scales": list(est.scales),
        "counts": [int(c) for c in est.counts],
        "slope": est.slope,
        "residual": est.residual,
    }


def dimension_from_doc(doc):
    return classical.DimensionEstimate(
        scales=list(doc["scales"]),
        counts=[int(c) for c in doc["counts"]],
        slope=doc["slope"],
        residual=doc["residual"],
    )


def weyl_to_doc(fit):
    return {
        "epsilon": fit.epsilon,
        "dims": list(fit.dims),
        "counts": list(fit.counts),
        "slope": fit.slope,
        "intercept": fit.intercept,
        "r_squared": fit.r_squared,
        "predicted_exponent": fit.predicted_exponent,
    }


def weyl_from_doc(doc):
    return spectra.WeylFit(
        epsilon=doc["epsilon"],
        dims=list(doc["dims"]),
        counts=list(doc["counts"]),
        slope=doc["slope"],
        intercept=doc["intercept"],
        r_squared=doc["r_squared"],
        predicted_exponent=doc["predicted_exponent"],
    )


def gap_to_doc(report):
    return {
        "pressure_half": report.pressure_half,
        "gamma": report.gamma,
        "radii": [[int(n), float(r)] for n, r in report.radii],
        "pass_margin": report.margin,
        "pass": report.passed,
        "note": report.note,
        "spec": {"base": report.spec.base, "kept": list(report.spec.kept)},
    }


def gap_from_doc(doc):
    return spectra.GapReport(
        spec=classical.OpenBakerSpec(doc["spec"]["base"], tuple(doc["spec"]["kept"])),
        pressure_half=doc["pressure_half"],
        gamma=doc["gamma"],
        radii=[(int(n), float(r)) for n, r in doc["radii"]],
        margin=doc["pass_margin"],
        passed=doc["pass"],
        note=doc["note"],
    )


def transport_to_doc(report, generating):
    return {
        "generating": generating,
        "h": report.h,
        "start": list(report.start),
        "expected": list(report.expected),
        "measured": list(report.measured),
        "distance": report.distance,
    }


def transport_from_doc(doc):
    return quantize.TransportReport(
        h=doc["h"],
        start=tuple(doc["start"]),
        expected=tuple(doc["expected"]),
        measured=tuple(doc["measured"]),
        distance=doc["distance"],
    )


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_pressure(args):
    cfg, out_dir = _prepare(args, "pressure")
    spec = baker_spec_from_config(cfg)
    t0 = time.perf_counter()
    result = classical.topological_pressure(spec, cfg.pressure_s, cfg.word_length, cfg.cap)
    elapsed = time.perf_counter() - t0
    print(f"pressure value      {io.format_float(result.value)}")
    print(f"analytic value      {io.format_float(result.analytic_value)}")
    if result.s == 0.5:
        print(f"gamma = exp(value)  {io.format_float(math.exp(result.value))}")
    io.write_json(os.path.join(out_dir, "pressure.json"), pressure_to_doc(result))
    _write_manifest(out_dir, "pressure", cfg, ["pressure.json"], {"pressure": elapsed})
    return 0


def cmd_dimension(args):
    cfg, out_dir = _prepare(args, "dimension")
    spec = baker_spec_from_config(cfg)
    t0 = time.perf_counter()
    est = classical.minkowski_dimension(spec, cfg.max_depth, cfg.cap)
    elapsed = time.perf_counter() - t0
    print(f"box-counting dimension  {io.format_float(est.slope)}")
    print(f"fit residual            {io.format_float(est.residual)}")
    io.write_json(os.path.join(out_dir, "dimension.json"), dimension_to_doc(est))
    _write_manifest(out_dir, "dimension", cfg, ["dimension.json"], {"dimension": elapsed})
    return 0


def _build_map(cfg):
    if cfg.model == "baker":
        spec = baker_spec_from_config(cfg)
        return quantize.quantize_open_baker(spec, cfg.dim, cfg.theta)
    a, b, c, d = cfg.cat_matrix
    hole = tuple(cfg.hole) if cfg.hole is not None else None
    return quantize.quantize_open_cat(a, b, c, d, hole, cfg.dim)


def cmd_spectrum(args):
    cfg, out_dir = _prepare(args, "spectrum")
    stages = {}
    t0 = time.perf_counter()
    qmap = _build_map(cfg)
    stages["construct"] = time.perf_counter() - t0
    t0 = time.perf_counter()
    result = spectra.eigenvalues(qmap)
    stages["diagonalize"] = time.perf_counter() - t0
    csv_name = f"spectrum_N{cfg.dim}.csv"
    io.write_spectrum_csv(os.path.join(out_dir, csv_name), result)
    artifacts = [csv_name]
    if getattr(args, "dump_matrix", None):
        io.save_matrix_oqm(os.path.join(out_dir, args.dump_matrix), qmap)
        artifacts.append(args.dump_matrix)
    print(f"model               {qmap.model}")
    print(f"N                   {cfg.dim}")
    print(f"spectral radius     {io.format_float(spectra.spectral_radius(result))}")
    print(f"trace residual      {io.format_float(result.trace_residual)}")
    _write_manifest(out_dir, "spectrum", cfg, artifacts, stages)
    return 0


def cmd_weyl(args):
    cfg, out_dir = _prepare(args, "weyl")
    spec = baker_spec_from_config(cfg)
    dims = sorted(cfg.dims)
    stages = {}
    t0 = time.perf_counter()
    results = spectra.spectra_for_dims(spec, dims, cfg.theta, threads=_resolved_threads(cfg))
    stages["diagonalize"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    artifacts = []
    for n in dims:
        name = f"spectrum_N{n}.csv"
        io.write_spectrum_csv(os.path.join(out_dir, name), results[n])
        artifacts.append(name)
    predicted = math.log(len(spec.kept)) / math.log(spec.base)
    print(f"predicted exponent  {io.format_float(predicted)}")
    for eps in cfg.epsilons:
        counts = [spectra.count_above(results[n], eps) for n in dims]
        try:
            fit = spectra.weyl_fit_from_counts(spec, dims, counts, eps)
        except ValueError as exc:
            print(f"epsilon {eps:g}: skipped ({exc})", file=sys.stderr)
            continue
        name = f"weyl_eps{eps:g}.json"
        io.write_json(os.path.join(out_dir, name), weyl_to_doc(fit))
        artifacts.append(name)
        print(
            f"epsilon {eps:g}: counts {fit.counts} slope {fit.slope:.4f} "
            f"r^2 {fit.r_squared:.4f}"
        )
    stages["fit"] = time.perf_counter() - t0
    _write_manifest(out_dir, "weyl", cfg, artifacts, stages)
    return 0


def cmd_gap(args):
    cfg, out_dir = _prepare(args, "gap")
    spec = baker_spec_from_config(cfg)
    t0 = time.perf_counter()
    report = spectra.gap_experiment(
        spec, cfg.dims, cfg.theta, cfg.margin, threads=_resolved_threads(cfg)
    )
    elapsed = time.perf_counter() - t0
    print(f"pressure P(1/2)     {io.format_float(report.pressure_half)}")
    print(f"gamma = exp(P)      {io.format_float(report.gamma)}")
    for n, radius in report.radii:
        print(f"N={n:<6d} spectral radius {io.format_float(radius)}")
    if report.note:
        print(f"note: {report.note}")
    else:
        verdict = "pass" if report.passed else "FAIL"
        print(f"radius <= gamma + {report.margin:g} at largest N: {verdict}")
    io.write_json(os.path.join(out_dir, "gap.json"), gap_to_doc(report))
    _write_manifest(out_dir, "gap", cfg, ["gap.json"], {"gap": elapsed})
    return 0


def _transport_symbol(W, h, start):
    """Box symbol generously covering the packet before and after transport."""
    x0, xi0 = start
    x1, xi1 = quantize.solve_map_from_generating(W, x0, xi0)
    pad_x = 8.0 * math.sqrt(h)
    pad_xi = 8.0 * math.sqrt(h / 2)
    return quantize.box_symbol(
        x1 - pad_x, x1 + pad_x, min(xi0, xi1) - pad_xi, max(xi0, xi1) + pad_xi
    )


def run_transport(generating_name, h, start):
    W = GENERATING_FACTORIES[generating_name]()
    symbol = _transport_symbol(W, h, start)
    return quantize.transport_check(W, symbol, h, tuple(start))


def cmd_transport(args):
    cfg, out_dir = _prepare(args, "transport")
    t0 = time.perf_counter()
    report = run_transport(cfg.generating, cfg.fio_h, cfg.start)
    doc = transport_to_doc(report, cfg.generating)
    print(f"generating map      {cfg.generating}")
    print(f"expected (x1, xi1)  ({report.expected[0]:.6f}, {report.expected[1]:.6f})")
    print(f"measured (x, xi)    ({report.measured[0]:.6f}, {report.measured[1]:.6f})")
    print(f"distance            {report.distance:.3e}  (0.5*sqrt(h) = {0.5 * math.sqrt(report.h):.3e})")
    if cfg.h_sweep:
        doc["sweep"] = []
        for h in cfg.h_sweep:
            sweep_report = run_transport(cfg.generating, h, cfg.start)
            doc["sweep"].append(transport_to_doc(sweep_report, cfg.generating))
            print(f"sweep h={h:g}: distance {sweep_report.distance:.3e}")
    else:
        doc["sweep"] = None
    elapsed = time.perf_counter() - t0
    io.write_json(os.path.join(out_dir, "transport.json"), doc)
    _write_manifest(out_dir, "transport", cfg, ["transport.json"], {"transport": elapsed})
    return 0


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _verify_manifests(out_dir):
    manifest_paths = sorted(glob.glob(os.path.join(out_dir, "manifest_*.json")))
    if not manifest_paths:
        raise ArtifactError(f"no run manifests found in {out_dir!r}")
    for path in manifest_paths:
        manifest = io.read_json(path)
        for name, recorded in manifest.get("artifacts", {}).items():
            target = os.path.join(out_dir, name)
            if not os.path.exists(target):
                raise ArtifactError(f"artifact {name} listed in {os.path.basename(path)} is missing")
            actual = io.sha256_file(target)
            if actual != recorded:
                raise ArtifactError(
                    f"artifact {name} is corrupt (hash {actual[:12]}... != recorded {recorded[:12]}...)"
                )
    return manifest_paths


def cmd_report(args):
    cfg, out_dir = _prepare(args, "report")
    _verify_manifests(out_dir)

    rows = []  # (section, quantity, value-string)

    path = os.path.join(out_dir, "pressure.json")
    if os.path.exists(path):
        doc = io.read_json(path)
        rows.append(("pressure", f"P(s={doc['s']:g}) cycle sum", io.format_float(doc["value"])))
        rows.append(("pressure", "analytic value", io.format_float(doc["analytic_value"])))
        if doc.get("gamma") is not None:
            rows.append(("pressure", "gamma = exp(P(1/2))", io.format_float(doc["gamma"])))

    path = os.path.join(out_dir, "dimension.json")
    if os.path.exists(path):
        doc = io.read_json(path)
        rows.append(("dimension", "box-counting dimension", io.format_float(doc["slope"])))

    weyl_rows = []
    for path in sorted(glob.glob(os.path.join(out_dir, "weyl_eps*.json"))):
        doc = io.read_json(path)
        rows.append(
            (
                "weyl",
                f"count exponent (eps={doc['epsilon']:g})",
                f"{doc['slope']:.4f} (predicted {doc['predicted_exponent']:.4f})",
            )
        )
        for n, count in zip(doc["dims"], doc["counts"]):
            weyl_rows.append((doc["epsilon"], n, count))

    gap_rows = []
    path = os.path.join(out_dir, "gap.json")
    if os.path.exists(path):
        doc = io.read_json(path)
        rows.append(("gap", "gamma = exp(P(1/2))", io.format_float(doc["gamma"])))
        for n, radius in doc["radii"]:
            rows.append(("gap", f"spectral radius @ N={n}", io.format_float(radius)))
            gap_rows.append((n, radius))
        if doc.get("note"):
            rows.append(("gap", "verdict", doc["note"]))
        else:
            rows.append(
                ("gap", "verdict",
                 ("pass" if doc["pass"] else "FAIL") + f" (margin {doc['pass_margin']:g})")
            )

    path = os.path.join(out_dir, "transport.json")
    if os.path.exists(path):
        doc = io.read_json(path)
        rows.append(
            ("transport", f"packet distance ({doc['generating']}, h={doc['h']:g})",
             f"{doc['distance']:.3e}")
        )

    if not rows:
        raise ArtifactError(f"manifests verified but no report-able artifacts in {out_dir!r}")

    lines = ["# Run report", "", "| section | quantity | value |", "|---|---|---|"]
    for section, quantity, value in rows:
        lines.append(f"| {section} | {quantity} | {value} |")
    io.atomic_write_text(os.path.join(out_dir, "report.md"), "\n".join(lines) + "\n")

    summary = ["section,quantity,value"] + [
        f"{section},{quantity.replace(',', ';')},{value.replace(',', ';')}"
        for section, quantity, value in rows
    ]
    io.atomic_write_text(os.path.join(out_dir, "summary.csv"), "\n".join(summary) + "\n")

    if weyl_rows:
        lines = ["epsilon,N,count"] + [f"{eps:g},{n},{c}" for eps, n, c in weyl_rows]
        io.atomic_write_text(os.path.join(out_dir, "weyl_counts.csv"), "\n".join(lines) + "\n")
    if gap_rows:
        lines = ["N,radius"] + [f"{n},{io.format_float(r)}" for n, r in gap_rows]
        io.atomic_write_text(os.path.join(out_dir, "gap_radii.csv"), "\n".join(lines) + "\n")

    print(f"report written to {os.path.join(out_dir, 'report.md')} ({len(rows)} rows)")
    return 0


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qmaplab",
        description="Numerical laboratory for open quantum maps on the torus.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; overrides all other flags")
    common.add_argument("--out", help="output directory (default qmaplab_out)")
    common.add_argument("--threads", type=int, help="worker threads, 0 = auto")
    common.add_argument("--cap", type=int, help="enumeration cap (default 10^6)")

    baker = argparse.ArgumentParser(add_help=False)
    baker.add_argument("--base", type=int, help="baker stretching factor D")
    baker.add_argument("--kept", help="kept branches, e.g. 0,2 (default: all)")
    baker.add_argument("--theta", type=float, help="quantization phase (default 0.5)")

    p = sub.add_parser("pressure", parents=[common, baker],
                       help="topological pressure of s * unstable log-Jacobian")
    p.add_argument("--s", type=float, help="weight parameter (default 0.5)")
    p.add_argument("--length", type=int, help="cycle word length (default 4)")
    p.set_defaults(func=cmd_pressure)

    p = sub.add_parser("dimension", parents=[common, baker],
                       help="box-counting dimension of the trapped set")
    p.add_argument("--max-depth", dest="max_depth", type=int, help="deepest refinement level")
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("spectrum", parents=[common, baker],
                       help="full spectrum of one quantized map")
    p.add_argument("--model", choices=["baker", "cat"], help="map family (default baker)")
    p.add_argument("--cat", help="cat matrix entries a,b,c,d")
    p.add_argument("--hole", help="absorbing hole interval lo,hi (cat model)")
    p.add_argument("--dim", type=int, help="Hilbert-space dimension N")
    p.add_argument("--dump-matrix", dest="dump_matrix",
                   help="also dump the matrix (raw OQM1 format) under this name")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("weyl", parents=[common, baker],
                       help="eigenvalue counting fit across dimensions")
    p.add_argument("--dims", help="dimensions, e.g. 81,243,729")
    p.add_argument("--epsilons", help="count thresholds (default 0.3,0.5,0.7)")
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("gap", parents=[common, baker],
                       help="spectral radius against the pressure bound")
    p.add_argument("--dims", help="dimensions, e.g. 125,625,3125")
    p.add_argument("--margin", type=float, help="finite-size margin (default 0.1)")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("transport", parents=[common],
                       help="coherent-state transport under the propagator quadrature")
    p.add_argument("--generating", choices=sorted(GENERATING_FACTORIES),
                   help="generating function (default shear)")
    p.add_argument("--h", type=float, help="effective Planck constant (default 0.02)")
    p.add_argument("--start", help="initial phase point x0,xi0 (default 0.1,0.3)")
    p.add_argument("--sweep", help="extra h values for the localization sweep")
    p.set_defaults(func=cmd_transport)

    p = sub.add_parser("report", parents=[common],
                       help="verify artifacts and write a markdown summary")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ArtifactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARTIFACT
    except SOLVER_ERRORS as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except CONSTRUCTION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRUCTION


def cli_entry():
    sys.exit(main())


if __name__ == "__main__":
    cli_entry()
