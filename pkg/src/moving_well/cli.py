"""Config-driven command line front end.

Three subcommands over a single JSON run configuration:

    moving-well modes  --config run.json [--out DIR]
    moving-well evolve --config run.json [--method analytic|fdm|both] [--out DIR]
    moving-well verify --config run.json [--out DIR]

Exit codes: 0 success, 1 invalid configuration, 2 I/O failure,
3 horizon exceeded (a query at or past the time the well closes),
4 verification failure. Identical config and seed give byte-identical
CSV/JSON outputs; MOVING_WELL_THREADS caps internal parallelism.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import fdm, spectral, verify
from ._svg import density_svg
from .errors import (
    AuditFailedError,
    HorizonExceededError,
    InvalidParameterError,
    MovingWellError,
)
from .geometry import PhysicalConstants, WellGeometry
from .modes import MovingMode, eval_mode_grid, gauge_phase, time_phase_integral

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_HORIZON = 3
EXIT_VERIFY = 4


class ConfigError(InvalidParameterError):
    """A malformed or inconsistent run configuration."""


# ---------------------------------------------------------------------------
# configuration


def _require_keys(section: str, data: dict, known: tuple):
    unknown = set(data) - set(known)
    if unknown:
        raise ConfigError(f"unknown key(s) in '{section}': {sorted(unknown)}")


def _floats(section, key, values):
    try:
        return tuple(float(v) for v in values)
    except (TypeError, ValueError):
        raise ConfigError(f"'{section}.{key}' must be a list of numbers") from None


@dataclass(frozen=True)
class GeometryConfig:
    a: float = 1.0
    u_left: float = -0.1
    u_right: float = 0.2
    hbar: float = 1.0
    mass: float = 1.0

    @classmethod
    def parse(cls, data: dict) -> "GeometryConfig":
        _require_keys("geometry", data, ("a", "u_left", "u_right", "hbar", "mass"))
        cfg = cls(**{k: float(v) for k, v in data.items()})
        try:
            cfg.build()  # re-validate numeric constraints at parse time
        except InvalidParameterError as exc:
            raise ConfigError(str(exc)) from exc
        return cfg

    def build(self) -> WellGeometry:
        return WellGeometry(
            a=self.a,
            u_left=self.u_left,
            u_right=self.u_right,
            constants=PhysicalConstants(hbar=self.hbar, mass=self.mass),
        )

    def to_dict(self) -> dict:
        return {"a": self.a, "u_left": self.u_left, "u_right": self.u_right,
                "hbar": self.hbar, "mass": self.mass}


@dataclass(frozen=True)
class StateConfig:
    kind: str = "mode"
    n: int = 1
    center: float = 0.5
    width: float = 0.1
    momentum: float = 0.0
    path: str = ""
    n_max: int = 64
    quad_tol: float = 1e-10

    @classmethod
    def parse(cls, data: dict) -> "StateConfig":
        _require_keys("state", data,
                      ("kind", "n", "center", "width", "momentum", "path",
                       "n_max", "quad_tol"))
        cfg = cls(
            kind=str(data.get("kind", cls.kind)),
            n=int(data.get("n", cls.n)),
            center=float(data.get("center", cls.center)),
            width=float(data.get("width", cls.width)),
            momentum=float(data.get("momentum", cls.momentum)),
            path=str(data.get("path", cls.path)),
            n_max=int(data.get("n_max", cls.n_max)),
            quad_tol=float(data.get("quad_tol", cls.quad_tol)),
        )
        if cfg.kind not in ("mode", "gaussian", "csv"):
            raise ConfigError(f"state.kind must be mode|gaussian|csv, got {cfg.kind!r}")
        if cfg.n < 1:
            raise ConfigError(f"state.n must be >= 1, got {cfg.n}")
        if cfg.n_max < 1:
            raise ConfigError(f"state.n_max must be >= 1, got {cfg.n_max}")
        if not cfg.quad_tol > 0:
            raise ConfigError(f"state.quad_tol must be > 0, got {cfg.quad_tol}")
        if cfg.kind == "gaussian" and not cfg.width > 0:
            raise ConfigError(f"state.width must be > 0, got {cfg.width}")
        if cfg.kind == "csv" and not cfg.path:
            raise ConfigError("state.path is required for kind 'csv'")
        return cfg

    def to_dict(self) -> dict:
        return {"kind": self.kind, "n": self.n, "center": self.center,
                "width": self.width, "momentum": self.momentum, "path": self.path,
                "n_max": self.n_max, "quad_tol": self.quad_tol}


@dataclass(frozen=True)
class SolverConfig:
    nx: int = 511
    dt: float = 1e-4

    @classmethod
    def parse(cls, data: dict) -> "SolverConfig":
        _require_keys("solver", data, ("nx", "dt"))
        cfg = cls(nx=int(data.get("nx", cls.nx)), dt=float(data.get("dt", cls.dt)))
        if cfg.nx < 8:
            raise ConfigError(f"solver.nx must be >= 8, got {cfg.nx}")
        if not cfg.dt > 0:
            raise ConfigError(f"solver.dt must be > 0, got {cfg.dt}")
        return cfg

    def to_dict(self) -> dict:
        return {"nx": self.nx, "dt": self.dt}


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "."
    snapshot_times: tuple = (0.0, 0.5, 1.0)
    grid_points: int = 512
    formats: tuple = ("csv", "json")

    @classmethod
    def parse(cls, data: dict) -> "OutputConfig":
        _require_keys("output", data,
                      ("directory", "snapshot_times", "grid_points", "formats"))
        formats = tuple(str(f) for f in data.get("formats", cls.formats))
        for f in formats:
            if f not in ("csv", "json", "svg"):
                raise ConfigError(f"unknown output format {f!r}")
        cfg = cls(
            directory=str(data.get("directory", cls.directory)),
            snapshot_times=_floats("output", "snapshot_times",
                                   data.get("snapshot_times", cls.snapshot_times)),
            grid_points=int(data.get("grid_points", cls.grid_points)),
            formats=formats,
        )
        if cfg.grid_points < 16:
            raise ConfigError(f"output.grid_points must be >= 16, got {cfg.grid_points}")
        if not cfg.snapshot_times:
            raise ConfigError("output.snapshot_times must be non-empty")
        if any(t < 0 for t in cfg.snapshot_times):
            raise ConfigError("snapshot times must be >= 0")
        if list(cfg.snapshot_times) != sorted(cfg.snapshot_times):
            raise ConfigError("snapshot times must be sorted ascending")
        return cfg

    def to_dict(self) -> dict:
        return {"directory": self.directory,
                "snapshot_times": list(self.snapshot_times),
                "grid_points": self.grid_points, "formats": list(self.formats)}


@dataclass(frozen=True)
class VerifyConfig:
    residual_modes: tuple = (1,)
    residual_dx: float = 1e-3
    residual_dt: float = 1e-3
    residual_threshold: float = 1e-4
    boundary_threshold: float = 1e-12
    boundary_time_count: int = 50
    orthonormality_n_max: int = 8
    orthonormality_times: tuple = (0.0, 1.0)
    orthonormality_threshold: float = 1e-10
    orthonormality_quad_tol: float = 1e-11
    convergence_spacings: tuple = (4e-3, 2e-3, 1e-3)
    convergence_order_range: tuple = (1.8, 2.2)
    probe_count: int = 100
    phase_check_count: int = 100
    phase_identity_threshold: float = 1e-12
    time_window: tuple = (0.0, 2.0)
    audit_mode: int = 1
    fidelity_floor: float = 1.0 - 1e-6
    seed: int = 20260808

    _KEYS = ("residual_modes", "residual_dx", "residual_dt", "residual_threshold",
             "boundary_threshold", "boundary_time_count", "orthonormality_n_max",
             "orthonormality_times", "orthonormality_threshold",
             "orthonormality_quad_tol", "convergence_spacings",
             "convergence_order_range", "probe_count", "phase_check_count",
             "phase_identity_threshold", "time_window", "audit_mode",
             "fidelity_floor", "seed")

    @classmethod
    def parse(cls, data: dict) -> "VerifyConfig":
        _require_keys("verify", data, cls._KEYS)
        kwargs = {}
        for key in ("residual_dx", "residual_dt", "residual_threshold",
                    "boundary_threshold", "orthonormality_threshold",
                    "orthonormality_quad_tol", "phase_identity_threshold",
                    "fidelity_floor"):
            if key in data:
                kwargs[key] = float(data[key])
        for key in ("boundary_time_count", "orthonormality_n_max", "probe_count",
                    "phase_check_count", "audit_mode", "seed"):
            if key in data:
                kwargs[key] = int(data[key])
        if "residual_modes" in data:
            kwargs["residual_modes"] = tuple(int(n) for n in data["residual_modes"])
        for key in ("orthonormality_times", "convergence_spacings",
                    "convergence_order_range", "time_window"):
            if key in data:
                kwargs[key] = _floats("verify", key, data[key])
        cfg = cls(**kwargs)
        if any(n < 1 for n in cfg.residual_modes) or not cfg.residual_modes:
            raise ConfigError("verify.residual_modes must be a non-empty list of n >= 1")
        for key in ("residual_dx", "residual_dt", "residual_threshold",
                    "boundary_threshold", "orthonormality_threshold",
                    "orthonormality_quad_tol", "phase_identity_threshold"):
            if not getattr(cfg, key) > 0:
                raise ConfigError(f"verify.{key} must be > 0")
        if len(cfg.convergence_spacings) < 3:
            raise ConfigError("verify.convergence_spacings needs >= 3 entries")
        if len(cfg.time_window) != 2 or not cfg.time_window[0] < cfg.time_window[1]:
            raise ConfigError("verify.time_window must be [lo, hi] with lo < hi")
        if len(cfg.convergence_order_range) != 2:
            raise ConfigError("verify.convergence_order_range must be [lo, hi]")
        if cfg.audit_mode < 1:
            raise ConfigError("verify.audit_mode must be >= 1")
        return cfg

    def to_dict(self) -> dict:
        return {
            "residual_modes": list(self.residual_modes),
            "residual_dx": self.residual_dx,
            "residual_dt": self.residual_dt,
            "residual_threshold": self.residual_threshold,
            "boundary_threshold": self.boundary_threshold,
            "boundary_time_count": self.boundary_time_count,
            "orthonormality_n_max": self.orthonormality_n_max,
            "orthonormality_times": list(self.orthonormality_times),
            "orthonormality_threshold": self.orthonormality_threshold,
            "orthonormality_quad_tol": self.orthonormality_quad_tol,
            "convergence_spacings": list(self.convergence_spacings),
            "convergence_order_range": list(self.convergence_order_range),
            "probe_count": self.probe_count,
            "phase_check_count": self.phase_check_count,
            "phase_identity_threshold": self.phase_identity_threshold,
            "time_window": list(self.time_window),
            "audit_mode": self.audit_mode,
            "fidelity_floor": self.fidelity_floor,
            "seed": self.seed,
        }


@dataclass(frozen=True)
class RunConfig:
    geometry: GeometryConfig = field(default_factory=GeometryConfig)
    state: StateConfig = field(default_factory=StateConfig)
    solver: SolverConfig = field(default_factory=SolverConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    verify: VerifyConfig = field(default_factory=VerifyConfig)

    @classmethod
    def parse(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigError("configuration root must be a JSON object")
        _require_keys("config", data, ("geometry", "state", "solver", "output", "verify"))
        return cls(
            geometry=GeometryConfig.parse(data.get("geometry", {})),
            state=StateConfig.parse(data.get("state", {})),
            solver=SolverConfig.parse(data.get("solver", {})),
            output=OutputConfig.parse(data.get("output", {})),
            verify=VerifyConfig.parse(data.get("verify", {})),
        )

    def to_dict(self) -> dict:
        return {
            "geometry": self.geometry.to_dict(),
            "state": self.state.to_dict(),
            "solver": self.solver.to_dict(),
            "output": self.output.to_dict(),
            "verify": self.verify.to_dict(),
        }


def load_config(path, out_override=None) -> RunConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    try:
        cfg = RunConfig.parse(data)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid config value: {exc}") from exc
    if out_override is not None:
        cfg = RunConfig(
            geometry=cfg.geometry,
            state=cfg.state,
            solver=cfg.solver,
            output=OutputConfig(
                directory=str(out_override),
                snapshot_times=cfg.output.snapshot_times,
                grid_points=cfg.output.grid_points,
                formats=cfg.output.formats,
            ),
            verify=cfg.verify,
        )
    return cfg


# ---------------------------------------------------------------------------
# output helpers


def _fmt(value: float) -> str:
    # +0.0 collapses negative zero so CSV never shows "-0"
    return format(float(value) + 0.0, ".17g")


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, str) else _fmt(v) for v in row])


def _json_default(value):
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"not JSON serializable: {type(value)!r}")


def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=_json_default)


def _write_json(path: Path, payload):
    with open(path, "w") as fh:
        fh.write(_dump_json(payload))
        fh.write("\n")


def _worker_count() -> int:
    raw = os.environ.get("MOVING_WELL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _ordered_map(fn, items):
    items = list(items)
    workers = _worker_count()
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _emit_resolved_config(cfg: RunConfig, outdir: Path):
    _write_json(outdir / "resolved_config.json", cfg.to_dict())


def _density_rows(xs, values):
    dens = np.abs(values) ** 2
    return [(x, v.real, v.imag, d) for x, v, d in zip(xs, values, dens)]


# ---------------------------------------------------------------------------
# subcommands


def cmd_modes(cfg: RunConfig, outdir: Path) -> int:
    if cfg.state.kind != "mode":
        raise ConfigError("the 'modes' command requires state.kind == 'mode'")
    g = cfg.geometry.build()
    times = cfg.output.snapshot_times
    for t in times:
        g.require_valid(t)

    header = ["n", "k", "energy"]
    for t in times:
        label = _fmt(t)
        header += [f"L(t={label})", f"tau(t={label})", f"log_amplitude(t={label})"]
    rows = []
    for n in range(1, cfg.state.n_max + 1):
        mode = MovingMode(g, n)
        row = [float(n), mode.k, mode.energy]
        for t in times:
            row += [g.scale_factor(t), time_phase_integral(g, t),
                    gauge_phase(g, t).log_amplitude]
        rows.append(row)
    _write_csv(outdir / "modes.csv", header, rows)

    mode = MovingMode(g, cfg.state.n)

    def snapshot(item):
        index, t = item
        x_left, x_right = g.wall_positions(t)
        xs = np.linspace(x_left, x_right, cfg.output.grid_points)
        values = eval_mode_grid(mode, xs, t)
        return index, t, xs, values

    manifest = []
    for index, t, xs, values in _ordered_map(snapshot, enumerate(times)):
        name = f"density_mode_{index:03d}.csv"
        if "csv" in cfg.output.formats:
            _write_csv(outdir / name, ["x", "re_psi", "im_psi", "density"],
                       _density_rows(xs, values))
            manifest.append((index, t, name))
        if "svg" in cfg.output.formats:
            x_left, x_right = g.wall_positions(t)
            svg = density_svg(xs, np.abs(values) ** 2, x_left, x_right, t)
            (outdir / f"density_mode_{index:03d}.svg").write_text(svg)
    if manifest:
        _write_csv(outdir / "snapshots.csv", ["index", "time", "file"],
                   [(float(i), t, name) for i, t, name in manifest])
    _emit_resolved_config(cfg, outdir)
    return EXIT_OK


def _initial_state(cfg: RunConfig, g: WellGeometry):
    """Initial lab-frame callable, spectral state, and projection summary."""
    state_cfg = cfg.state
    if state_cfg.kind == "mode":
        mode = MovingMode(g, state_cfg.n)
        initial = lambda xs: eval_mode_grid(mode, xs, 0.0)
        spec_state = spectral.mode_state(g, state_cfg.n)
        report = {"captured_norm": 1.0, "truncation_error": 0.0,
                  "quadrature_estimate": 0.0, "n_max": state_cfg.n, "kind": "mode"}
        return initial, spec_state, report
    if state_cfg.kind == "gaussian":
        initial = spectral.initial_gaussian(g, state_cfg.center, state_cfg.width,
                                            state_cfg.momentum)
    else:
        initial = spectral.initial_from_csv(state_cfg.path)
    projection = spectral.project(g, initial, state_cfg.n_max, state_cfg.quad_tol)
    report = {"captured_norm": projection.captured_norm,
              "truncation_error": projection.truncation_error,
              "quadrature_estimate": projection.quadrature_estimate,
              "n_max": state_cfg.n_max, "kind": state_cfg.kind}
    return initial, projection.state(g), report


def cmd_evolve(cfg: RunConfig, outdir: Path, method: str = "both") -> int:
    if method not in ("analytic", "fdm", "both"):
        raise ConfigError(f"method must be analytic|fdm|both, got {method!r}")
    g = cfg.geometry.build()
    times = cfg.output.snapshot_times
    for t in times:
        g.require_valid(t)

    initial, spec_state, projection_report = _initial_state(cfg, g)
    if "json" in cfg.output.formats:
        _write_json(outdir / "projection.json", projection_report)

    manifest = []
    fidelities = []

    analytic_fields = {}
    if method in ("analytic", "both"):
        def analytic_snapshot(item):
            index, t = item
            x_left, x_right = g.wall_positions(t)
            xs = np.linspace(x_left, x_right, cfg.output.grid_points)
            return index, t, xs, spectral.eval_state(spec_state, xs, t)

        for index, t, xs, values in _ordered_map(analytic_snapshot, enumerate(times)):
            analytic_fields[index] = (xs, values)

    fdm_fields = {}
    if method in ("fdm", "both"):
        settings = fdm.SolverSettings(dt=cfg.solver.dt)
        grid_state = fdm.init_from_lab(g, initial, cfg.solver.nx, t0=0.0)
        for index, t in enumerate(times):
            grid_state = fdm.advance(grid_state, t, settings)
            fdm_fields[index] = fdm.map_to_lab(grid_state)

    for index, t in enumerate(times):
        if index in analytic_fields:
            xs, values = analytic_fields[index]
            name = f"density_analytic_{index:03d}.csv"
            if "csv" in cfg.output.formats:
                _write_csv(outdir / name, ["x", "re_psi", "im_psi", "density"],
                           _density_rows(xs, values))
                manifest.append((index, t, "analytic", name))
            if "svg" in cfg.output.formats:
                x_left, x_right = g.wall_positions(t)
                svg = density_svg(xs, np.abs(values) ** 2, x_left, x_right, t)
                (outdir / f"density_analytic_{index:03d}.svg").write_text(svg)
        if index in fdm_fields:
            lab = fdm_fields[index]
            name = f"density_fdm_{index:03d}.csv"
            if "csv" in cfg.output.formats:
                _write_csv(outdir / name, ["x", "re_psi", "im_psi", "density"],
                           _density_rows(lab.xs, lab.values))
                manifest.append((index, t, "fdm", name))
            if "svg" in cfg.output.formats:
                x_left, x_right = g.wall_positions(t)
                svg = density_svg(lab.xs, np.abs(lab.values) ** 2, x_left, x_right, t)
                (outdir / f"density_fdm_{index:03d}.svg").write_text(svg)
        if method == "both":
            lab = fdm_fields[index]
            reference = fdm.LabField(
                xs=lab.xs,
                values=np.asarray(spectral.eval_state(spec_state, lab.xs, times[index])),
                t=times[index],
            )
            fidelities.append((times[index], fdm.fidelity(lab, reference)))

    if manifest:
        _write_csv(outdir / "snapshots.csv", ["index", "time", "method", "file"],
                   [(float(i), t, m, name) for i, t, m, name in manifest])
    _emit_resolved_config(cfg, outdir)

    if method == "both":
        _write_csv(outdir / "fidelity.csv", ["time", "fidelity"], fidelities)
        floor = cfg.verify.fidelity_floor
        worst = min(f for _, f in fidelities)
        if worst < floor:
            print(f"fidelity {worst:.12g} below configured floor {floor:.12g}",
                  file=sys.stderr)
            return EXIT_VERIFY
    return EXIT_OK


def run_verification(cfg: RunConfig) -> dict:
    """All audits on the configured geometry; pure computation, no I/O."""
    g = cfg.geometry.build()
    v = cfg.verify
    rng = np.random.default_rng(v.seed)
    window = tuple(v.time_window)
    checks = {}

    max_spacing = max(max(v.convergence_spacings), v.residual_dx, v.residual_dt)
    residual_checks = {}
    convergence_checks = {}
    boundary_checks = {}
    for n in v.residual_modes:
        field_n = verify.mode_field(g, n)
        probes = verify.random_probes(g, v.probe_count, rng, window,
                                      max_spacing, max_spacing)
        report = verify.residual_lab(g, field_n, probes, v.residual_dx, v.residual_dt)
        residual_checks[f"n={n}"] = {
            "report": report.to_dict(),
            "threshold": v.residual_threshold,
            "passed": report.relative_max <= v.residual_threshold,
        }
        reports, estimate = verify.residual_convergence(g, field_n, probes,
                                                        v.convergence_spacings)
        lo, hi = v.convergence_order_range
        convergence_checks[f"n={n}"] = {
            "estimate": estimate.to_dict(),
            "order_range": [lo, hi],
            "passed": lo <= estimate.fitted_order <= hi,
        }
        boundary_times = rng.uniform(window[0], window[1], size=v.boundary_time_count)
        value = verify.boundary_check(g, field_n, boundary_times)
        boundary_checks[f"n={n}"] = {
            "value": value,
            "threshold": v.boundary_threshold,
            "passed": value <= v.boundary_threshold,
        }
    checks["residual"] = residual_checks
    checks["convergence"] = convergence_checks
    checks["boundary"] = boundary_checks

    ortho = {}
    for t in v.orthonormality_times:
        value = verify.orthonormality_check(g, v.orthonormality_n_max, t,
                                            v.orthonormality_quad_tol)
        ortho[f"t={_fmt(t)}"] = {
            "value": value,
            "threshold": v.orthonormality_threshold,
            "passed": value <= v.orthonormality_threshold,
        }
    checks["orthonormality"] = ortho

    phase_report = verify.phase_identity_checks(g, v.phase_check_count, rng, window)
    checks["phase_identities"] = {
        "report": phase_report.to_dict(),
        "threshold": v.phase_identity_threshold,
        "passed": (phase_report.max_gradient_violation <= v.phase_identity_threshold
                   and phase_report.max_curvature_violation <= v.phase_identity_threshold),
    }

    try:
        audit = verify.sign_convention_audit(
            g, v.audit_mode, dx=v.residual_dx, dt=v.residual_dt,
            residual_threshold=v.residual_threshold,
            boundary_threshold=v.boundary_threshold,
            probe_count=v.probe_count, time_count=v.boundary_time_count,
            t_window=None, seed=v.seed,
        )
        audit_passed = audit.passing_convention in (verify.BOOST_CONSISTENT,
                                                    verify.DEGENERATE_TIE)
        checks["sign_audit"] = {"result": audit.to_dict(), "passed": audit_passed}
    except AuditFailedError as exc:
        checks["sign_audit"] = {"error": str(exc), "passed": False}

    def _collect(node):
        if isinstance(node, dict):
            if "passed" in node:
                yield node["passed"]
            else:
                for child in node.values():
                    yield from _collect(child)

    all_passed = all(_collect(checks))
    return {
        "geometry": cfg.geometry.to_dict(),
        "verify_config": cfg.verify.to_dict(),
        "checks": checks,
        "all_passed": all_passed,
    }


def cmd_verify(cfg: RunConfig, outdir: Path) -> int:
    report = run_verification(cfg)
    _write_json(outdir / "verify_report.json", report)
    _emit_resolved_config(cfg, outdir)
    print(_dump_json(report))
    return EXIT_OK if report["all_passed"] else EXIT_VERIFY


# ---------------------------------------------------------------------------
# entry point


class _Parser(argparse.ArgumentParser):
    # keep the exit-code contract: bad usage is an invalid configuration (1),
    # not argparse's default 2 (reserved for I/O failures here)
    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="moving-well",
        description="Exact and finite-difference dynamics in a well with moving walls",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("modes", "tabulate modes and export density snapshots"),
        ("evolve", "propagate the configured initial state"),
        ("verify", "run the numerical audit suite"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to the JSON run configuration")
        p.add_argument("--out", default=None, help="output directory (overrides config)")
        if name == "evolve":
            p.add_argument("--method", default="both",
                           choices=("analytic", "fdm", "both"))
    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        cfg = load_config(args.config, out_override=args.out)
        outdir = Path(cfg.output.directory)
        outdir.mkdir(parents=True, exist_ok=True)
        if args.command == "modes":
            return cmd_modes(cfg, outdir)
        if args.command == "evolve":
            return cmd_evolve(cfg, outdir, method=args.method)
        return cmd_verify(cfg, outdir)
    except ConfigError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HorizonExceededError as exc:
        print(f"horizon exceeded: {exc}", file=sys.stderr)
        return EXIT_HORIZON
    except InvalidParameterError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except MovingWellError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
