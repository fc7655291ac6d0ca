"""Command-line harness: batch runs, CSV emission, headline-number recipes.

Every subcommand is deterministic given (config, seed): identical invocations
produce byte-identical CSV.  Exit codes: 0 success, 2 configuration error,
3 numeric precondition violation, 1 I/O failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

import numpy as np

from .config import AUTO_LAG, ExperimentConfig, load_config
from .errors import ConfigError, NumericPreconditionError
from .geometry import FieldConfig, station_trajectory
from .holonomy import PathSampling, path_ordered_propagator, unitarity_defect
from .measurement import ReadoutModel, contrast, monte_carlo_experiment, sensitivity_report
from .phase import segment_phase, total_rectified_phase
from .physics import NVParameters
from .sequence import (
    StarkModel,
    build_echo_schedule,
    fringe_zero_crossings,
    optimal_readout_lag,
    simulate_run,
    stark_shift,
    sweep_signal,
)

CSV_VERSION = "# ac-diamond csv v1"
MC_SHOT_LADDER = (2500, 10000, 40000)
ECHO_DETUNINGS = (0.0, 1.0e4, 1.0e5, 1.0e6, 1.0e7)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.17g}"


def _emit_csv(out_path, header, rows) -> None:
    lines = [CSV_VERSION, ",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    return cfg


def _nv_params(cfg: ExperimentConfig) -> NVParameters:
    return NVParameters(D=cfg.D, g=cfg.g, R2E=cfg.R2E, T2=cfg.T2, B_z=cfg.B_z)


def _resolved_lag(cfg: ExperimentConfig) -> float:
    phi_max = total_rectified_phase(cfg.r, cfg.E0, cfg.n, cfg.g)
    if cfg.lag == AUTO_LAG:
        return optimal_readout_lag(phi_max)
    return float(cfg.lag)


def _cmd_phase(args) -> int:
    cfg = _load(args)
    phi = total_rectified_phase(cfg.r, cfg.E0, cfg.n, cfg.g)
    print(
        f"total rectified A-C phase: {phi:.6f} rad "
        f"(r={cfg.r:g} m, E={cfg.E0:g} V/m, n={cfg.n:g}, g={cfg.g:g})"
    )
    if args.out:
        _emit_csv(
            args.out,
            ("r_m", "E0_V_per_m", "n_rotations", "g", "phase_rad"),
            [(cfg.r, cfg.E0, cfg.n, cfg.g, phi)],
        )
    return 0


def _cmd_sweep(args) -> int:
    cfg = _load(args)
    n = cfg.integer_rotations()
    lag = _resolved_lag(cfg)
    schedule = build_echo_schedule(n, cfg.f, lag)
    traj = station_trajectory(cfg.r, cfg.f, tilt=cfg.tilt)
    grid = np.linspace(0.0, cfg.E0, args.grid)
    sweep = sweep_signal(grid, schedule, traj, _nv_params(cfg))
    crossings = fringe_zero_crossings(sweep.p1)
    idx = sweep.max_slope_index
    print(f"readout lag: {lag:.6f} rad")
    print(
        f"max |dp1/dE| at grid point {idx}/{grid.size - 1} "
        f"(E = {grid[idx]:.6g} V/m)"
    )
    print(f"fringe zero crossings (T2 -> inf): {crossings}")
    _emit_csv(
        args.out,
        ("E_V_per_m", "phase_rad", "p1", "p1_with_decoherence"),
        list(zip(sweep.e_values, sweep.phases, sweep.p1, sweep.p1_decohered)),
    )
    return 0


def _holonomy_ladder(max_steps: int) -> list[int]:
    ladder = [max(max_steps // 2**k, 1) for k in range(4, -1, -1)]
    return sorted(set(ladder))


def _cmd_holonomy(args) -> int:
    cfg = _load(args)
    params = _nv_params(cfg)
    field = FieldConfig(magnitude=cfg.E0)
    planar = station_trajectory(cfg.r, cfg.f, tilt=0.0)
    tilted = station_trajectory(cfg.r, cfg.f, tilt=cfg.tilt) if cfg.tilt else planar
    half = 1.0 / (2.0 * cfg.f)
    exact = segment_phase(0.0, half, planar, field, params)
    rows = []
    worst_unitarity = 0.0
    for steps in _holonomy_ladder(args.steps):
        prop = path_ordered_propagator(
            PathSampling(0.0, half, steps, planar, field), params
        )
        fwd = path_ordered_propagator(
            PathSampling(0.0, 2.0 * half, steps, tilted, field), params
        )
        rev = path_ordered_propagator(
            PathSampling(0.0, 2.0 * half, steps, tilted, field), params, reverse=True
        )
        worst_unitarity = max(
            worst_unitarity, unitarity_defect(prop.U), unitarity_defect(fwd.U)
        )
        rows.append(
            (
                steps,
                abs(prop.abelian_phase() - exact),
                prop.offdiagonal_norm(),
                float(np.linalg.norm(fwd.U - rev.U, 2)),
            )
        )
    print(f"planar segment phase (analytic): {exact:.9f} rad")
    print(f"worst unitarity defect: {worst_unitarity:.3e}")
    print(f"tilt used for path-dependence column: {cfg.tilt:g} rad")
    _emit_csv(
        args.out,
        ("steps", "planar_phase_error", "offdiag_norm", "path_dep_norm"),
        rows,
    )
    return 0


def _cmd_sensitivity(args) -> int:
    cfg = _load(args)
    c_factor = contrast(ReadoutModel(alpha0=cfg.alpha0, alpha1=cfg.alpha1))
    report = sensitivity_report(c_factor, cfg.T2, cfg.N)
    print(f"contrast C = {report.C:.6f}")
    print(f"single-center eta = {report.eta:.4f} rad/sqrt(Hz)")
    print(
        f"ensemble (N = {report.N:.3g}) eta = {report.eta_ensemble * 1e3:.4f} "
        "mrad/sqrt(Hz)"
    )
    print(
        f"time to 1 rad precision: {report.T_to_1rad:.6g} s "
        f"({report.T_to_1rad / 3600.0:.2f} h)"
    )
    _emit_csv(
        args.out,
        (
            "C", "T2_s", "eta_rad_per_sqrt_hz", "N",
            "eta_ensemble_rad_per_sqrt_hz", "T_to_1rad_s",
        ),
        [(report.C, report.T2, report.eta, report.N, report.eta_ensemble,
          report.T_to_1rad)],
    )
    return 0


def _cmd_montecarlo(args) -> int:
    cfg = _load(args)
    n = cfg.integer_rotations()
    lag = _resolved_lag(cfg)
    schedule = build_echo_schedule(n, cfg.f, lag)
    traj = station_trajectory(cfg.r, cfg.f, tilt=cfg.tilt)
    model = ReadoutModel(alpha0=cfg.alpha0, alpha1=cfg.alpha1)
    params = _nv_params(cfg)
    rows = []
    for offset, shots in enumerate(MC_SHOT_LADDER):
        estimate = monte_carlo_experiment(
            cfg.E0, schedule, traj, params, model, shots, cfg.seed + offset
        )
        rows.append((shots, estimate.mean, estimate.std_error))
    print(f"bias phase (true): {estimate.true_phase:.6f} rad")
    print(f"per-shot std at {estimate.shots} shots: {estimate.per_shot_std:.4f} rad")
    _emit_csv(args.out, ("shots", "phase_mean_rad", "phase_std_rad"), rows)
    return 0


def _cmd_stark(args) -> int:
    cfg = _load(args)
    report = stark_shift(
        cfg.E0, _nv_params(cfg), StarkModel(R2E=cfg.R2E), f_disk=cfg.f
    )
    print(f"Stark coupling R2E*E = {report.coupling_hz / 1e6:.4f} MHz")
    print(f"Zeeman splitting = {report.zeeman_splitting_hz / 1e6:.4f} MHz")
    print(f"adiabatic level shift = {report.shift_hz / 1e6:.4f} MHz")
    print(
        f"Stark modulation 3f = {report.modulation_hz / 1e3:.4f} kHz; "
        f"adiabatic: {'yes' if report.adiabatic else 'no'}"
    )
    if args.out:
        _emit_csv(
            args.out,
            ("coupling_hz", "zeeman_splitting_hz", "shift_hz", "modulation_hz",
             "adiabatic"),
            [(report.coupling_hz, report.zeeman_splitting_hz, report.shift_hz,
              report.modulation_hz, report.adiabatic)],
        )
    return 0


def _cmd_echo_check(args) -> int:
    cfg = _load(args)
    n = cfg.integer_rotations()
    lag = _resolved_lag(cfg)
    schedule = build_echo_schedule(n, cfg.f, lag)
    traj = station_trajectory(cfg.r, cfg.f, tilt=cfg.tilt)
    field = FieldConfig(magnitude=cfg.E0)
    params = _nv_params(cfg)
    baseline = simulate_run(schedule, traj, field, params, mode="closed_form")
    rows = []
    for detuning in ECHO_DETUNINGS:
        run = simulate_run(
            schedule, traj, field, params, mode="closed_form",
            detuning_hz=detuning,
        )
        rows.append((detuning, run.static_phase, abs(run.p1 - baseline.p1)))
    worst = max(abs(row[1]) for row in rows)
    print(f"echoed A-C phase: {baseline.ac_phase:.6f} rad; p1 = {baseline.p1:.6f}")
    print(f"max residual non-A-C phase over detunings: {worst:.3e} rad")
    _emit_csv(
        args.out,
        ("detuning_hz", "residual_phase_rad", "abs_p1_change"),
        rows,
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ac-diamond",
        description=(
            "Spinning-disk NV-center Aharonov-Casher experiment: closed-form "
            "phases, echo simulation, holonomy diagnostics, and readout "
            "statistics."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, steps=False, grid=False):
        p.add_argument("--config", help="experiment config file (key = value lines)")
        p.add_argument("--out", help="CSV output path (default: stdout)")
        p.add_argument("--seed", type=int, help="override the config seed")
        if steps:
            p.add_argument("--steps", type=int, default=100000,
                           help="finest path-integration step count")
        if grid:
            p.add_argument("--grid", type=int, default=201,
                           help="number of sweep grid points")

    p = sub.add_parser("phase", help="closed-form total rectified A-C phase")
    common(p)
    p.set_defaults(func=_cmd_phase)

    p = sub.add_parser("sweep", help="fluorescence signal vs field strength")
    common(p, grid=True)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("holonomy", help="path-ordered propagator diagnostics")
    common(p, steps=True)
    p.set_defaults(func=_cmd_holonomy)

    p = sub.add_parser("sensitivity", help="contrast and phase sensitivity report")
    common(p)
    p.set_defaults(func=_cmd_sensitivity)

    p = sub.add_parser("montecarlo", help="photon-count Monte Carlo phase estimate")
    common(p)
    p.set_defaults(func=_cmd_montecarlo)

    p = sub.add_parser("stark", help="ground-state Stark shift and adiabaticity")
    common(p)
    p.set_defaults(func=_cmd_stark)

    p = sub.add_parser("echo-check", help="residual phase vs constant detuning")
    common(p)
    p.set_defaults(func=_cmd_echo_check)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NumericPreconditionError as exc:
        print(f"numeric precondition violated: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"I/O failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
