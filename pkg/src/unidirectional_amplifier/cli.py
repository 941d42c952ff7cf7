"""Command-line front end: sweeps, branch traces, stability and noise tables,
closed-form optima, figure reproduction and table verification.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from typing import Any, Optional, Sequence

import numpy as np

from .config import RunConfig, dump_config, load_config, with_overrides
from .core.constants import TWO_PI
from .core.errors import (
    AmplifierError,
    ConfigError,
    InconsistentRoot,
    NoAmplificationPossible,
    NumericsError,
    ParameterError,
    PhysicsError,
    RegimeViolation,
)
from .core.model import effective_params, photon_flux
from .core.noise import nsr, spectrum_table
from .core.nonreciprocity import (
    evaluate_power,
    interior_powers,
    isolation_opt,
    j_opt,
    keff_amplification_bound,
    numerical_t_max,
    sweep,
    t_max_opt,
    t_max_theor,
    working_region,
)
from .core.stability import classify
from .core.steady_state import reconstruct, relative_residual, steady_branches, trace_branches, transmission_roots
from .core.types import Direction, SteadyBranch, SystemParams, Verdict
from .presets import build_preset
from .tables import (
    NOISE_COLUMNS,
    SPECTRUM_COLUMNS,
    STABILITY_COLUMNS,
    SWEEP_COLUMNS,
    TMAX_COLUMNS,
    TRACE_COLUMNS,
    read_table,
    render,
    render_report,
    spectrum_records,
    stability_record,
    sweep_records,
    trace_records,
    write_text,
)

logger = logging.getLogger(__name__)

LOG_LEVEL_ENV = "UNIDIRECTIONAL_AMPLIFIER_LOG_LEVEL"
VERIFY_RTOL = 1.0e-8

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PHYSICS = 3


def resolve_log_level(raw: Optional[str]) -> int:
    """Level from ``--log-level`` or the environment; a name or an integer, default WARNING."""
    raw = raw or os.environ.get(LOG_LEVEL_ENV)
    if not raw:
        return logging.WARNING
    raw = raw.strip()
    if raw.isdigit():
        return int(raw)
    resolved = logging.getLevelName(raw.upper())
    return resolved if isinstance(resolved, int) else logging.WARNING


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------


def run_sweep(cfg: RunConfig, curve: Optional[str] = None) -> list[dict[str, Any]]:
    """Sweep table with the refined forward maximum inserted as an extra power."""
    p = cfg.system_params()
    rows = sweep(p, cfg.sweep.powers(), max_workers=cfg.max_workers)
    try:
        _t_num, p_peak = numerical_t_max(p, rows)
    except PhysicsError:
        logger.info("run_sweep: no stable forward branch, peak row omitted")
    else:
        if all(row.p_in != p_peak for row in rows):
            rows.append(evaluate_power(p, p_peak))
            rows.sort(key=lambda row: row.p_in)
    return sweep_records(rows, curve=curve)


def run_trace(cfg: RunConfig, directions: Sequence[Direction], t_points: int) -> list[dict[str, Any]]:
    p = cfg.system_params()
    eff = effective_params(p, Direction.FORWARD)
    t_top = eff.lam / eff.kappa ** 2
    if not t_top > 0:
        raise PhysicsError("lambda is zero; there is no curve to trace")
    t_values = np.logspace(math.log10(t_top) - 6.0, math.log10(t_top), t_points)
    records = []
    for direction in directions:
        records.extend(trace_records(trace_branches(p, direction, t_values)))
    return records


def run_stability(cfg: RunConfig, power: Optional[float]) -> list[dict[str, Any]]:
    p = cfg.system_params()
    powers = [power] if power is not None else list(cfg.sweep.powers())
    records = []
    for p_in in powers:
        s_in = photon_flux(p_in, p.omega_d)
        for direction in Direction:
            for index, branch in enumerate(steady_branches(p, direction, s_in)):
                report = classify(p, branch)
                records.append(stability_record(float(p_in), direction, index, branch.T, report))
    return records


def _selected_branch(p: SystemParams, d: Direction, s_in: float, *, upper: bool) -> Optional[SteadyBranch]:
    candidates = []
    for T in transmission_roots(p, d, s_in):
        report = classify(p, reconstruct(p, d, s_in, T))
        if report.verdict == Verdict.STABLE and report.branch is not None:
            candidates.append(report.branch)
    if not candidates:
        return None
    return candidates[-1] if upper else candidates[0]


def run_noise(cfg: RunConfig) -> list[dict[str, Any]]:
    """NSR on the forward upper branch and the backward lower branch across the working region.

    Sampling starts just past the fold at the lower edge, where the upper
    branch is marginal.
    """
    p = cfg.system_params()
    region = working_region(sweep(p, cfg.sweep.powers(), max_workers=cfg.max_workers), p)
    delta_omega = TWO_PI * cfg.noise.delta_omega_over_2pi_hz
    powers = interior_powers(region, cfg.noise.power_samples)
    records = []
    for p_in in powers:
        s_in = photon_flux(float(p_in), p.omega_d)
        forward = _selected_branch(p, Direction.FORWARD, s_in, upper=True)
        backward = _selected_branch(p, Direction.BACKWARD, s_in, upper=False)
        records.append(
            {
                "p_in_W": float(p_in),
                "NSR": None if forward is None else nsr(p, forward, delta_omega, cfg.noise.n_m, cfg.noise.n_points),
                "NSR_tilde": None if backward is None else nsr(p, backward, delta_omega, cfg.noise.n_m, cfg.noise.n_points),
            }
        )
    return records


def run_spectrum(cfg: RunConfig, power: float) -> list[dict[str, Any]]:
    p = cfg.system_params()
    s_in = photon_flux(power, p.omega_d)
    delta_omega = TWO_PI * cfg.noise.delta_omega_over_2pi_hz
    omegas = np.linspace(-delta_omega, delta_omega, cfg.noise.n_points)
    records = []
    for direction, upper in ((Direction.FORWARD, True), (Direction.BACKWARD, False)):
        branch = _selected_branch(p, direction, s_in, upper=upper)
        if branch is None:
            logger.warning("run_spectrum: no stable %s branch at %.6e W", direction.value, power)
            continue
        records.extend(spectrum_records(direction, spectrum_table(p, branch, omegas, cfg.noise.n_m)))
    return records


def run_optimize(cfg: RunConfig) -> tuple[dict[str, Any], Optional[PhysicsError]]:
    """Closed-form optima; a regime violation is flagged and the partial report still returned."""
    p = cfg.system_params()
    flags: list[str] = []
    failure: Optional[PhysicsError] = None
    report: dict[str, Any] = {"j_opt_over_2pi_Hz": j_opt(p) / TWO_PI, "t_max_opt": t_max_opt(p)}
    try:
        report["t_max_theor_at_current_J"] = t_max_theor(p)
    except RegimeViolation as exc:
        report["t_max_theor_at_current_J"] = None
        flags.append("delta_not_positive")
        failure = exc
    try:
        report["keff_bound_over_2pi_Hz"] = keff_amplification_bound(p) / TWO_PI
    except NoAmplificationPossible:
        report["keff_bound_over_2pi_Hz"] = None
        flags.append("no_amplification_possible")
    estimate = isolation_opt(p)
    report["e0_db"] = estimate.e0_db
    report["e0_db_simplified"] = estimate.e0_db_simplified
    if estimate.simplified_valid:
        flags.append("simplified_isolation_valid")
    if abs(p.J / j_opt(p) - 1.0) > 1.0e-2:
        flags.append("J_differs_from_j_opt")
    report["regime_flags"] = flags
    return report, failure


def run_tmax(curves: Sequence[tuple[str, RunConfig]]) -> list[dict[str, Any]]:
    """Numerical against analytic maximum transmission, one record per curve."""
    records = []
    for label, cfg in curves:
        p = cfg.system_params()
        t_num, p_at = numerical_t_max(p, sweep(p, cfg.sweep.powers(), max_workers=cfg.max_workers))
        t_theor = t_max_theor(p)
        records.append(
            {
                "curve": label,
                "t_max_num": t_num,
                "t_max_theor": t_theor,
                "relative_error": abs(t_num - t_theor) / t_theor,
                "p_at_max_W": p_at,
            }
        )
    return records


def verify_records(p: SystemParams, records: Sequence[dict[str, str]]) -> tuple[int, float]:
    """Re-check every (p_in, T) row against the transmission cubic; returns (rows checked, worst residual)."""
    checked = 0
    worst = 0.0
    for line, record in enumerate(records, start=2):
        try:
            p_in = float(record["p_in_W"])
            T = float(record["T"])
            direction = Direction(record["direction"])
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"unreadable row: {exc}", field="table", line=line) from exc
        if T <= 0:
            continue
        residual = relative_residual(p, direction, photon_flux(p_in, p.omega_d), T)
        worst = max(worst, residual)
        checked += 1
        if residual > VERIFY_RTOL:
            raise InconsistentRoot(f"line {line}: residual {residual:.3e} exceeds {VERIFY_RTOL:.0e}")
    return checked, worst


# ---------------------------------------------------------------------------
# Argument handling
# ---------------------------------------------------------------------------


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--preset", help="figure preset used when --config is absent")
    common.add_argument(
        "--override",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="patch one configuration key (repeatable; VALUE=null removes the key)",
    )
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="table format (default: from config, else csv)")
    common.add_argument("--save-config", help="also write the resolved configuration to this path")
    common.add_argument("--log-level", help=f"log level name or number (default: env {LOG_LEVEL_ENV} or WARNING)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="unidirectional-amplifier",
        description="Steady states, stability and noise of a gain-assisted optomechanical amplifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("sweep", parents=[common], help="transmission roots in both directions over the power grid")
    trace = sub.add_parser("trace-branches", parents=[common], help="steady-state curves parameterised by T")
    trace.add_argument("--direction", choices=("forward", "backward", "both"), default="both")
    trace.add_argument("--t-points", type=int, default=400)
    stability = sub.add_parser("stability", parents=[common], help="eigenvalue verdict for every root")
    stability.add_argument("--power", type=float, help="single input power in W (default: the sweep grid)")
    noise = sub.add_parser("noise", parents=[common], help="noise-to-signal ratios over the working region")
    noise.add_argument("--spectrum-power", type=float, help="emit the spectrum decomposition at this power instead")
    sub.add_parser("optimize", parents=[common], help="closed-form optimal coupling, transmission and isolation")
    reproduce = sub.add_parser("reproduce", parents=[common], help="regenerate the table behind a figure")
    reproduce.add_argument("figure", help="preset id, e.g. fig2a")
    verify = sub.add_parser("verify", parents=[common], help="re-check a sweep table against the transmission cubic")
    verify.add_argument("table", help="CSV or JSON table written by sweep/reproduce")
    return parser


def resolve_config(args: argparse.Namespace, preset_id: Optional[str] = None) -> RunConfig:
    preset_id = preset_id or args.preset
    if args.config:
        cfg = load_config(args.config, args.override)
    elif preset_id:
        cfg = with_overrides(build_preset(preset_id).config, args.override)
    else:
        raise ConfigError("give --config or --preset", field="config")
    return cfg


def _emit(args: argparse.Namespace, cfg: RunConfig, records: list[dict[str, Any]], columns: Sequence[str]) -> None:
    fmt = args.format or cfg.output.format
    write_text(render(records, columns, fmt), args.out or cfg.output.path, sys.stdout)


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "reproduce":
        preset = build_preset(args.figure)
        curves = tuple((label, with_overrides(cfg, args.override)) for label, cfg in preset.curves)
        cfg = curves[0][1]
        if args.save_config:
            write_text(dump_config(cfg), args.save_config, sys.stdout)
        if preset.kind == "tmax":
            _emit(args, cfg, run_tmax(curves), TMAX_COLUMNS)
        elif preset.kind == "noise":
            _emit(args, cfg, run_noise(cfg), NOISE_COLUMNS)
        elif len(curves) > 1:
            records = []
            for label, curve_cfg in curves:
                records.extend(run_sweep(curve_cfg, curve=label))
            _emit(args, cfg, records, ("curve",) + SWEEP_COLUMNS)
        else:
            _emit(args, cfg, run_sweep(cfg), SWEEP_COLUMNS)
        return EXIT_OK

    cfg = resolve_config(args)
    if args.save_config:
        write_text(dump_config(cfg), args.save_config, sys.stdout)

    if args.command == "sweep":
        _emit(args, cfg, run_sweep(cfg), SWEEP_COLUMNS)
    elif args.command == "trace-branches":
        directions = list(Direction) if args.direction == "both" else [Direction(args.direction)]
        _emit(args, cfg, run_trace(cfg, directions, args.t_points), TRACE_COLUMNS)
    elif args.command == "stability":
        _emit(args, cfg, run_stability(cfg, args.power), STABILITY_COLUMNS)
    elif args.command == "noise":
        if args.spectrum_power is not None:
            _emit(args, cfg, run_spectrum(cfg, args.spectrum_power), SPECTRUM_COLUMNS)
        else:
            _emit(args, cfg, run_noise(cfg), NOISE_COLUMNS)
    elif args.command == "optimize":
        report, failure = run_optimize(cfg)
        write_text(render_report(report, args.format or "json"), args.out or cfg.output.path, sys.stdout)
        if failure is not None:
            raise failure
    elif args.command == "verify":
        columns, records = read_table(args.table)
        if "curve" in columns:
            raise ConfigError("multi-curve tables cannot be checked against one parameter set", field="table")
        missing = {"p_in_W", "direction", "T"} - set(columns)
        if missing:
            raise ConfigError(f"table lacks column(s) {', '.join(sorted(missing))}", field="table")
        checked, worst = verify_records(cfg.system_params(), records)
        print(f"verified {checked} rows of {args.table}; worst relative residual {worst:.3e}")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=resolve_log_level(args.log_level), format="%(levelname)s %(name)s: %(message)s")
    try:
        return _dispatch(args)
    except (ConfigError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PhysicsError, NumericsError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except AmplifierError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS


if __name__ == "__main__":
    raise SystemExit(main())
