"""Power sweeps, working-region detection and the closed-form optima."""

from __future__ import annotations

import dataclasses
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import NoAmplification, NoAmplificationPossible, PhysicsError, RegimeViolation
from .model import effective_params, photon_flux, power_of_flux
from .stability import classify
from .steady_state import reconstruct, s_in_of_T, transmission_roots
from .types import (
    AmplificationRegion,
    BranchSign,
    Direction,
    IsolationEstimate,
    SweepRow,
    SystemParams,
    Verdict,
    WorkingRegion,
)

logger = logging.getLogger(__name__)

T_MAX_MATCH_RTOL = 1.0e-3
REGION_LOG_XTOL = 1.0e-6
# "much larger than" in the large-detuning isolation regime check; also the
# widest Delta1 / Delta2 ratio still counted as "comparable"
MUCH_LARGER = 10.0
# relative power step above the lower region edge, where the upper branch is
# born at a fold and its slowest drift eigenvalue goes to zero
FOLD_CLEARANCE = 1.0e-3


def log_power_grid(p_min: float, p_max: float, points: Optional[int] = None, *, per_decade: Optional[int] = None) -> np.ndarray:
    """Log-spaced powers; give either a total point count or a density per decade."""
    if not 0 < p_min <= p_max:
        raise ValueError(f"log grid needs 0 < p_min <= p_max, got [{p_min!r}, {p_max!r}]")
    if points is None:
        decades = math.log10(p_max / p_min)
        points = max(2, int(round(decades * (per_decade or 100))) + 1)
    return np.logspace(math.log10(p_min), math.log10(p_max), int(points))


def classified_roots(p: SystemParams, d: Direction, s_in: float) -> tuple[tuple[float, Verdict], ...]:
    """Every root at *s_in* with its stability verdict, ascending in T."""
    samples = []
    for T in transmission_roots(p, d, s_in):
        report = classify(p, reconstruct(p, d, s_in, T))
        samples.append((T, report.verdict))
    return tuple(samples)


def isolation_db(t_forward: Optional[float], t_backward: Optional[float]) -> Optional[float]:
    if t_forward is None or t_backward is None or not (t_forward > 0 and t_backward > 0):
        return None
    return 10.0 * math.log10(t_forward / t_backward)


def evaluate_power(p: SystemParams, power: float) -> SweepRow:
    s_in = photon_flux(power, p.omega_d)
    row = SweepRow(
        p_in=float(power),
        s_in=s_in,
        forward_branches=classified_roots(p, Direction.FORWARD, s_in),
        backward_branches=classified_roots(p, Direction.BACKWARD, s_in),
    )
    return dataclasses.replace(row, isolation_db=isolation_db(row.t_sel, row.t_tilde_sel))


def sweep(p: SystemParams, powers: Sequence[float] | np.ndarray, *, max_workers: Optional[int] = None) -> list[SweepRow]:
    """One row per power; points are evaluated independently (no hysteresis memory)."""
    grid = [float(x) for x in powers]
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("sweep powers must be ascending")
    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            rows = list(pool.map(lambda power: evaluate_power(p, power), grid))
    else:
        rows = [evaluate_power(p, power) for power in grid]
    logger.info("sweep: %d powers in [%.3e, %.3e] W", len(rows), grid[0] if grid else 0.0, grid[-1] if grid else 0.0)
    return rows


def _largest_stable_forward(p: SystemParams, s_in: float) -> float:
    best = 0.0
    for T, verdict in classified_roots(p, Direction.FORWARD, s_in):
        if verdict == Verdict.STABLE:
            best = T
    return best


def numerical_t_max(p: SystemParams, rows: Sequence[SweepRow]) -> tuple[float, float]:
    """Largest stable forward transmission over the sweep and the power where it occurs.

    The grid argmax is refined by bounded maximisation in log(s_in) over the
    two neighbouring grid intervals.
    """
    values = [row.t_sel if row.t_sel is not None else -math.inf for row in rows]
    if not values or max(values) == -math.inf:
        raise PhysicsError("no stable forward branch anywhere in the sweep")
    k = int(np.argmax(values))
    best = [values[k], rows[k].s_in]
    lo = rows[max(k - 1, 0)].s_in
    hi = rows[min(k + 1, len(rows) - 1)].s_in
    if lo > 0 and hi > lo:

        def objective(log_s: float) -> float:
            s = math.exp(log_s)
            t = _largest_stable_forward(p, s)
            if t > best[0]:
                best[0], best[1] = t, s
            return -t

        minimize_scalar(objective, bounds=(math.log(lo), math.log(hi)), method="bounded", options={"xatol": 1.0e-9})
    logger.debug("numerical_t_max: grid %.9e refined to %.9e", values[k], best[0])
    return best[0], power_of_flux(best[1], p.omega_d)


def t_max_theor(p: SystemParams) -> float:
    """Upper bound lambda / kappa^2 on the forward transmission (valid for Delta > 0)."""
    eff = effective_params(p, Direction.FORWARD)
    if not eff.Delta > 0:
        raise RegimeViolation(f"effective detuning {eff.Delta:.6e} rad/s is not positive")
    return eff.lam / eff.kappa ** 2


def j_opt(p: SystemParams) -> float:
    """Inter-cavity coupling that maximises lambda / kappa^2."""
    return math.sqrt(p.kappa_eff * p.detuning_denominator / (4.0 * p.kappa2))


def t_max_opt(p: SystemParams) -> float:
    return (p.kappa1_e / p.kappa_eff) * (p.kappa2_e / p.kappa2)


def keff_amplification_bound(p: SystemParams) -> float:
    """kappa_eff at which lambda / kappa^2 equals one; amplification needs 0 < kappa_eff below it."""
    d2 = p.detuning_denominator
    bound = 4.0 * p.J * math.sqrt(p.kappa1_e * p.kappa2_e / d2) - 4.0 * p.J ** 2 * p.kappa2 / d2
    if not bound > 0:
        raise NoAmplificationPossible(f"no positive kappa_eff gives amplification (bound {bound:.6e} rad/s)")
    return bound


def isolation_opt(p: SystemParams) -> IsolationEstimate:
    """Isolation ratio at the optimal coupling and its large-detuning simplification."""
    ratio = p.J / j_opt(p)
    if abs(ratio - 1.0) > 1.0e-2:
        logger.info("isolation_opt: J is %.4f x J_opt; the estimate assumes J = J_opt", ratio)
    k2, ke = p.kappa2, p.kappa_eff
    e0 = 10.0 * math.log10(1.0 + (k2 * p.Delta1 - ke * p.Delta2) ** 2 / (k2 ** 2 * ke ** 2))
    simplified = 10.0 * math.log10(p.Delta1 ** 2 / ke ** 2)
    valid = False
    if p.Delta2 != 0:
        valid = (
            k2 >= MUCH_LARGER * ke
            and min(abs(p.Delta1), abs(p.Delta2)) >= MUCH_LARGER * ke
            and 1.0 / MUCH_LARGER <= p.Delta1 / p.Delta2 <= MUCH_LARGER
        )
    return IsolationEstimate(e0_db=e0, e0_db_simplified=simplified, simplified_valid=valid)


def _largest_forward_root(p: SystemParams, s_in: float) -> float:
    roots = transmission_roots(p, Direction.FORWARD, s_in)
    return roots[-1] if roots else 0.0


def working_region(rows: Sequence[SweepRow], p: SystemParams) -> WorkingRegion:
    """Power interval from the forward transmission peak down to where it falls to one."""
    if not rows:
        raise ValueError("working_region needs at least one sweep row")
    t_num, p_num = numerical_t_max(p, rows)
    if t_num <= 1.0:
        raise NoAmplification(f"forward transmission never exceeds 1 (max {t_num:.6e})")

    eff = effective_params(p, Direction.FORWARD)
    notes = []
    if eff.Delta > 0 and eff.U > 0:
        t_theor = eff.lam / eff.kappa ** 2
        s_lower = s_in_of_T(p, Direction.FORWARD, t_theor, BranchSign.PLUS)
        if s_lower is None:
            raise PhysicsError("analytic peak has no positive input flux")
        mismatch = abs(t_num - t_theor) / t_theor
        if mismatch > T_MAX_MATCH_RTOL:
            logger.warning("working_region: numerical peak %.6e differs from lambda/kappa^2 = %.6e", t_num, t_theor)
        notes.append(f"p_lower from s_in(T_max,theor = {t_theor:.6e})")
    else:
        s_lower = photon_flux(p_num, p.omega_d)
        notes.append(f"p_lower at the numerical peak T = {t_num:.6e}")
    p_lower = power_of_flux(s_lower, p.omega_d)

    lo = s_lower
    hi = None
    for row in rows:
        if row.s_in <= s_lower:
            continue
        if _largest_forward_root(p, row.s_in) < 1.0:
            hi = row.s_in
            break
        lo = row.s_in
    if hi is None:
        if rows[-1].s_in <= s_lower:
            raise PhysicsError(
                f"sweep ends at {rows[-1].p_in:.6e} W, below the lower region edge {p_lower:.6e} W"
            )
        notes.append("T stays above 1 to the end of the sweep")
        p_upper = rows[-1].p_in
    else:
        log_s = brentq(
            lambda x: _largest_forward_root(p, math.exp(x)) - 1.0,
            math.log(lo),
            math.log(hi),
            xtol=REGION_LOG_XTOL,
        )
        p_upper = power_of_flux(math.exp(log_s), p.omega_d)
        notes.append("p_upper where the upper-branch T crosses 1")
    logger.info("working_region: [%.6e, %.6e] W", p_lower, p_upper)
    return WorkingRegion(p_lower=p_lower, p_upper=p_upper, criterion_notes="; ".join(notes))


def interior_powers(region: WorkingRegion, samples: int) -> np.ndarray:
    """Log-spaced powers over (p_lower, p_upper], starting one fold clearance above p_lower.

    The upper branch is marginal exactly at p_lower, so noise spectra there
    diverge; every returned power lies on the settled part of the branch.
    """
    start = region.p_lower * (1.0 + FOLD_CLEARANCE)
    if not region.p_upper > start:
        raise PhysicsError(
            f"working region [{region.p_lower:.6e}, {region.p_upper:.6e}] W is too narrow to sample past the fold"
        )
    return log_power_grid(start, region.p_upper, samples)


def isolation_range(p: SystemParams, region: WorkingRegion, samples: int = 64) -> tuple[float, float]:
    """(min, max) of |E| in dB over log-spaced powers spanning the working region."""
    powers = log_power_grid(region.p_lower, region.p_upper, samples) if region.p_upper > region.p_lower else [region.p_lower]
    values = [abs(row.isolation_db) for row in (evaluate_power(p, power) for power in powers) if row.isolation_db is not None]
    if not values:
        raise PhysicsError("no power in the working region has stable branches in both directions")
    return min(values), max(values)


def amplification_regions(rows: Sequence[SweepRow]) -> list[AmplificationRegion]:
    """Contiguous grid runs with T > 1 > T-tilde (forward) or T-tilde > 1 > T (backward)."""
    regions: list[AmplificationRegion] = []
    current: Optional[Direction] = None
    start = end = 0.0
    for row in rows:
        t, tt = row.t_sel, row.t_tilde_sel
        kind = None
        if t is not None and tt is not None:
            if t > 1.0 > tt:
                kind = Direction.FORWARD
            elif tt > 1.0 > t:
                kind = Direction.BACKWARD
        if kind != current:
            if current is not None:
                regions.append(AmplificationRegion(current, start, end))
            if kind is not None:
                start = row.p_in
            current = kind
        if kind is not None:
            end = row.p_in
    if current is not None:
        regions.append(AmplificationRegion(current, start, end))
    return regions
