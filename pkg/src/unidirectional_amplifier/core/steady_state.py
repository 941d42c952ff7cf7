"""Steady-state transmission roots, field reconstruction and the inverse map s_in(T)."""

from __future__ import annotations

import logging
import math
from typing import Optional, Sequence

import numpy as np

from .constants import FLUX_SCALE, RATE_SCALE
from .errors import InconsistentRoot, NegativePower, NonPositiveNonlinearity, PhysicsError
from .model import effective_params, power_of_flux
from .numerics import real_roots
from .stability import classify
from .types import BranchPoint, BranchSign, Cubic, Direction, EffectiveParams, SteadyBranch, SystemParams

logger = logging.getLogger(__name__)

RECONSTRUCT_RTOL = 1.0e-8


def _scaled(eff: EffectiveParams) -> tuple[float, float, float, float]:
    """(kappa, Delta, lambda, U) in 2*pi*MHz and 1e9/s units."""
    return (
        eff.kappa / RATE_SCALE,
        eff.Delta / RATE_SCALE,
        eff.lam / RATE_SCALE ** 2,
        eff.U * FLUX_SCALE / RATE_SCALE,
    )


def transmission_cubic(p: SystemParams, d: Direction, s_in: float) -> Cubic:
    """4U^2 s^2 T^3 - 8 Delta U s T^2 + (kappa^2 + 4 Delta^2) T - lambda, in scaled units."""
    kappa, delta, lam, u = _scaled(effective_params(p, d))
    s = s_in / FLUX_SCALE
    us = u * s if s > 0 else 0.0
    return Cubic(
        c3=4.0 * us * us,
        c2=-8.0 * delta * us,
        c1=kappa * kappa + 4.0 * delta * delta,
        c0=-lam,
    )


def transmission_roots(p: SystemParams, d: Direction, s_in: float) -> list[float]:
    """Positive transmission roots at photon flux *s_in*, ascending."""
    if s_in < 0:
        raise NegativePower(f"photon flux {s_in!r} is negative", field="s_in")
    eff = effective_params(p, d)
    kappa, delta, lam, u = _scaled(eff)
    if lam == 0:
        return [0.0]
    if s_in == 0 or u == 0:
        return [lam / (kappa * kappa + 4.0 * delta * delta)]
    roots = real_roots(transmission_cubic(p, d, s_in))
    return [r for r in roots if r > 0]


def relative_residual(p: SystemParams, d: Direction, s_in: float, T: float) -> float:
    """|cubic(T)| over the largest of its four terms."""
    cubic = transmission_cubic(p, d, s_in)
    scale = cubic.term_scale(T)
    return abs(cubic(T)) / scale if scale > 0 else 0.0


def s_in_of_T(p: SystemParams, d: Direction, T: float, branch: BranchSign) -> Optional[float]:
    """Photon flux at which *T* solves the transmission cubic on the given sign branch.

    Returns ``None`` when T exceeds lambda / kappa^2 or the flux is not positive.
    """
    if not T > 0:
        raise PhysicsError(f"transmission {T!r} must be > 0")
    kappa, delta, lam, u = _scaled(effective_params(p, d))
    if u == 0:
        raise NonPositiveNonlinearity(f"{Direction(d).value} nonlinearity is zero; s_in(T) is undefined")
    disc = T * lam - T * T * kappa * kappa
    if disc < 0:
        if disc < -1.0e-12 * T * lam:
            return None
        disc = 0.0
    root = math.sqrt(disc)
    sign = 1.0 if BranchSign(branch) == BranchSign.PLUS else -1.0
    s = (2.0 * T * delta + sign * root) / (2.0 * T * T * u)
    if not s > 0:
        return None
    return s * FLUX_SCALE


def reconstruct(p: SystemParams, d: Direction, s_in: float, T: float) -> SteadyBranch:
    """Rebuild output amplitude, intracavity fields and displacement for root *T*.

    The input amplitude is real and positive; the result carries an
    ``UNKNOWN`` stability verdict.
    """
    d = Direction(d)
    if s_in < 0:
        raise NegativePower(f"photon flux {s_in!r} is negative", field="s_in")
    eff = effective_params(p, d)
    a_in = math.sqrt(s_in)

    if p.J == 0:
        if d == Direction.BACKWARD:
            alpha2 = math.sqrt(p.kappa2_e) * a_in / complex(p.kappa2 / 2.0, p.Delta2)
            return SteadyBranch(d, s_in, 0.0, 0j, 0j, complex(alpha2), 0.0)
        if p.g > 0:
            raise PhysicsError("forward reconstruction with J = 0 and g > 0 is outside the coupled-cavity model")
        alpha1 = math.sqrt(p.kappa1_e) * a_in / complex(p.kappa_eff / 2.0, p.Delta1)
        return SteadyBranch(d, s_in, 0.0, 0j, complex(alpha1), 0j, 0.0)

    n_out = T * s_in
    out = eff.eps * a_in / complex(eff.kappa / 2.0, eff.Delta - eff.U * n_out)
    target = n_out
    mismatch = abs(abs(out) ** 2 - target)
    if s_in > 0 and mismatch > RECONSTRUCT_RTOL * target:
        raise InconsistentRoot(
            f"|out|^2 = {abs(out) ** 2:.12e} disagrees with T*s_in = {target:.12e} ({Direction(d).value})"
        )

    if d == Direction.FORWARD:
        alpha2 = out / math.sqrt(p.kappa2_e)
        alpha1 = complex(-p.Delta2, p.kappa2 / 2.0) * alpha2 / p.J
        q_bar = -p.g * abs(alpha1) ** 2 / p.omega_m
    else:
        alpha1 = out / math.sqrt(p.kappa1_e)
        q_bar = -p.g * abs(alpha1) ** 2 / p.omega_m
        alpha2 = 1j * complex(p.kappa_eff / 2.0, p.Delta1 + p.g * q_bar) * alpha1 / p.J
    return SteadyBranch(
        direction=d,
        s_in=s_in,
        T=T,
        out_amp=complex(out),
        alpha1=complex(alpha1),
        alpha2=complex(alpha2),
        q_bar=float(q_bar),
    )


def steady_state_residuals(p: SystemParams, branch: SteadyBranch) -> tuple[float, float]:
    """Residuals of the two cavity steady-state equations, relative to the drive term."""
    a_in = math.sqrt(branch.s_in)
    a1_in = a_in if branch.direction == Direction.FORWARD else 0.0
    a2_in = a_in if branch.direction == Direction.BACKWARD else 0.0
    r1 = (
        -complex(p.kappa_eff / 2.0, p.Delta1) * branch.alpha1
        - 1j * p.g * branch.q_bar * branch.alpha1
        - 1j * p.J * branch.alpha2
        + math.sqrt(p.kappa1_e) * a1_in
    )
    r2 = -complex(p.kappa2 / 2.0, p.Delta2) * branch.alpha2 - 1j * p.J * branch.alpha1 + math.sqrt(p.kappa2_e) * a2_in
    drive = math.sqrt(p.kappa1_e if branch.direction == Direction.FORWARD else p.kappa2_e) * a_in
    if drive == 0:
        return abs(r1), abs(r2)
    return abs(r1) / drive, abs(r2) / drive


def steady_branches(p: SystemParams, d: Direction, s_in: float) -> list[SteadyBranch]:
    """Every root at *s_in*, reconstructed, ascending in T."""
    return [reconstruct(p, d, s_in, T) for T in transmission_roots(p, d, s_in)]


def trace_branches(p: SystemParams, d: Direction, t_values: Sequence[float] | np.ndarray) -> list[BranchPoint]:
    """Parameterise the steady-state curve by T through the inverse map.

    Each T yields up to two points (one per sign); each point is reconstructed
    and classified so unstable segments can be drawn separately.
    """
    points: list[BranchPoint] = []
    for T in t_values:
        T = float(T)
        for sign in (BranchSign.MINUS, BranchSign.PLUS):
            s_in = s_in_of_T(p, d, T, sign)
            if s_in is None:
                continue
            branch = reconstruct(p, d, s_in, T)
            report = classify(p, branch)
            points.append(
                BranchPoint(
                    direction=Direction(d),
                    T=T,
                    sign=sign,
                    s_in=s_in,
                    p_in=power_of_flux(s_in, p.omega_d),
                    verdict=report.verdict,
                )
            )
    logger.debug("trace_branches: %d points from %d transmission values", len(points), len(t_values))
    return points
