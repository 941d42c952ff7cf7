"""Linearised drift matrix and the eigenvalue stability test."""

from __future__ import annotations

import dataclasses
import logging

import numpy as np

from .constants import RATE_SCALE
from .numerics import eigenvalues
from .types import DriftMatrix, StabilityReport, SteadyBranch, SystemParams, Verdict

logger = logging.getLogger(__name__)

VERDICT_RTOL = 1.0e-6


def build_drift(p: SystemParams, branch: SteadyBranch) -> DriftMatrix:
    """Drift matrix M of d(mu)/dt = -M mu + Gamma mu_in around *branch*.

    State order (da1, da1^dag, da2, da2^dag, dq, dp). Only alpha1 and q_bar
    of the steady state enter.
    """
    a1 = branch.alpha1
    a1c = np.conj(a1)
    shifted = p.Delta1 + p.g * branch.q_bar
    m = np.zeros((6, 6), dtype=complex)
    m[0, 0] = complex(p.kappa_eff / 2.0, shifted)
    m[0, 2] = 1j * p.J
    m[0, 4] = 1j * p.g * a1
    m[1, 1] = complex(p.kappa_eff / 2.0, -shifted)
    m[1, 3] = -1j * p.J
    m[1, 4] = -1j * p.g * a1c
    m[2, 0] = 1j * p.J
    m[2, 2] = complex(p.kappa2 / 2.0, p.Delta2)
    m[3, 1] = -1j * p.J
    m[3, 3] = complex(p.kappa2 / 2.0, -p.Delta2)
    m[4, 5] = -p.omega_m
    m[5, 0] = p.g * a1c
    m[5, 1] = p.g * a1
    m[5, 4] = p.omega_m
    m[5, 5] = p.gamma_m
    return DriftMatrix(m=m)


def verdict_for(eigs: np.ndarray) -> tuple[float, float, Verdict]:
    """(min real part, tolerance, verdict) for a set of drift eigenvalues."""
    min_re = float(np.min(eigs.real))
    tol = VERDICT_RTOL * float(np.max(np.abs(eigs)))
    if min_re > tol:
        verdict = Verdict.STABLE
    elif min_re < -tol:
        verdict = Verdict.UNSTABLE
    else:
        verdict = Verdict.MARGINAL
    return min_re, tol, verdict


def classify(p: SystemParams, branch: SteadyBranch) -> StabilityReport:
    """Stable iff every eigenvalue of M has a positive real part.

    The returned report carries a copy of *branch* with its verdict filled in.
    """
    drift = build_drift(p, branch)
    eigs = eigenvalues(drift.m / RATE_SCALE) * RATE_SCALE
    min_re, tol, verdict = verdict_for(eigs)
    if verdict == Verdict.MARGINAL:
        logger.debug("classify: marginal %s branch at T=%.6e (min Re %.3e, tol %.3e)", branch.direction.value, branch.T, min_re, tol)
    return StabilityReport(
        eigenvalues=tuple(complex(v) for v in eigs),
        min_real_part=min_re,
        tolerance=tol,
        verdict=verdict,
        branch=dataclasses.replace(branch, stable=verdict),
    )
