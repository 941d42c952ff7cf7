"""Input matrix, scattering matrix, output spectra and noise-to-signal ratios.

Port order of mu_in / mu_out (0-based):

    0 a1_e   1 a1_e^dag   2 a1_o   3 a1_o^dag   4 a2_e   5 a2_e^dag
    6 a2_o   7 a2_o^dag   8 a_G    9 a_G^dag    10 null  11 zeta

All optical baths are at zero temperature; only the mechanical bath carries
a thermal occupancy n_m.
"""

from __future__ import annotations

import logging
import math
from typing import Sequence

import numpy as np

from .constants import RATE_SCALE
from .errors import UnstableBranch, ZeroSignal
from .numerics import integrate, invert
from .stability import build_drift
from .types import Direction, ScatteringMatrix, SpectrumDecomposition, SteadyBranch, SystemParams, Verdict

logger = logging.getLogger(__name__)

IMAG_RESIDUE_RTOL = 1.0e-10
MIN_NSR_POINTS = 11

# (row a, row b) of the detected output port.
_OUTPUT_ROWS = {
    Direction.FORWARD: (4, 5),
    Direction.BACKWARD: (0, 1),
}

# (column for T[ra, .](w), column for T[rb, .](-w)) per optical bath; the
# gain pair is reversed because its correlator is anti-normally ordered.
_BATH_COLUMNS = (
    ("s1e", 0, 1),
    ("s1o", 2, 3),
    ("s2e", 4, 5),
    ("s2o", 6, 7),
    ("sG", 9, 8),
)
_MECHANICAL_COLUMN = 11


def build_input_matrix(p: SystemParams) -> np.ndarray:
    """6 x 12 real noise-injection matrix Gamma."""
    gamma = np.zeros((6, 12), dtype=float)
    for row, offset in ((0, 0), (1, 1)):
        gamma[row, 0 + offset] = math.sqrt(p.kappa1_e)
        gamma[row, 2 + offset] = math.sqrt(p.kappa1_o)
        gamma[row, 8 + offset] = math.sqrt(p.gain)
    for row, offset in ((2, 0), (3, 1)):
        gamma[row, 4 + offset] = math.sqrt(p.kappa2_e)
        gamma[row, 6 + offset] = math.sqrt(p.kappa2_o)
    gamma[5, 11] = math.sqrt(2.0 * p.gamma_m)
    return gamma


def scattering(p: SystemParams, branch: SteadyBranch, omega: float) -> ScatteringMatrix:
    """T(w) = Gamma^T (M - i w I)^-1 Gamma - I around *branch*.

    Solved in units of 2*pi*MHz; the result is dimensionless.
    """
    m = build_drift(p, branch).m / RATE_SCALE
    gamma = build_input_matrix(p) / math.sqrt(RATE_SCALE)
    resolvent = invert(m - 1j * (omega / RATE_SCALE) * np.eye(6))
    t = gamma.T @ resolvent @ gamma - np.eye(12)
    return ScatteringMatrix(omega=float(omega), t=t)


def _real_part(name: str, value: complex, omega: float) -> float:
    if abs(value.imag) > IMAG_RESIDUE_RTOL * max(abs(value.real), 1.0e-300):
        logger.warning(
            "output_spectrum: %s at omega=%.6e has imaginary residue %.3e (real %.3e)",
            name,
            omega,
            value.imag,
            value.real,
        )
    return float(value.real)


def _require_usable(branch: SteadyBranch) -> None:
    if branch.stable == Verdict.UNSTABLE:
        raise UnstableBranch(f"{branch.direction.value} branch at T={branch.T:.6e} is dynamically unstable")


def output_spectrum(p: SystemParams, branch: SteadyBranch, omega: float, n_m: float) -> SpectrumDecomposition:
    """Symmetrised output spectrum of the port the branch is read from.

    Forward branches are read at cavity 2, backward branches at cavity 1.
    """
    _require_usable(branch)
    ra, rb = _OUTPUT_ROWS[branch.direction]
    t_plus = scattering(p, branch, omega).t
    t_minus = scattering(p, branch, -omega).t
    parts: dict[str, float] = {}
    for name, ca, cb in _BATH_COLUMNS:
        value = 0.5 * (t_plus[ra, ca] * t_minus[rb, cb] + t_plus[rb, ca] * t_minus[ra, cb])
        parts[name] = _real_part(name, complex(value), omega)
    mech = t_plus[ra, _MECHANICAL_COLUMN] * t_minus[rb, _MECHANICAL_COLUMN] * (n_m + 0.5)
    parts["sm"] = _real_part("sm", complex(mech), omega)
    return SpectrumDecomposition(omega=float(omega), **parts)


def spectrum_table(
    p: SystemParams,
    branch: SteadyBranch,
    omegas: Sequence[float] | np.ndarray,
    n_m: float,
) -> list[SpectrumDecomposition]:
    return [output_spectrum(p, branch, float(w), n_m) for w in omegas]


def nsr(p: SystemParams, branch: SteadyBranch, delta_omega: float, n_m: float, n_points: int = 21) -> float:
    """Integrated output noise over [-delta_omega, delta_omega] per output photon flux."""
    _require_usable(branch)
    signal = abs(branch.out_amp) ** 2
    if signal == 0:
        raise ZeroSignal(f"{branch.direction.value} branch carries no output signal")
    if delta_omega == 0:
        return 0.0
    noise = integrate(
        lambda w: output_spectrum(p, branch, w, n_m).total,
        -abs(delta_omega),
        abs(delta_omega),
        max(int(n_points), MIN_NSR_POINTS),
    )
    return noise / signal
