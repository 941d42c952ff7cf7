"""Physical constants and the internal unit scales."""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import constants as _codata


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = _codata.hbar
    k_B: float = _codata.k


CONSTANTS = PhysicalConstants()

TWO_PI = 2.0 * math.pi

# Rates enter the cubic, the drift matrix and the scattering solve in units
# of 2*pi*MHz; photon fluxes in units of 1e9 photons per second.
RATE_SCALE = TWO_PI * 1.0e6
FLUX_SCALE = 1.0e9
