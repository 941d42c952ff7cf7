from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .constants import TWO_PI


class Direction(str, Enum):
    """Forward: drive cavity 1, read cavity 2. Backward: drive cavity 2, read cavity 1."""

    FORWARD = "forward"
    BACKWARD = "backward"


class Verdict(str, Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    MARGINAL = "marginal"
    UNKNOWN = "unknown"


class BranchSign(str, Enum):
    PLUS = "plus"
    MINUS = "minus"


@dataclass(frozen=True)
class ParameterInput:
    """Unvalidated parameter set in rad/s.

    Each cavity accepts either its intrinsic decay ``kappaN_o`` or its total
    decay ``kappaN``; cavity 1 accepts either ``gain`` or ``kappa_eff``.
    Unset alternatives default to ``kappaN_o = 0`` and ``gain = 0``.
    """

    omega_d: float
    omega_m: float
    gamma_m: float
    g: float
    J: float
    Delta1: float
    Delta2: float
    kappa1_e: float
    kappa2_e: float
    kappa1_o: Optional[float] = None
    kappa1: Optional[float] = None
    kappa2_o: Optional[float] = None
    kappa2: Optional[float] = None
    gain: Optional[float] = None
    kappa_eff: Optional[float] = None

    @classmethod
    def from_frequencies(cls, **values_over_2pi: Optional[float]) -> "ParameterInput":
        """Build from ordinary frequencies (omega / 2*pi, in Hz)."""
        scaled = {key: (None if value is None else float(value) * TWO_PI) for key, value in values_over_2pi.items()}
        return cls(**scaled)


@dataclass(frozen=True)
class SystemParams:
    omega_d: float
    omega_m: float
    gamma_m: float
    g: float
    J: float
    Delta1: float
    Delta2: float
    kappa1_e: float
    kappa1_o: float
    kappa2_e: float
    kappa2_o: float
    gain: float

    @property
    def kappa1(self) -> float:
        return self.kappa1_e + self.kappa1_o

    @property
    def kappa2(self) -> float:
        return self.kappa2_e + self.kappa2_o

    @property
    def kappa_eff(self) -> float:
        return self.kappa1 - self.gain

    @property
    def detuning_denominator(self) -> float:
        """kappa2^2 + 4 Delta2^2, shared by every cavity-2 elimination."""
        return self.kappa2 ** 2 + 4.0 * self.Delta2 ** 2


@dataclass(frozen=True)
class EffectiveParams:
    direction: Direction
    kappa: float
    Delta: float
    U: float
    eps: complex
    lam: float


@dataclass(frozen=True)
class Cubic:
    c3: float
    c2: float
    c1: float
    c0: float

    def __call__(self, x: float) -> float:
        return ((self.c3 * x + self.c2) * x + self.c1) * x + self.c0

    def derivative(self, x: float) -> float:
        return (3.0 * self.c3 * x + 2.0 * self.c2) * x + self.c1

    def term_scale(self, x: float) -> float:
        return max(abs(self.c3 * x ** 3), abs(self.c2 * x ** 2), abs(self.c1 * x), abs(self.c0))


@dataclass(frozen=True)
class SteadyBranch:
    direction: Direction
    s_in: float
    T: float
    out_amp: complex
    alpha1: complex
    alpha2: complex
    q_bar: float
    stable: Verdict = Verdict.UNKNOWN


@dataclass(frozen=True)
class DriftMatrix:
    m: np.ndarray
    state_order: tuple[str, ...] = ("da1", "da1_dag", "da2", "da2_dag", "dq", "dp")


@dataclass(frozen=True)
class StabilityReport:
    eigenvalues: tuple[complex, ...]
    min_real_part: float
    tolerance: float
    verdict: Verdict
    branch: Optional[SteadyBranch] = None


@dataclass(frozen=True)
class BranchPoint:
    """One point of a T-parameterised steady-state curve."""

    direction: Direction
    T: float
    sign: BranchSign
    s_in: float
    p_in: float
    verdict: Verdict


@dataclass(frozen=True)
class SweepRow:
    p_in: float
    s_in: float
    forward_branches: tuple[tuple[float, Verdict], ...]
    backward_branches: tuple[tuple[float, Verdict], ...]
    isolation_db: Optional[float] = None

    @staticmethod
    def _largest_stable(branches: tuple[tuple[float, Verdict], ...]) -> Optional[int]:
        index = None
        for i, (_T, verdict) in enumerate(branches):
            if verdict == Verdict.STABLE:
                index = i
        return index

    @property
    def forward_selected(self) -> Optional[int]:
        return self._largest_stable(self.forward_branches)

    @property
    def backward_selected(self) -> Optional[int]:
        return self._largest_stable(self.backward_branches)

    @property
    def t_sel(self) -> Optional[float]:
        index = self.forward_selected
        return None if index is None else self.forward_branches[index][0]

    @property
    def t_tilde_sel(self) -> Optional[float]:
        index = self.backward_selected
        return None if index is None else self.backward_branches[index][0]


@dataclass(frozen=True)
class WorkingRegion:
    p_lower: float
    p_upper: float
    criterion_notes: str = ""


@dataclass(frozen=True)
class IsolationEstimate:
    e0_db: float
    e0_db_simplified: float
    simplified_valid: bool


@dataclass(frozen=True)
class ScatteringMatrix:
    omega: float
    t: np.ndarray


@dataclass(frozen=True)
class SpectrumDecomposition:
    omega: float
    s1e: float
    s1o: float
    s2e: float
    s2o: float
    sG: float
    sm: float

    @property
    def total(self) -> float:
        return self.s1e + self.s1o + self.s2e + self.s2o + self.sG + self.sm


PORT_BASIS: tuple[str, ...] = (
    "a1_e",
    "a1_e_dag",
    "a1_o",
    "a1_o_dag",
    "a2_e",
    "a2_e_dag",
    "a2_o",
    "a2_o_dag",
    "a_gain",
    "a_gain_dag",
    "null",
    "zeta",
)


@dataclass(frozen=True)
class AmplificationRegion:
    """Contiguous power interval where one direction amplifies and the other attenuates."""

    amplified: Direction
    p_start: float
    p_end: float
