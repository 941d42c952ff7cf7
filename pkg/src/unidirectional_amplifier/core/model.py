"""Parameter validation and the direction-dependent single-mode reduction."""

from __future__ import annotations

import dataclasses
import math

from .constants import CONSTANTS
from .errors import ExternalExceedsTotal, GainExceedsLoss, NegativePower, NonPositiveRate, ParameterError
from .types import Direction, EffectiveParams, ParameterInput, SystemParams

_STRICTLY_POSITIVE = ("omega_d", "omega_m", "gamma_m", "kappa1_e", "kappa2_e")
_NON_NEGATIVE = ("g", "J")


def _resolve_intrinsic(raw: ParameterInput, cavity: int) -> float:
    external = getattr(raw, f"kappa{cavity}_e")
    intrinsic = getattr(raw, f"kappa{cavity}_o")
    total = getattr(raw, f"kappa{cavity}")
    if intrinsic is not None and total is not None:
        raise ParameterError("give either the intrinsic or the total decay, not both", field=f"kappa{cavity}")
    if total is not None:
        if not total > 0:
            raise NonPositiveRate("must be > 0", field=f"kappa{cavity}")
        if external > total:
            raise ExternalExceedsTotal(
                f"external decay {external!r} exceeds total decay {total!r}",
                field=f"kappa{cavity}_e",
            )
        return total - external
    if intrinsic is None:
        return 0.0
    if intrinsic < 0:
        raise NonPositiveRate("must be >= 0", field=f"kappa{cavity}_o")
    return float(intrinsic)


def validate(raw: ParameterInput | SystemParams) -> SystemParams:
    """Return a checked :class:`SystemParams` or raise a :class:`ParameterError`.

    When ``kappa_eff`` is supplied instead of ``gain`` the gain is reported
    as ``kappa1 - kappa_eff``.
    """
    if isinstance(raw, SystemParams):
        raw = ParameterInput(
            **{f.name: getattr(raw, f.name) for f in dataclasses.fields(SystemParams)}
        )

    for field in dataclasses.fields(ParameterInput):
        value = getattr(raw, field.name)
        if value is not None and not math.isfinite(value):
            raise ParameterError("must be finite", field=field.name)
    for name in _STRICTLY_POSITIVE:
        if not getattr(raw, name) > 0:
            raise NonPositiveRate("must be > 0", field=name)
    for name in _NON_NEGATIVE:
        if getattr(raw, name) < 0:
            raise NonPositiveRate("must be >= 0", field=name)

    kappa1_o = _resolve_intrinsic(raw, 1)
    kappa2_o = _resolve_intrinsic(raw, 2)
    kappa1 = raw.kappa1_e + kappa1_o

    if raw.gain is not None and raw.kappa_eff is not None:
        raise ParameterError("give either gain or kappa_eff, not both", field="gain")
    if raw.kappa_eff is not None:
        if not raw.kappa_eff > 0:
            raise GainExceedsLoss(f"kappa_eff = {raw.kappa_eff!r} must be > 0", field="kappa_eff")
        gain = kappa1 - raw.kappa_eff
        if gain < 0:
            raise NonPositiveRate(
                f"kappa_eff {raw.kappa_eff!r} exceeds kappa1 {kappa1!r}, implying negative gain",
                field="kappa_eff",
            )
    else:
        gain = 0.0 if raw.gain is None else float(raw.gain)
        if gain < 0:
            raise NonPositiveRate("must be >= 0", field="gain")
        if not kappa1 - gain > 0:
            raise GainExceedsLoss(f"gain {gain!r} leaves kappa_eff = {kappa1 - gain!r} <= 0", field="gain")

    return SystemParams(
        omega_d=float(raw.omega_d),
        omega_m=float(raw.omega_m),
        gamma_m=float(raw.gamma_m),
        g=float(raw.g),
        J=float(raw.J),
        Delta1=float(raw.Delta1),
        Delta2=float(raw.Delta2),
        kappa1_e=float(raw.kappa1_e),
        kappa1_o=kappa1_o,
        kappa2_e=float(raw.kappa2_e),
        kappa2_o=kappa2_o,
        gain=gain,
    )


def forward_nonlinearity(p: SystemParams) -> float:
    if p.g == 0:
        return 0.0
    if p.J == 0:
        return math.inf
    return p.g ** 2 * p.detuning_denominator / (4.0 * p.omega_m * p.J ** 2 * p.kappa2_e)


def backward_nonlinearity(p: SystemParams) -> float:
    return p.g ** 2 / (p.omega_m * p.kappa1_e)


def effective_params(p: SystemParams, d: Direction) -> EffectiveParams:
    """Reduce the three-mode system to one Kerr-like mode for direction *d*.

    kappa, Delta, eps and lambda do not depend on the direction; only the
    nonlinearity does (U forward, U-tilde backward).
    """
    d2 = p.detuning_denominator
    hop = 4.0 * p.J ** 2 / d2
    kappa = p.kappa_eff + hop * p.kappa2
    delta = p.Delta1 - hop * p.Delta2
    eps = -2j * p.J * math.sqrt(p.kappa1_e * p.kappa2_e) / complex(p.kappa2, 2.0 * p.Delta2)
    lam = 16.0 * p.J ** 2 * p.kappa1_e * p.kappa2_e / d2
    u = forward_nonlinearity(p) if Direction(d) == Direction.FORWARD else backward_nonlinearity(p)
    return EffectiveParams(direction=Direction(d), kappa=kappa, Delta=delta, U=u, eps=eps, lam=lam)


def photon_flux(power: float, omega_d: float) -> float:
    """Photon flux s_in = P / (hbar * omega_d) in photons per second."""
    if power < 0:
        raise NegativePower(f"input power {power!r} W is negative", field="p_in")
    return power / (CONSTANTS.hbar * omega_d)


def power_of_flux(s_in: float, omega_d: float) -> float:
    return s_in * CONSTANTS.hbar * omega_d


def thermal_occupancy(temperature: float, omega_m: float) -> float:
    """Bose occupancy of the mechanical bath; zero at zero temperature."""
    if temperature < 0:
        raise ParameterError("must be >= 0", field="temperature")
    if temperature == 0:
        return 0.0
    x = CONSTANTS.hbar * omega_m / (CONSTANTS.k_B * temperature)
    return 1.0 / math.expm1(x)
