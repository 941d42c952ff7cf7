"""Figure presets: the caption parameter sets of every published figure.

Power grids span 0.1 uW to 0.1 W at 400 points per decade. With the
caption parameters taken literally in SI units, every power feature sits
at 1000x the value printed on the published power axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .config import FrequencyParams, NoiseConfig, RunConfig, SweepConfig
from .core.errors import ConfigError

PRESET_IDS = ("fig2a", "fig2b", "fig2c", "fig3", "fig4", "fig5a", "fig5b", "fig5c", "fig_nsr")

J0_HZ = 2.41e6
DELTA0_HZ = 1.0e6
FIG4_DETUNINGS = ((50, 20), (40, 30), (60, 10), (30, 50))

PRESET_SWEEP = SweepConfig(p_min_w=1.0e-7, p_max_w=1.0e-1, points=2401, spacing="log")

_FIG2_BASE = FrequencyParams(
    omega_d=200e12,
    omega_m=200e6,
    gamma_m=50e3,
    g=0.8e3,
    J=J0_HZ,
    Delta1=50e6,
    Delta2=20e6,
    kappa1_e=100e6,
    kappa1=100e6,
    kappa2_e=100e6,
    kappa2=100e6,
    kappa_eff=200e3,
)

_FIG5_BASE = replace(_FIG2_BASE, J=2.19e6, Delta2=60e6, kappa1=200e6)

_FIG4_BASE = replace(_FIG2_BASE, kappa1_e=50e6, kappa1=50e6)


@dataclass(frozen=True)
class FigurePreset:
    id: str
    kind: str  # "sweep", "tmax" or "noise"
    curves: tuple[tuple[str, RunConfig], ...]
    description: str = ""

    @property
    def config(self) -> RunConfig:
        return self.curves[0][1]


def optimal_coupling_hz(params: FrequencyParams) -> float:
    kappa2 = params.kappa2 if params.kappa2 is not None else params.kappa2_e + (params.kappa2_o or 0.0)
    return math.sqrt(params.kappa_eff * (kappa2 ** 2 + 4.0 * params.Delta2 ** 2) / (4.0 * kappa2))


def _run(params: FrequencyParams) -> RunConfig:
    return RunConfig(params=params, sweep=PRESET_SWEEP)


def _fig2(scale: float) -> RunConfig:
    return _run(replace(_FIG2_BASE, J=scale * J0_HZ))


def _fig5(kappa1_e_hz: float) -> RunConfig:
    return _run(replace(_FIG5_BASE, kappa1_e=kappa1_e_hz))


def _fig4_curves() -> tuple[tuple[str, RunConfig], ...]:
    curves = []
    for d1, d2 in FIG4_DETUNINGS:
        params = replace(_FIG4_BASE, Delta1=d1 * DELTA0_HZ, Delta2=d2 * DELTA0_HZ)
        params = replace(params, J=optimal_coupling_hz(params))
        curves.append((f"delta1={d1},delta2={d2}", _run(params)))
    return tuple(curves)


def build_preset(name: str) -> FigurePreset:
    normalized = str(name or "").strip().lower().replace("-", "_")
    if normalized == "fig2a":
        return FigurePreset("fig2a", "sweep", (("J=0.5J0", _fig2(0.5)),), "transmission vs power, J = 0.5 J0")
    if normalized == "fig2b":
        return FigurePreset("fig2b", "sweep", (("J=J0", _fig2(1.0)),), "transmission vs power, J = J0")
    if normalized == "fig2c":
        return FigurePreset("fig2c", "sweep", (("J=1.5J0", _fig2(1.5)),), "transmission vs power, J = 1.5 J0")
    if normalized == "fig5a":
        return FigurePreset("fig5a", "sweep", (("kappa1_e=20MHz", _fig5(20e6)),), "kappa1_e / 2pi = 20 MHz")
    if normalized == "fig5b":
        return FigurePreset("fig5b", "sweep", (("kappa1_e=80MHz", _fig5(80e6)),), "kappa1_e / 2pi = 80 MHz")
    if normalized == "fig5c":
        return FigurePreset("fig5c", "sweep", (("kappa1_e=200MHz", _fig5(200e6)),), "kappa1_e / 2pi = 200 MHz")
    if normalized == "fig3":
        curves = tuple(
            (preset_id, build_preset(preset_id).config)
            for preset_id in ("fig2a", "fig2b", "fig2c", "fig5a", "fig5b", "fig5c")
        )
        return FigurePreset("fig3", "tmax", curves, "numerical vs analytic maximum transmission")
    if normalized == "fig4":
        return FigurePreset("fig4", "sweep", _fig4_curves(), "detuning pairs at J = J_opt")
    if normalized == "fig_nsr":
        cfg = replace(_fig2(1.0), noise=NoiseConfig(n_m=100.0, delta_omega_over_2pi_hz=30.0, n_points=21, power_samples=50))
        return FigurePreset("fig_nsr", "noise", (("J=J0", cfg),), "noise-to-signal ratios over the fig2b working region")
    raise ConfigError(f"unknown preset {name!r}; choose one of {', '.join(PRESET_IDS)}", field="preset")
