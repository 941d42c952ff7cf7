"""Tests for parameter validation and the effective single-mode reduction."""

from __future__ import annotations

import dataclasses
import math

import pytest

from unidirectional_amplifier.core import (
    CONSTANTS,
    Direction,
    ExternalExceedsTotal,
    GainExceedsLoss,
    NegativePower,
    NonPositiveRate,
    ParameterError,
    ParameterInput,
    effective_params,
    photon_flux,
    power_of_flux,
    thermal_occupancy,
    validate,
)
from unidirectional_amplifier.core.constants import RATE_SCALE, TWO_PI
from unidirectional_amplifier.core.model import backward_nonlinearity, forward_nonlinearity

BASE_HZ = dict(
    omega_d=200e12,
    omega_m=200e6,
    gamma_m=50e3,
    g=0.8e3,
    J=2.41e6,
    Delta1=50e6,
    Delta2=20e6,
    kappa1_e=100e6,
    kappa2_e=100e6,
)


def _input(**overrides) -> ParameterInput:
    values = dict(BASE_HZ, kappa1=100e6, kappa2=100e6, kappa_eff=200e3)
    values.update(overrides)
    return ParameterInput.from_frequencies(**{k: v for k, v in values.items() if v is not None})


class TestValidate:
    def test_kappa_eff_resolves_gain(self):
        p = validate(_input())
        assert p.gain / TWO_PI == pytest.approx(99.8e6, rel=1e-9)
        assert p.kappa_eff / TWO_PI == pytest.approx(200e3, rel=1e-6)
        assert p.kappa1_o == 0.0
        assert p.kappa2_o == 0.0

    def test_intrinsic_decay_alternative(self):
        p = validate(_input(kappa1=None, kappa1_o=20e6, kappa_eff=None, gain=10e6))
        assert p.kappa1 / TWO_PI == pytest.approx(120e6)
        assert p.kappa_eff / TWO_PI == pytest.approx(110e6)

    def test_defaults_when_alternatives_absent(self):
        p = validate(_input(kappa1=None, kappa2=None, kappa_eff=None))
        assert p.kappa1_o == 0.0
        assert p.kappa2_o == 0.0
        assert p.gain == 0.0

    def test_validated_params_are_accepted_again(self, fig2b_params):
        assert validate(fig2b_params) == fig2b_params

    def test_zero_kappa_eff_rejected(self):
        with pytest.raises(GainExceedsLoss):
            validate(_input(kappa_eff=0.0))

    def test_gain_above_loss_rejected(self):
        with pytest.raises(GainExceedsLoss):
            validate(_input(kappa_eff=None, gain=150e6))

    def test_negative_intrinsic_rejected(self):
        with pytest.raises(NonPositiveRate):
            validate(_input(kappa1=None, kappa1_o=-1.0))

    def test_external_above_total_rejected(self):
        with pytest.raises(ExternalExceedsTotal):
            validate(_input(kappa2=50e6))

    @pytest.mark.parametrize("name", ["omega_d", "omega_m", "gamma_m", "kappa1_e", "kappa2_e"])
    def test_strictly_positive_fields(self, name):
        with pytest.raises(NonPositiveRate) as excinfo:
            validate(_input(**{name: 0.0}))
        assert excinfo.value.field == name

    def test_negative_coupling_rejected(self):
        with pytest.raises(NonPositiveRate):
            validate(_input(J=-1.0))

    def test_both_alternatives_rejected(self):
        with pytest.raises(ParameterError):
            validate(_input(gain=1e6))
        with pytest.raises(ParameterError):
            validate(_input(kappa1_o=1e6))

    def test_non_finite_rejected(self):
        with pytest.raises(ParameterError):
            validate(_input(g=math.nan))


class TestEffectiveParams:
    def test_fig2b_values(self, fig2b_params):
        eff = effective_params(fig2b_params, Direction.FORWARD)
        assert eff.kappa / RATE_SCALE == pytest.approx(0.400279, rel=1e-5)
        assert eff.Delta / RATE_SCALE == pytest.approx(49.959944, rel=1e-7)
        assert eff.lam / RATE_SCALE ** 2 == pytest.approx(80.1117, rel=1e-5)
        assert eff.lam / eff.kappa ** 2 == pytest.approx(500.0, abs=0.01)

    def test_only_nonlinearity_depends_on_direction(self, fig2b_params):
        fwd = effective_params(fig2b_params, Direction.FORWARD)
        bwd = effective_params(fig2b_params, Direction.BACKWARD)
        assert (fwd.kappa, fwd.Delta, fwd.eps, fwd.lam) == (bwd.kappa, bwd.Delta, bwd.eps, bwd.lam)
        assert fwd.U == forward_nonlinearity(fig2b_params)
        assert bwd.U == backward_nonlinearity(fig2b_params)
        assert fwd.U > bwd.U

    def test_coupling_amplitude_matches_lambda(self, fig2b_params):
        eff = effective_params(fig2b_params, Direction.FORWARD)
        assert abs(eff.eps) ** 2 == pytest.approx(eff.lam / 4.0, rel=1e-12)

    def test_uncoupled_limit(self, decoupled_params):
        eff = effective_params(decoupled_params, Direction.BACKWARD)
        assert eff.kappa == decoupled_params.kappa_eff
        assert eff.Delta == decoupled_params.Delta1
        assert eff.eps == 0
        assert eff.lam == 0

    def test_forward_nonlinearity_limits(self, make_params):
        assert forward_nonlinearity(make_params(g=0.0)) == 0.0
        assert forward_nonlinearity(make_params(J=0.0)) == math.inf

    def test_nonlinearities_equal_on_reciprocity_manifold(self, make_params):
        # U = U-tilde when 4 J^2 kappa2e = kappa1e (kappa2^2 + 4 Delta2^2)
        p = make_params(J=math.sqrt(100e6 * (100e6 ** 2 + 4 * 20e6 ** 2) / (4 * 100e6)))
        fwd = effective_params(p, Direction.FORWARD)
        bwd = effective_params(p, Direction.BACKWARD)
        assert fwd.U == pytest.approx(bwd.U, rel=1e-12)

    def test_transmission_bound_is_scale_invariant(self, make_params):
        base = make_params()
        scaled = make_params(
            J=3 * 2.41e6,
            Delta1=3 * 50e6,
            Delta2=3 * 20e6,
            kappa1_e=3 * 100e6,
            kappa1=3 * 100e6,
            kappa2_e=3 * 100e6,
            kappa2=3 * 100e6,
            kappa_eff=3 * 200e3,
        )
        ratio = [
            effective_params(p, Direction.FORWARD).lam / effective_params(p, Direction.FORWARD).kappa ** 2
            for p in (base, scaled)
        ]
        assert ratio[1] == pytest.approx(ratio[0], rel=1e-12)


class TestPhotonFlux:
    def test_drive_photon_energy(self):
        assert CONSTANTS.hbar * TWO_PI * 200e12 == pytest.approx(1.325214e-19, rel=1e-6)

    def test_nanowatt_flux(self):
        assert photon_flux(2.03e-9, TWO_PI * 200e12) == pytest.approx(1.53182e10, rel=1e-5)

    def test_zero_power(self):
        assert photon_flux(0.0, TWO_PI * 200e12) == 0.0

    def test_negative_power_rejected(self):
        with pytest.raises(NegativePower):
            photon_flux(-1e-9, TWO_PI * 200e12)

    def test_inverse(self):
        omega_d = TWO_PI * 193e12
        assert power_of_flux(photon_flux(3.5e-4, omega_d), omega_d) == pytest.approx(3.5e-4, rel=1e-14)


class TestThermalOccupancy:
    def test_zero_temperature(self):
        assert thermal_occupancy(0.0, TWO_PI * 200e6) == 0.0

    def test_hundred_quanta_near_one_kelvin(self):
        assert thermal_occupancy(0.9647, TWO_PI * 200e6) == pytest.approx(100.0, rel=1e-3)

    def test_high_temperature_limit(self):
        omega_m = TWO_PI * 200e6
        temperature = 100.0 * CONSTANTS.hbar * omega_m / CONSTANTS.k_B
        assert thermal_occupancy(temperature, omega_m) == pytest.approx(100.0, rel=1e-2)

    def test_negative_temperature_rejected(self):
        with pytest.raises(ParameterError):
            thermal_occupancy(-1.0, TWO_PI * 200e6)


def test_system_params_are_frozen(fig2b_params):
    with pytest.raises(dataclasses.FrozenInstanceError):
        fig2b_params.g = 0.0  # type: ignore[misc]
