"""Tests for transmission roots, the inverse map and field reconstruction."""

from __future__ import annotations

import math

import numpy as np
import pytest

from unidirectional_amplifier.core import (
    BranchSign,
    Direction,
    InconsistentRoot,
    NegativePower,
    NonPositiveNonlinearity,
    PhysicsError,
    Verdict,
    effective_params,
    photon_flux,
    power_of_flux,
    reconstruct,
    s_in_of_T,
    steady_branches,
    t_max_theor,
    trace_branches,
    transmission_roots,
)
from unidirectional_amplifier.core.steady_state import relative_residual, steady_state_residuals

PRESET_POWERS = np.logspace(-7, -1, 61)


def _linear_transmission(p, d=Direction.FORWARD) -> float:
    eff = effective_params(p, d)
    return eff.lam / (eff.kappa ** 2 + 4.0 * eff.Delta ** 2)


class TestTransmissionRoots:
    def test_linear_response_without_optomechanics(self, make_params):
        p = make_params(g=0.0)
        for power in (1e-6, 1e-3):
            s_in = photon_flux(power, p.omega_d)
            forward = transmission_roots(p, Direction.FORWARD, s_in)
            backward = transmission_roots(p, Direction.BACKWARD, s_in)
            assert forward == backward
            assert forward == pytest.approx([0.00802], rel=1e-3)

    def test_zero_flux_is_linear(self, fig2b_params):
        assert transmission_roots(fig2b_params, Direction.FORWARD, 0.0) == pytest.approx(
            [_linear_transmission(fig2b_params)], rel=1e-12
        )

    def test_uncoupled_cavities_transmit_nothing(self, decoupled_params):
        assert transmission_roots(decoupled_params, Direction.FORWARD, 1e15) == [0.0]

    def test_negative_flux_rejected(self, fig2b_params):
        with pytest.raises(NegativePower):
            transmission_roots(fig2b_params, Direction.FORWARD, -1.0)

    def test_roots_ascending_and_bounded(self, fig2b_params):
        t_top = t_max_theor(fig2b_params)
        for power in PRESET_POWERS:
            s_in = photon_flux(power, fig2b_params.omega_d)
            for d in Direction:
                roots = transmission_roots(fig2b_params, d, s_in)
                assert len(roots) in (1, 3)
                assert roots == sorted(roots)
                assert all(0 < T <= t_top * (1 + 1e-10) for T in roots)

    def test_roots_solve_the_cubic(self, fig2a_params):
        for power in PRESET_POWERS:
            s_in = photon_flux(power, fig2a_params.omega_d)
            for d in Direction:
                for T in transmission_roots(fig2a_params, d, s_in):
                    assert relative_residual(fig2a_params, d, s_in, T) < 1e-9

    def test_peak_transmission_at_lower_power(self, fig2a_params, fig2a_lower_flux):
        roots = transmission_roots(fig2a_params, Direction.FORWARD, fig2a_lower_flux)
        assert roots[-1] == pytest.approx(t_max_theor(fig2a_params), rel=1e-6)
        assert power_of_flux(fig2a_lower_flux, fig2a_params.omega_d) == pytest.approx(2.03e-6, rel=1e-2)

    def test_reciprocal_on_nonlinearity_manifold(self, make_params):
        p = make_params(J=math.sqrt(100e6 * (100e6 ** 2 + 4 * 20e6 ** 2) / (4 * 100e6)))
        for power in PRESET_POWERS[::6]:
            s_in = photon_flux(power, p.omega_d)
            forward = transmission_roots(p, Direction.FORWARD, s_in)
            backward = transmission_roots(p, Direction.BACKWARD, s_in)
            assert forward == pytest.approx(backward, rel=1e-10)


class TestInverseMap:
    def test_signs_meet_at_the_peak(self, fig2b_params):
        t_top = t_max_theor(fig2b_params)
        plus = s_in_of_T(fig2b_params, Direction.FORWARD, t_top, BranchSign.PLUS)
        minus = s_in_of_T(fig2b_params, Direction.FORWARD, t_top, BranchSign.MINUS)
        eff = effective_params(fig2b_params, Direction.FORWARD)
        assert plus == pytest.approx(minus, rel=1e-6)
        assert plus == pytest.approx(eff.Delta / (eff.U * t_top), rel=1e-6)

    def test_above_peak_is_unreachable(self, fig2b_params):
        t_top = t_max_theor(fig2b_params)
        for sign in BranchSign:
            assert s_in_of_T(fig2b_params, Direction.FORWARD, 1.01 * t_top, sign) is None

    @pytest.mark.parametrize("T", [0.01, 1.0, 10.0, 100.0, 300.0])
    @pytest.mark.parametrize("sign", list(BranchSign))
    def test_inverse_is_a_root(self, fig2a_params, T, sign):
        s_in = s_in_of_T(fig2a_params, Direction.FORWARD, T, sign)
        assert s_in is not None
        roots = transmission_roots(fig2a_params, Direction.FORWARD, s_in)
        assert min(abs(r - T) / T for r in roots) < 1e-8

    def test_zero_nonlinearity_rejected(self, make_params):
        with pytest.raises(NonPositiveNonlinearity):
            s_in_of_T(make_params(g=0.0), Direction.FORWARD, 1e-3, BranchSign.PLUS)

    def test_non_positive_transmission_rejected(self, fig2b_params):
        with pytest.raises(PhysicsError):
            s_in_of_T(fig2b_params, Direction.FORWARD, 0.0, BranchSign.PLUS)


class TestReconstruct:
    def test_output_matches_transmission(self, fig2a_params, fig2a_lower_flux):
        for factor in (1.0, 3.0, 10.0, 100.0):
            s_in = factor * fig2a_lower_flux
            for d in Direction:
                for branch in steady_branches(fig2a_params, d, s_in):
                    assert abs(branch.out_amp) ** 2 == pytest.approx(branch.T * s_in, rel=1e-9)
                    assert branch.stable == Verdict.UNKNOWN

    def test_fields_solve_the_cavity_equations(self, fig2a_params, fig2a_lower_flux):
        for factor in (3.0, 10.0, 100.0):
            s_in = factor * fig2a_lower_flux
            for d in Direction:
                for branch in steady_branches(fig2a_params, d, s_in):
                    r1, r2 = steady_state_residuals(fig2a_params, branch)
                    assert r1 < 1e-8
                    assert r2 < 1e-8

    def test_displacement_follows_cavity_one(self, fig2a_params, fig2a_lower_flux):
        branch = steady_branches(fig2a_params, Direction.FORWARD, fig2a_lower_flux)[-1]
        assert branch.q_bar < 0
        assert branch.q_bar == pytest.approx(
            -fig2a_params.g * abs(branch.alpha1) ** 2 / fig2a_params.omega_m, rel=1e-12
        )

    def test_uncoupled_forward_fills_cavity_one(self, decoupled_params):
        p = decoupled_params
        s_in = 1e12
        branch = reconstruct(p, Direction.FORWARD, s_in, 0.0)
        expected = math.sqrt(p.kappa1_e * s_in) / complex(p.kappa_eff / 2.0, p.Delta1)
        assert branch.out_amp == 0
        assert branch.alpha2 == 0
        assert branch.alpha1 == pytest.approx(expected, rel=1e-12)
        assert branch.q_bar == 0.0

    def test_uncoupled_backward_fills_cavity_two(self, decoupled_params):
        branch = reconstruct(decoupled_params, Direction.BACKWARD, 1e12, 0.0)
        assert branch.alpha1 == 0
        assert abs(branch.alpha2) > 0

    def test_uncoupled_forward_with_optomechanics_unsupported(self, make_params):
        with pytest.raises(PhysicsError):
            reconstruct(make_params(J=0.0), Direction.FORWARD, 1e12, 0.0)

    def test_non_root_rejected(self, fig2b_params):
        s_in = photon_flux(1e-5, fig2b_params.omega_d)
        T = transmission_roots(fig2b_params, Direction.FORWARD, s_in)[-1]
        with pytest.raises(InconsistentRoot):
            reconstruct(fig2b_params, Direction.FORWARD, s_in, 2.0 * T)


class TestTraceBranches:
    def test_points_lie_on_the_curve(self, fig2a_params):
        t_top = t_max_theor(fig2a_params)
        points = trace_branches(fig2a_params, Direction.FORWARD, np.logspace(-2, math.log10(t_top), 40))
        assert points
        for point in points:
            assert point.p_in == pytest.approx(power_of_flux(point.s_in, fig2a_params.omega_d))
            assert relative_residual(fig2a_params, Direction.FORWARD, point.s_in, point.T) < 1e-9
            assert point.verdict in (Verdict.STABLE, Verdict.UNSTABLE, Verdict.MARGINAL)

    def test_both_signs_below_the_peak(self, fig2a_params):
        points = trace_branches(fig2a_params, Direction.FORWARD, [10.0])
        assert {point.sign for point in points} == {BranchSign.PLUS, BranchSign.MINUS}

    def test_nothing_above_the_peak(self, fig2a_params):
        assert trace_branches(fig2a_params, Direction.FORWARD, [2.0 * t_max_theor(fig2a_params)]) == []
