from __future__ import annotations

import dataclasses

import pytest

from unidirectional_amplifier.core import BranchSign, Direction, s_in_of_T, t_max_theor
from unidirectional_amplifier.presets import build_preset


@pytest.fixture()
def make_params():
    """Factory: the J = J0 parameter set with any fields replaced (values in Hz)."""
    base = build_preset("fig2b").config.params

    def _factory(**overrides_hz):
        return dataclasses.replace(base, **overrides_hz).system()

    return _factory


@pytest.fixture()
def fig2a_params():
    return build_preset("fig2a").config.system_params()


@pytest.fixture()
def fig2b_params():
    return build_preset("fig2b").config.system_params()


@pytest.fixture()
def decoupled_params(make_params):
    """No coupling, no optomechanics, no gain: two independent passive cavities."""
    return make_params(J=0.0, g=0.0, kappa_eff=None, gain=0.0)


@pytest.fixture()
def fig2a_lower_flux(fig2a_params):
    """Input flux at which the upper forward branch reaches lambda / kappa^2."""
    return s_in_of_T(fig2a_params, Direction.FORWARD, t_max_theor(fig2a_params), BranchSign.PLUS)
