import warnings

import numpy as np
import pytest

import fanochain as fc
from fanochain.driven import _validate_drive
from fanochain.lattice import _validate


def _coarse_max(spec, t0, t1):
    t = np.linspace(t0, t1, 4097)
    return float(np.max(np.abs(fc.eval_coupling(spec, t))))


@pytest.mark.parametrize("name", fc.PRESET_NAMES)
def test_every_preset_resolves_to_a_valid_config(name):
    config = fc.build_config(name)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", fc.AccuracyWarning)
        if isinstance(config, fc.DriveConfig):
            base = config.base
            amp = config.omega_drive * (
                config.A0 + _coarse_max(config.delta_a, base.t_start,
                                        base.t_end))
            _validate_drive(config, abs(base.omega_a) + amp)
            _validate(base, 1.0)
        else:
            _validate(config, _coarse_max(config.coupling, config.t_start,
                                          config.t_end))


def test_unknown_preset_name_rejected():
    with pytest.raises(fc.ConfigurationError, match="unknown preset"):
        fc.build_config("figure_9000")


def test_override_plumbing_reaches_driven_base():
    from fanochain.presets import apply_overrides
    config = fc.build_config("fig5")
    out = apply_overrides(config, {"dt": 5e-5, "snapshot_stride": 100,
                                   "A0": 2.40})
    assert out.base.dt == 5e-5
    assert out.base.snapshot_stride == 100
    assert out.A0 == 2.40
    lat = apply_overrides(fc.build_config("fig3"), {"chain_length": 600})
    assert lat.chain_length == 600
