"""Parameter handling, unit conversion, and antenna gain combinatorics."""

import math

import numpy as np
import pytest

from conftest import BASE_KEYS, make_config
from wearnet import model


def test_db_round_trip():
    x = np.linspace(-40.0, 40.0, 161)
    back = model.linear_to_db(model.db_to_linear(x))
    assert np.max(np.abs(back - x)) < 1e-9


def test_db_anchors():
    # 10**(6/10) and 10**(-0.88/10) evaluated independently of the module
    assert abs(model.db_to_linear(6.0) - 3.9810717055349722) < 1e-14
    assert abs(model.db_to_linear(-0.88) - 0.8165823713585925) < 1e-14
    assert model.db_to_linear(0.0) == 1.0


def test_main_lobe_fraction():
    pat = model.SectorPattern(main_gain=4.0, side_gain=0.8, beamwidth=math.radians(50.0))
    # 50/360 as an exact fraction
    assert abs(pat.main_lobe_fraction - 0.1388888888888889) < 1e-15


def test_gain_pair_probabilities():
    cfg = make_config()
    table = model.gain_pairs(cfg.tx_pattern, cfg.rx_pattern)
    # both-main-lobe probability (50/360)^2 = 25/1296, computed via Fraction
    assert abs(table.q[0] - 0.019290123456790122) < 1e-15
    assert np.all(table.q >= 0.0)
    assert abs(math.fsum(table.q) - 1.0) < 1e-12


def test_gain_pair_mean():
    cfg = make_config()
    table = model.gain_pairs(cfg.tx_pattern, cfg.rx_pattern)
    # fsum of q_i G_i with the dB anchors above: 1.577774093537358
    assert abs(table.mean_gain() - 1.577774093537358) < 1e-12
    # the mean sits between the worst and best joint gains
    assert table.G[3] < table.mean_gain() < table.G[0]


def test_gain_pair_swap_symmetry():
    # swapping the transmit and receive patterns permutes the mixed
    # main/side entries (indices 1 and 2) and leaves the pure ones alone
    tx = model.SectorPattern(main_gain=4.0, side_gain=0.5, beamwidth=math.radians(30.0))
    rx = model.SectorPattern(main_gain=2.0, side_gain=0.25, beamwidth=math.radians(70.0))
    fwd = model.gain_pairs(tx, rx)
    rev = model.gain_pairs(rx, tx)
    perm = [0, 2, 1, 3]
    assert np.allclose(fwd.q, rev.q[perm], rtol=0.0, atol=1e-15)
    assert np.allclose(fwd.G, rev.G[perm], rtol=0.0, atol=1e-15)
    assert abs(fwd.mean_gain() - rev.mean_gain()) < 1e-15


def test_config_round_trip():
    cfg = make_config()
    again = model.config_from_keys(model.config_to_key_values(cfg))
    assert model.config_hash(again) == model.config_hash(cfg)
    assert again == cfg


def test_config_hash_behavior():
    cfg = make_config()
    h = model.config_hash(cfg)
    assert len(h) == 12 and all(c in "0123456789abcdef" for c in h)
    assert model.config_hash(make_config()) == h
    assert model.config_hash(make_config(p_t=0.5)) != h


def test_optional_keys_default():
    values = dict(BASE_KEYS)
    del values["m_nlos"]
    del values["power_ratio"]
    cfg = model.config_from_keys(values)
    assert cfg.m_nlos == 1
    assert cfg.power_ratio == 1.0


def test_with_overrides():
    cfg = make_config()
    bumped = model.with_overrides(cfg, density=5.0)
    assert bumped.density == 5.0
    assert cfg.density == 3.0  # original untouched
    with pytest.raises(model.ConfigError) as err:
        model.with_overrides(cfg, alpha_nlos=1.5)
    assert err.value.violation == "AlphaNlosTooSmall"


def _expect_violation(name, **overrides):
    with pytest.raises(model.ConfigError) as err:
        make_config(**overrides)
    assert err.value.violation == name, (name, err.value.violation)


def test_validation_violations():
    _expect_violation("DensityNegative", **{"lambda": -1.0})
    _expect_violation("BlockageDiameterNotPositive", W=0.0)
    _expect_violation("NetRadiusTooSmall", r_net=0.2)  # below the 0.3 m blocker
    _expect_violation("SideGainNotPositive", gt_dB="-inf")
    _expect_violation("MainGainBelowSideGain", Gr_dB=-3.0, gr_dB=0.0)
    _expect_violation("BeamwidthOutOfRange", theta_t_deg=361.0)
    _expect_violation("TxProbabilityOutOfRange", p_t=1.5)
    _expect_violation("AlphaLosNotPositive", alpha_L=0.0)
    _expect_violation("AlphaNlosTooSmall", alpha_N=2.0)  # boundary excluded
    _expect_violation("NakagamiOrderInvalid", m=0)
    _expect_violation("NakagamiOrderInvalid", m=2.5)
    _expect_violation("NakagamiOrderTooLarge", m=model.MAX_NAKAGAMI_M + 1)
    _expect_violation("RefDistanceNotPositive", R0=0.0)
    _expect_violation("NoisePowerNegative", noise_power=-1.0)
    _expect_violation("PowerRatioNotPositive", power_ratio=0.0)


def test_density_zero_is_valid():
    cfg = make_config(**{"lambda": 0.0})
    assert cfg.density == 0.0


def test_parse_config_text():
    text = "\n".join(f"{k} = {v}" for k, v in BASE_KEYS.items())
    text = "# scenario file\n\n" + text + "   # trailing comment on last line"
    cfg = model.parse_config_text(text)
    assert cfg == make_config()


def test_parse_errors():
    good = "\n".join(f"{k} = {v}" for k, v in BASE_KEYS.items())

    with pytest.raises(model.ConfigError) as err:
        model.parse_config_text(good + "\nWIDTH 0.3")
    assert err.value.violation == "MalformedConfigLine"

    with pytest.raises(model.ConfigError) as err:
        model.parse_config_text(good + "\nW = 0.5")
    assert err.value.violation == "DuplicateConfigKey"

    with pytest.raises(model.ConfigError) as err:
        model.parse_config_text(good + "\nbogus = 1")
    assert err.value.violation == "UnknownConfigKey"

    with pytest.raises(model.ConfigError) as err:
        model.parse_config_text(good.replace("p_t = 1.0\n", ""))
    assert err.value.violation == "MissingConfigKey"

    with pytest.raises(model.ConfigError) as err:
        model.parse_config_text(good.replace("alpha_L = 3.2", "alpha_L = REQUIRED"))
    assert err.value.violation == "MissingRequiredValue"

    with pytest.raises(model.ConfigError) as err:
        model.parse_config_text(good.replace("p_t = 1.0", "p_t = one"))
    assert err.value.violation == "InvalidNumber"


def test_load_config(tmp_path):
    path = tmp_path / "scenario.cfg"
    path.write_text("\n".join(f"{k} = {v}" for k, v in BASE_KEYS.items()))
    assert model.load_config(path) == make_config()
