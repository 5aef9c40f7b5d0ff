"""Network model parameters and antenna gain combinatorics.

All quantities are stored internally in linear units: power gains are
dimensionless linear ratios (not dB), beamwidths are radians, distances
are meters, densities are users per square meter.  dB and degrees appear
only at the configuration-file boundary.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, replace

import numpy as np

TWO_PI = 2.0 * math.pi


class ConfigError(ValueError):
    """A model parameter or configuration file violates an invariant.

    ``violation`` is a stable machine-readable name (e.g. ``AlphaNlosTooSmall``),
    one per failed invariant, so callers can match on it without parsing text.
    """

    def __init__(self, violation, message):
        super().__init__(f"{violation}: {message}")
        self.violation = violation


def db_to_linear(x_db):
    """Convert a power quantity from dB to linear scale."""
    return 10.0 ** (np.asarray(x_db, dtype=float) / 10.0) if np.ndim(x_db) else 10.0 ** (x_db / 10.0)


def linear_to_db(x):
    """Convert a linear power quantity to dB."""
    return 10.0 * np.log10(x)


@dataclass(frozen=True)
class SectorPattern:
    """Sectorized antenna pattern: constant main-lobe gain over the beamwidth,
    constant side-lobe gain elsewhere.

    main_gain, side_gain are linear power gains; beamwidth is in radians.
    """

    main_gain: float
    side_gain: float
    beamwidth: float

    @property
    def main_lobe_fraction(self):
        """Probability that a uniformly random direction falls in the main lobe."""
        return self.beamwidth / TWO_PI


@dataclass(frozen=True)
class NetworkConfig:
    """All scalar parameters of the wearable-network model.

    density            interferer/blockage density (users per m^2), >= 0
    blockage_diameter  diameter W of the body-blockage disks (m)
    net_radius         radius of the circular network region (m)
    tx_pattern         interferer transmit antenna (SectorPattern)
    rx_pattern         reference receiver antenna (SectorPattern)
    tx_probability     probability that an interferer transmits in a slot
    alpha_los          path-loss exponent on unblocked links
    alpha_nlos         path-loss exponent on blocked links (> 2)
    m_los              integer Nakagami shape for unblocked links
    m_nlos             integer Nakagami shape for blocked links (simulation only)
    ref_distance       distance of the reference transmitter (m)
    noise_power        thermal noise, same linear normalization as received powers
    power_ratio        interferer-to-reference transmit power ratio (1 = equal power)
    """

    density: float
    blockage_diameter: float
    net_radius: float
    tx_pattern: SectorPattern
    rx_pattern: SectorPattern
    tx_probability: float
    alpha_los: float
    alpha_nlos: float
    m_los: int
    m_nlos: int
    ref_distance: float
    noise_power: float
    power_ratio: float = 1.0


@dataclass(frozen=True)
class GainPairTable:
    """Joint transmit/receive gain combinations for a random interferer.

    q[i] is the probability of combination i, G[i] the corresponding linear
    gain product, ordered (Gt*Gr, gt*Gr, Gt*gr, gt*gr).  sum(q) == 1.
    """

    q: np.ndarray
    G: np.ndarray

    def mean_gain(self):
        """q . G, the average joint antenna gain of a random interferer."""
        return float(np.dot(self.q, self.G))


# Practical ceiling for the Nakagami shape: the alternating binomial sum in the
# coverage expression loses ~1 bit of precision per unit of m at small
# thresholds (terms grow like C(m, m/2)), so results beyond m = 64 would be
# numerically meaningless.
MAX_NAKAGAMI_M = 64


def _check_pattern(pat, side):
    if not (pat.side_gain > 0.0):
        raise ConfigError("SideGainNotPositive",
                          f"{side} side-lobe gain must be > 0, got {pat.side_gain}")
    if pat.main_gain < pat.side_gain:
        raise ConfigError("MainGainBelowSideGain",
                          f"{side} main-lobe gain {pat.main_gain} is below side-lobe gain {pat.side_gain}")
    if not (0.0 < pat.beamwidth <= TWO_PI):
        raise ConfigError("BeamwidthOutOfRange",
                          f"{side} beamwidth must lie in (0, 2*pi], got {pat.beamwidth}")


def validate(config):
    """Check every model invariant; return ``config`` unchanged if all hold.

    Raises ConfigError with a named violation for the first failed invariant.
    density = 0 is accepted and means an empty network (no interferers and
    no blockages), which is a well-defined degenerate case.
    """
    if not (config.density >= 0.0) or not math.isfinite(config.density):
        raise ConfigError("DensityNegative", f"density must be >= 0, got {config.density}")
    if not (config.blockage_diameter > 0.0):
        raise ConfigError("BlockageDiameterNotPositive",
                          f"blockage diameter must be > 0, got {config.blockage_diameter}")
    if not (config.net_radius > config.blockage_diameter):
        raise ConfigError("NetRadiusTooSmall",
                          f"net_radius must exceed the blockage diameter, got "
                          f"{config.net_radius} <= {config.blockage_diameter}")
    _check_pattern(config.tx_pattern, "transmit")
    _check_pattern(config.rx_pattern, "receive")
    if not (0.0 <= config.tx_probability <= 1.0):
        raise ConfigError("TxProbabilityOutOfRange",
                          f"tx_probability must lie in [0, 1], got {config.tx_probability}")
    if not (config.alpha_los > 0.0):
        raise ConfigError("AlphaLosNotPositive",
                          f"alpha_los must be > 0, got {config.alpha_los}")
    if not (config.alpha_nlos > 2.0):
        raise ConfigError("AlphaNlosTooSmall",
                          f"alpha_nlos must exceed 2 (the mean weak-interferer power "
                          f"diverges otherwise), got {config.alpha_nlos}")
    for name, value in (("m", config.m_los), ("m_nlos", config.m_nlos)):
        if not isinstance(value, (int, np.integer)) or value < 1:
            raise ConfigError("NakagamiOrderInvalid",
                              f"{name} must be a positive integer, got {value!r}")
        if value > MAX_NAKAGAMI_M:
            raise ConfigError("NakagamiOrderTooLarge",
                              f"{name} = {value} exceeds the numerically safe maximum "
                              f"{MAX_NAKAGAMI_M}")
    if not (config.ref_distance > 0.0):
        raise ConfigError("RefDistanceNotPositive",
                          f"ref_distance must be > 0, got {config.ref_distance}")
    if not (config.noise_power >= 0.0):
        raise ConfigError("NoisePowerNegative",
                          f"noise_power must be >= 0, got {config.noise_power}")
    if not (config.power_ratio > 0.0):
        raise ConfigError("PowerRatioNotPositive",
                          f"power_ratio must be > 0, got {config.power_ratio}")
    return config


def gain_pairs(tx, rx):
    """Joint gain-combination table for independent, uniformly oriented antennas.

    The transmit main lobe points at the receiver with probability
    theta_t/2pi and the interferer falls in the receive main lobe with
    probability theta_r/2pi, independently; the four joint outcomes give
    the probability vector q and gain-product vector G.
    """
    at = tx.main_lobe_fraction
    ar = rx.main_lobe_fraction
    q = np.array([at * ar, (1.0 - at) * ar, at * (1.0 - ar), (1.0 - at) * (1.0 - ar)])
    G = np.array([tx.main_gain * rx.main_gain,
                  tx.side_gain * rx.main_gain,
                  tx.main_gain * rx.side_gain,
                  tx.side_gain * rx.side_gain])
    assert abs(q.sum() - 1.0) < 4.0 * np.finfo(float).eps
    return GainPairTable(q=q, G=G)


# --- configuration files -------------------------------------------------
#
# Flat "key = value" text files.  Angles are given in degrees and gains in
# dB in the file; conversion to radians/linear happens on load.  m_nlos and
# power_ratio are optional (defaults below); every other key is mandatory
# and never defaulted.

CONFIG_KEYS = ("lambda", "W", "r_net", "Gt_dB", "gt_dB", "theta_t_deg",
               "Gr_dB", "gr_dB", "theta_r_deg", "p_t", "alpha_L", "alpha_N",
               "m", "m_nlos", "R0", "noise_power", "power_ratio")

_OPTIONAL_KEYS = {"m_nlos": 1, "power_ratio": 1.0}
_INT_KEYS = {"m", "m_nlos"}

REQUIRED_PLACEHOLDER = "REQUIRED"


def config_from_keys(values):
    """Build a validated NetworkConfig from a dict of external-unit values.

    ``values`` maps the configuration-file keys (CONFIG_KEYS) to numbers in
    file units (dB gains, degree beamwidths).  Unknown keys are rejected.
    """
    unknown = set(values) - set(CONFIG_KEYS)
    if unknown:
        raise ConfigError("UnknownConfigKey",
                          f"unknown configuration key(s): {', '.join(sorted(unknown))}")
    missing = set(CONFIG_KEYS) - set(values) - set(_OPTIONAL_KEYS)
    if missing:
        raise ConfigError("MissingConfigKey",
                          f"missing configuration key(s): {', '.join(sorted(missing))}")
    vals = dict(_OPTIONAL_KEYS)
    vals.update(values)

    def num(key):
        v = vals[key]
        if isinstance(v, str):
            if v.strip() == REQUIRED_PLACEHOLDER:
                raise ConfigError("MissingRequiredValue",
                                  f"key '{key}' is marked {REQUIRED_PLACEHOLDER}; "
                                  f"set a value before use")
            try:
                v = float(v)
            except ValueError:
                raise ConfigError("InvalidNumber",
                                  f"value for '{key}' is not a number: {v!r}") from None
        if key in _INT_KEYS:
            if float(v) != int(v):
                raise ConfigError("NakagamiOrderInvalid",
                                  f"{key} must be an integer, got {v}")
            return int(v)
        return float(v)

    config = NetworkConfig(
        density=num("lambda"),
        blockage_diameter=num("W"),
        net_radius=num("r_net"),
        tx_pattern=SectorPattern(main_gain=db_to_linear(num("Gt_dB")),
                                 side_gain=db_to_linear(num("gt_dB")),
                                 beamwidth=math.radians(num("theta_t_deg"))),
        rx_pattern=SectorPattern(main_gain=db_to_linear(num("Gr_dB")),
                                 side_gain=db_to_linear(num("gr_dB")),
                                 beamwidth=math.radians(num("theta_r_deg"))),
        tx_probability=num("p_t"),
        alpha_los=num("alpha_L"),
        alpha_nlos=num("alpha_N"),
        m_los=num("m"),
        m_nlos=num("m_nlos"),
        ref_distance=num("R0"),
        noise_power=num("noise_power"),
        power_ratio=num("power_ratio"),
    )
    return validate(config)


def parse_key_values(text):
    """Raw 'key = value' pairs; '#' starts a comment, blank lines ignored."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("MalformedConfigLine",
                              f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in values:
            raise ConfigError("DuplicateConfigKey", f"line {lineno}: key '{key}' repeated")
        values[key] = value
    return values


def parse_config_text(text):
    """Parse and validate a configuration from 'key = value' text."""
    return config_from_keys(parse_key_values(text))


def load_config(path):
    """Read and validate a configuration file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def config_to_key_values(config):
    """External-unit key/value pairs for ``config``, in CONFIG_KEYS order."""
    return {
        "lambda": config.density,
        "W": config.blockage_diameter,
        "r_net": config.net_radius,
        "Gt_dB": linear_to_db(config.tx_pattern.main_gain),
        "gt_dB": linear_to_db(config.tx_pattern.side_gain),
        "theta_t_deg": math.degrees(config.tx_pattern.beamwidth),
        "Gr_dB": linear_to_db(config.rx_pattern.main_gain),
        "gr_dB": linear_to_db(config.rx_pattern.side_gain),
        "theta_r_deg": math.degrees(config.rx_pattern.beamwidth),
        "p_t": config.tx_probability,
        "alpha_L": config.alpha_los,
        "alpha_N": config.alpha_nlos,
        "m": config.m_los,
        "m_nlos": config.m_nlos,
        "R0": config.ref_distance,
        "noise_power": config.noise_power,
        "power_ratio": config.power_ratio,
    }


def config_hash(config):
    """Short stable hash of the internal-unit parameters, for artifact headers."""
    parts = [f"density={config.density!r}",
             f"blockage_diameter={config.blockage_diameter!r}",
             f"net_radius={config.net_radius!r}",
             f"tx={config.tx_pattern.main_gain!r},{config.tx_pattern.side_gain!r},{config.tx_pattern.beamwidth!r}",
             f"rx={config.rx_pattern.main_gain!r},{config.rx_pattern.side_gain!r},{config.rx_pattern.beamwidth!r}",
             f"tx_probability={config.tx_probability!r}",
             f"alpha_los={config.alpha_los!r}",
             f"alpha_nlos={config.alpha_nlos!r}",
             f"m_los={config.m_los!r}",
             f"m_nlos={config.m_nlos!r}",
             f"ref_distance={config.ref_distance!r}",
             f"noise_power={config.noise_power!r}",
             f"power_ratio={config.power_ratio!r}"]
    digest = hashlib.sha256("\n".join(parts).encode("ascii")).hexdigest()
    return digest[:12]


def with_overrides(config, **changes):
    """Return a validated copy of ``config`` with internal-unit fields replaced."""
    return validate(replace(config, **changes))
