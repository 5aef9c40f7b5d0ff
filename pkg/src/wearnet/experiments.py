"""Experiment harness: sweep plans, CSV artifacts, comparison summaries.

Each plan kind produces the dataset behind one style of result figure:
LOS-ball radius versus network radius (losball_sweep), mean LOS interferer
count versus density (mean_count_sweep), analytic-vs-simulated SINR CCDF
(coverage_compare), full-vs-reduced-model spectral-efficiency CDF
(se_compare), and ergodic spectral efficiency versus Nakagami order
(nakagami_sweep).

Artifacts are plain CSV with '.' decimals; floats are written with repr so
reruns with identical inputs are byte-identical.  Every CSV starts with a
comment line carrying the config hash and master seed.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import analytic, losball, mcsim
from .model import (CONFIG_KEYS, ConfigError, config_hash, validate,
                    with_overrides)

KINDS = ("losball_sweep", "mean_count_sweep", "coverage_compare",
         "se_compare", "nakagami_sweep")


class IoError(Exception):
    """An artifact could not be written (wraps the OS error)."""


class ToleranceExceeded(Exception):
    """A comparison missed its tolerance; carries (measure, tolerance)."""

    def __init__(self, message, measure, tolerance):
        super().__init__(message)
        self.measure = measure
        self.tolerance = tolerance


class UnknownFigure(ValueError):
    """figure_id outside the known set."""


@dataclass(frozen=True)
class ExperimentPlan:
    """One reproducible experiment.

    kind            one of KINDS
    config          base NetworkConfig (validated on use)
    grid            kind-specific sweep values: net_radius grid
                    (losball_sweep), densities (mean_count_sweep), SINR
                    thresholds in dB (coverage_compare), spectral-efficiency
                    thresholds in bits/s/Hz (se_compare), Nakagami orders
                    (nakagami_sweep)
    out_dir         directory for artifacts
    seed            master seed for all simulation in the plan
    trials          Monte Carlo trials per estimate
    tolerance       comparison gate: sup-norm bound for coverage_compare /
                    se_compare, standard-error multiple for the others
    density_family  extra density values (losball_sweep rows per density)
    workers         worker processes for trial-parallel simulation
    """

    kind: str
    config: object
    grid: tuple
    out_dir: str
    seed: int = 0
    trials: int = 10000
    tolerance: float | None = None
    density_family: tuple = field(default_factory=tuple)
    workers: int = 1


def validate_plan(plan):
    if plan.kind not in KINDS:
        raise ConfigError("UnknownPlanKind",
                          f"kind must be one of {KINDS}, got {plan.kind!r}")
    if len(plan.grid) == 0:
        raise ConfigError("EmptySweepGrid", "plan.grid must be nonempty")
    if plan.kind == "nakagami_sweep":
        for m in plan.grid:
            if int(m) != m or m < 1:
                raise ConfigError("NakagamiOrderInvalid",
                                  f"nakagami_sweep grid must hold integers >= 1, got {m}")
    if plan.trials < 1:
        raise ConfigError("TrialCountInvalid", "trials must be >= 1")
    validate(plan.config)
    return plan


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("no boolean CSV fields")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def write_csv(path, columns, rows, config, seed):
    """CSV with a '# config_hash=... seed=...' comment line, then header."""
    try:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(f"# config_hash={config_hash(config)} seed={seed}\n")
            fh.write(",".join(columns) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path


def _write_summary(out_dir, lines):
    path = os.path.join(out_dir, "summary.txt")
    try:
        os.makedirs(out_dir, exist_ok=True)
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path


def db_grid_to_linear(grid_db):
    return 10.0 ** (np.asarray(grid_db, dtype=float) / 10.0)


def _run_losball_sweep(plan):
    cfg = plan.config
    densities = tuple(plan.density_family) or (cfg.density,)
    rows = []
    for lam in densities:
        for r_net in plan.grid:
            s = losball.los_ball_summary(lam, cfg.blockage_diameter, r_net)
            rows.append((lam, cfg.blockage_diameter, r_net,
                         s.mean_los_count, s.r_los, s.r_los_limit))
    path = write_csv(os.path.join(plan.out_dir, "losball.csv"),
                     ("lambda", "W", "r_net", "mean_los", "r_los", "r_los_limit"),
                     rows, cfg, plan.seed)
    summary = _write_summary(plan.out_dir,
                             [f"kind=losball_sweep rows={len(rows)} status=PASS"])
    return {"kind": plan.kind, "files": [path, summary], "status": "PASS"}


def _run_mean_count_sweep(plan):
    cfg = plan.config
    se_multiple = plan.tolerance if plan.tolerance is not None else 3.0
    rows = []
    worst = 0.0
    for lam in plan.grid:
        cfg_l = with_overrides(cfg, density=float(lam))
        analytic_mean = losball.mean_los_interferers(
            lam, cfg.blockage_diameter, cfg.net_radius)
        mc_mean, se = mcsim.estimate_mean_los_count(cfg_l, plan.trials,
                                                    plan.seed, plan.workers)
        rows.append((lam, analytic_mean, mc_mean, se))
        if se > 0.0:
            worst = max(worst, float(abs(mc_mean - analytic_mean) / se))
    path = write_csv(os.path.join(plan.out_dir, "mean_count.csv"),
                     ("lambda", "mean_los_analytic", "mean_los_mc", "stderr"),
                     rows, cfg, plan.seed)
    ok = worst <= se_multiple
    summary = _write_summary(plan.out_dir, [
        f"kind=mean_count_sweep max_z={worst!r} tolerance={se_multiple!r} "
        f"status={'PASS' if ok else 'FAIL'}"])
    if not ok:
        raise ToleranceExceeded(
            f"mean LOS count off by {worst:.2f} standard errors "
            f"(allowed {se_multiple})", worst, se_multiple)
    return {"kind": plan.kind, "files": [path, summary], "status": "PASS",
            "max_z": worst}


def _run_coverage_compare(plan):
    cfg = plan.config
    tol = plan.tolerance if plan.tolerance is not None else 0.03
    beta_db = np.asarray(plan.grid, dtype=float)
    beta = db_grid_to_linear(beta_db)
    params = analytic.coverage_params(cfg)
    ccdf_a = np.asarray(analytic.coverage_ccdf(beta, params))
    emp = mcsim.simulate_ccdf(mcsim.LOSBALL, cfg, plan.trials, beta,
                              plan.seed, plan.workers)
    sup = float(np.max(np.abs(ccdf_a - emp.ccdf)))
    bound_ok = bool(np.all(ccdf_a >= emp.ccdf - 3.0 * emp.stderr))
    rows = list(zip(beta_db, ccdf_a, emp.ccdf, emp.stderr))
    path = write_csv(os.path.join(plan.out_dir, "coverage_compare.csv"),
                     ("beta_dB", "ccdf_analytic", "ccdf_sim", "stderr"),
                     rows, cfg, plan.seed)
    ok = sup <= tol and bound_ok
    summary = _write_summary(plan.out_dir, [
        f"kind=coverage_compare sup_norm={sup!r} tolerance={tol!r} "
        f"bound_direction={'PASS' if bound_ok else 'FAIL'} "
        f"status={'PASS' if ok else 'FAIL'}"])
    if not ok:
        raise ToleranceExceeded(
            f"coverage sup-norm {sup:.4f} vs tolerance {tol} "
            f"(bound direction {'ok' if bound_ok else 'violated'})", sup, tol)
    return {"kind": plan.kind, "files": [path, summary], "status": "PASS",
            "sup_norm": sup, "bound_direction": bound_ok}


def _run_se_compare(plan):
    cfg = plan.config
    tol = plan.tolerance if plan.tolerance is not None else 0.05
    t_grid = np.asarray(plan.grid, dtype=float)
    params = analytic.coverage_params(cfg)
    cdf_a = 1.0 - np.asarray(analytic.spectral_efficiency_ccdf(t_grid, params))
    full = mcsim.simulate_se_ccdf(mcsim.FULL, cfg, plan.trials, t_grid,
                                  plan.seed, plan.workers)
    ball = mcsim.simulate_se_ccdf(mcsim.LOSBALL, cfg, plan.trials, t_grid,
                                  plan.seed, plan.workers)
    sup = float(np.max(np.abs(full.cdf - ball.cdf)))
    rows = list(zip(t_grid, full.cdf, full.stderr, ball.cdf, ball.stderr, cdf_a))
    path = write_csv(os.path.join(plan.out_dir, "se_compare.csv"),
                     ("eta_bps_hz", "cdf_full", "stderr_full", "cdf_losball",
                      "stderr_losball", "cdf_analytic"),
                     rows, cfg, plan.seed)
    ok = sup <= tol
    summary = _write_summary(plan.out_dir, [
        f"kind=se_compare sup_norm={sup!r} tolerance={tol!r} "
        f"status={'PASS' if ok else 'FAIL'}"])
    if not ok:
        raise ToleranceExceeded(
            f"spectral-efficiency CDF sup-norm {sup:.4f} vs tolerance {tol}",
            sup, tol)
    return {"kind": plan.kind, "files": [path, summary], "status": "PASS",
            "sup_norm": sup}


def _run_nakagami_sweep(plan):
    # The analytic value is a strict upper bound on the true mean for m > 1
    # (its gap grows with m), so the gate checks the trend on both curves
    # and the bound direction rather than analytic == MC.
    cfg = plan.config
    se_multiple = plan.tolerance if plan.tolerance is not None else 2.0
    rows = []
    for m in plan.grid:
        cfg_m = with_overrides(cfg, m_los=int(m))
        params = analytic.coverage_params(cfg_m)
        se_a = analytic.ergodic_spectral_efficiency(params)
        se_mc, err = mcsim.estimate_ergodic_se(mcsim.LOSBALL, cfg_m,
                                               plan.trials, plan.seed,
                                               plan.workers)
        rows.append((int(m), se_a, se_mc, err))
    path = write_csv(os.path.join(plan.out_dir, "nakagami_sweep.csv"),
                     ("m", "se_analytic", "se_mc", "stderr"),
                     rows, cfg, plan.seed)
    se_a = np.array([r[1] for r in rows])
    se_mc = np.array([r[2] for r in rows])
    err = np.array([r[3] for r in rows])
    nondecreasing = bool(np.all(np.diff(se_a) >= 0.0))
    slack = se_multiple * np.hypot(err[1:], err[:-1])
    mc_trend = bool(np.all(np.diff(se_mc) >= -slack))
    upper_bound = bool(np.all(se_a >= se_mc - se_multiple * err))
    ok = nondecreasing and mc_trend and upper_bound
    summary = _write_summary(plan.out_dir, [
        f"kind=nakagami_sweep analytic_nondecreasing={'PASS' if nondecreasing else 'FAIL'} "
        f"mc_trend={'PASS' if mc_trend else 'FAIL'} "
        f"upper_bound={'PASS' if upper_bound else 'FAIL'} "
        f"tolerance={se_multiple!r} status={'PASS' if ok else 'FAIL'}"])
    if not ok:
        raise ToleranceExceeded(
            f"nakagami sweep: analytic nondecreasing {nondecreasing}, MC "
            f"trend within slack {mc_trend}, bound direction {upper_bound}",
            float(np.min(np.diff(se_mc) + slack, initial=np.inf)), se_multiple)
    return {"kind": plan.kind, "files": [path, summary], "status": "PASS",
            "nondecreasing": nondecreasing, "mc_trend": mc_trend,
            "upper_bound": upper_bound}


_RUNNERS = {
    "losball_sweep": _run_losball_sweep,
    "mean_count_sweep": _run_mean_count_sweep,
    "coverage_compare": _run_coverage_compare,
    "se_compare": _run_se_compare,
    "nakagami_sweep": _run_nakagami_sweep,
}


def run_plan(plan):
    """Execute a validated plan; writes its artifacts, returns a summary dict.

    Raises ToleranceExceeded when a comparison gate fails (the CSV and
    summary artifacts are still written first, status FAIL).
    """
    return _RUNNERS[validate_plan(plan).kind](plan)


# --- canonical figure-style configurations --------------------------------
#
# Each setup fixes the scenario values it is defined by; the physical
# constants it leaves open (path-loss exponents, reference distance, noise
# power) are REQUIRED placeholders that loading refuses until the user sets
# them.

FIGURE_IDS = ("fig3", "fig5", "fig6", "fig7", "fig8")

_FIGURE_NOTES = {
    "fig3": "# LOS ball radius vs network radius; sweep r_net over [1, 20],\n"
            "# density family {0.5, 1, 2, 3, 5} per curve.\n",
    "fig5": "# Mean LOS interferer count vs density; sweep lambda over\n"
            "# {1, 2, 3, 4, 5}; analytic curve plus Monte Carlo estimates.\n",
    "fig6": "# Spectral-efficiency CDF, full model vs LOS-ball reduction.\n",
    "fig7": "# SINR CCDF, analytic bound vs LOS-ball simulation.\n",
    "fig8": "# Ergodic spectral efficiency vs Nakagami order; sweep m over\n"
            "# {1, 2, 4, 8, 16}.\n",
}

_FIGURE_VALUES = {
    "fig3": {"lambda": 3, "p_t": 1, "m": 1},
    "fig5": {"lambda": 3, "p_t": 1, "m": 1},
    "fig6": {"lambda": 3, "p_t": 1, "m": 1},
    "fig7": {"lambda": 3, "p_t": 0.8, "m": 3},
    "fig8": {"lambda": 2, "p_t": 1, "m": 1},
}

_FIGURE_COMMON = {
    "W": 0.3, "r_net": 10,
    "Gt_dB": 6, "gt_dB": -0.88, "theta_t_deg": 50,
    "Gr_dB": 6, "gr_dB": -0.88, "theta_r_deg": 50,
    "alpha_L": "REQUIRED", "alpha_N": "REQUIRED",
    "R0": "REQUIRED", "noise_power": "REQUIRED",
    "m_nlos": 1, "power_ratio": 1,
}


def figure_config_text(figure_id):
    """Canonical key = value text for one figure-style setup."""
    if figure_id not in FIGURE_IDS:
        raise UnknownFigure(f"figure_id must be one of {FIGURE_IDS}, "
                            f"got {figure_id!r}")
    values = dict(_FIGURE_COMMON)
    values.update(_FIGURE_VALUES[figure_id])
    lines = [_FIGURE_NOTES[figure_id]]
    for key in CONFIG_KEYS:
        lines.append(f"{key} = {values[key]}\n")
    return "".join(lines)


def emit_figure_config(figure_id, path):
    """Write the canonical config for a figure; REQUIRED fields left unset."""
    text = figure_config_text(figure_id)
    try:
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path
