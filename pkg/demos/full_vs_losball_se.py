"""Spectral-efficiency distribution: full blockage field vs LOS ball.

The full simulator samples interferers and an independent blocker field
and classifies every interferer link geometrically; the reduced one keeps
only a deterministic LOS ball with everything inside unblocked, plus the
mean power of the blocked remainder folded into the noise.  Their
spectral-efficiency CDFs agree to a few percent, which is the whole case
for doing analysis on the reduced model.

Run:  python3 demos/full_vs_losball_se.py   (about half a minute)
"""

import os

import numpy as np

from wearnet import analytic, mcsim, model
from wearnet.experiments import figure_config_text

OUT_DIR = "demo_out"
N_TRIALS = 20000
SEED = 2028
T_GRID = np.arange(0.0, 12.01, 0.25)   # bits/s/Hz

FILLS = {"alpha_L": "3.2", "alpha_N": "3.4", "R0": "0.25", "noise_power": "1.0"}


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    values = model.parse_key_values(figure_config_text("fig6"))
    values.update(FILLS)
    cfg = model.config_from_keys(values)

    full = mcsim.simulate_se_ccdf(mcsim.FULL, cfg, N_TRIALS, T_GRID, SEED)
    ball = mcsim.simulate_se_ccdf(mcsim.LOSBALL, cfg, N_TRIALS, T_GRID, SEED)
    params = analytic.coverage_params(cfg)
    cdf_a = 1.0 - np.asarray(analytic.spectral_efficiency_ccdf(T_GRID, params))

    sup = float(np.max(np.abs(full.cdf - ball.cdf)))
    print(f"lambda = {cfg.density}, p_t = {cfg.tx_probability}, "
          f"{N_TRIALS} trials per mode")
    print(f"{'eta':>6} {'full':>8} {'ball':>8} {'analytic':>9}")
    for i in range(0, T_GRID.size, 8):
        print(f"{T_GRID[i]:6.1f} {full.cdf[i]:8.4f} {ball.cdf[i]:8.4f} "
              f"{cdf_a[i]:9.4f}")
    print(f"\nsup |full - ball| = {sup:.4f}")

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib not available; skipping the figure")
        return
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(T_GRID, full.cdf, label="full blockage field")
    ax.plot(T_GRID, ball.cdf, "--", label="LOS-ball reduction")
    ax.plot(T_GRID, cdf_a, ":", label="analytic (lower bound on CDF)")
    ax.set_xlabel(r"spectral efficiency $\eta$ (bits/s/Hz)")
    ax.set_ylabel(r"$P(\eta \leq t)$")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(OUT_DIR, "se_cdf_full_vs_ball.png")
    fig.savefig(path, dpi=150)
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
