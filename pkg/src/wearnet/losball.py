"""Equivalent LOS-ball reduction of the blockage process.

Averaging the LOS indicator over a PPP of interferers with density lambda
on a disk of radius r_net gives the mean number of unblocked interferers

    N_LOS = 2 pi lambda int_0^r_net exp(-lambda (r W + pi W^2/4)) r dr
          = (2 pi exp(-lambda pi W^2/4) / (W^2 lambda)) * f(lambda W r_net),

with f(x) = 1 - exp(-x)(1 + x).  Matching that count with an unblocked
disk of equal intensity defines the LOS ball radius

    R_LOS = sqrt(N_LOS / (lambda pi)),

which tends to r_net as lambda -> 0 and, for r_net -> infinity, to the
closed form sqrt(2) exp(-lambda pi W^2 / 8) / (lambda W).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def _one_minus_exp_linear(x):
    """f(x) = 1 - exp(-x)(1 + x), series-guarded near zero.

    The direct form loses all significant digits for small x (f ~ x^2/2
    while both terms are ~1), so below 1e-3 the Taylor series
    x^2/2 - x^3/3 + x^4/8 - x^5/30 is used; its truncation error there is
    below 1e-14 relative.
    """
    if x < 0.0:
        raise ValueError(f"argument must be >= 0, got {x}")
    if x < 1e-3:
        return x * x * (1.0 / 2.0 + x * (-1.0 / 3.0 + x * (1.0 / 8.0 - x / 30.0)))
    return -math.expm1(-x) - x * math.exp(-x)


def mean_los_interferers(density, W, r_net):
    """Mean number of LOS interferers on the disk of radius r_net.

    Closed form of 2 pi lambda int_0^r_net (1 - p_b(r)) r dr; exact for any
    density >= 0 (zero density gives zero).
    """
    if density == 0.0:
        return 0.0
    x = density * W * r_net
    front = 2.0 * math.pi * math.exp(-density * math.pi * W * W / 4.0) / (W * W * density)
    return front * _one_minus_exp_linear(x)


def los_ball_radius(density, W, r_net):
    """Radius of the unblocked disk holding the same mean interferer count.

    sqrt(mean_los_interferers / (lambda pi)), evaluated in a form that stays
    finite as density -> 0, where the ball fills the whole network disk.
    """
    if density == 0.0:
        return float(r_net)
    x = density * W * r_net
    ratio = (2.0 * math.exp(-density * math.pi * W * W / 4.0)
             / (W * W * density * density)) * _one_minus_exp_linear(x)
    return math.sqrt(ratio)


def los_ball_radius_limit(density, W):
    """Large-network limit of the LOS ball radius,
    sqrt(2) exp(-lambda pi W^2 / 8) / (lambda W).  Infinite at zero density."""
    if density == 0.0:
        return math.inf
    return math.sqrt(2.0) * math.exp(-density * math.pi * W * W / 8.0) / (density * W)


@dataclass(frozen=True)
class LosBallSummary:
    """LOS-ball reduction of one (density, W, r_net) point.

    mean_los_count  mean number of unblocked interferers in the network disk
    r_los           equivalent LOS ball radius (m)
    r_los_limit     r_net -> infinity limit of the radius (m)
    """

    density: float
    blockage_diameter: float
    net_radius: float
    mean_los_count: float
    r_los: float
    r_los_limit: float


def los_ball_summary(density, W, r_net):
    """Evaluate all LOS-ball quantities at one parameter point."""
    return LosBallSummary(
        density=density,
        blockage_diameter=W,
        net_radius=r_net,
        mean_los_count=mean_los_interferers(density, W, r_net),
        r_los=los_ball_radius(density, W, r_net),
        r_los_limit=los_ball_radius_limit(density, W),
    )
