"""Probabilistic line-of-sight air-to-ground channel.

Pathloss blends LoS and NLoS attenuation by an elevation-dependent LoS
probability. Elevation uses the arcsine of height over horizontal distance
with the argument clamped to [0, 1]; the clamp keeps the formula total when
the vertical offset exceeds the horizontal distance (a straight-down link
reads as 90 degrees).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .beam import BeamSnapshot, gain_toward
from .scenario import RadioParams

__all__ = [
    "LinkGeometry",
    "link_geometry",
    "los_probability",
    "channel_gain",
    "received_power",
    "rate",
    "interfered_sinr",
]


@dataclass(frozen=True)
class LinkGeometry:
    """Distances and elevation between the array reference point and a BS."""

    d3_m: float
    d2_m: float
    h_m: float
    elevation_deg: float


def link_geometry(vaa_ref_point, bs) -> LinkGeometry:
    """Geometry of the link from an aerial reference point down to a BS."""
    dx = vaa_ref_point[0] - bs[0]
    dy = vaa_ref_point[1] - bs[1]
    h = vaa_ref_point[2] - bs[2]
    if h <= 0.0:
        raise ValueError("the array reference point must sit above the BS")
    d2 = math.hypot(dx, dy)
    d3 = math.hypot(d2, h)
    ratio = 1.0 if d2 == 0.0 else min(max(h / d2, 0.0), 1.0)
    elevation = math.degrees(math.asin(ratio))
    return LinkGeometry(d3_m=d3, d2_m=d2, h_m=h, elevation_deg=elevation)


def los_probability(elevation_deg: float, k1: float, k2: float) -> float:
    """LoS probability at the given elevation angle in degrees."""
    return 1.0 / (1.0 + k1 * math.exp(-k2 * (elevation_deg - k1)))


def channel_gain(link: LinkGeometry, radio: RadioParams) -> float:
    """Linear power gain of the probabilistic-LoS link."""
    if link.d3_m <= 0.0:
        raise ValueError("link distance must be positive")
    p_los = los_probability(link.elevation_deg, radio.k1, radio.k2)
    attenuation = radio.xi_los * p_los + radio.xi_nlos * (1.0 - p_los)
    return 1.0 / (radio.pathloss_const * link.d3_m**radio.pathloss_exp * attenuation)


def received_power(
    snap: BeamSnapshot,
    bs_direction: tuple[float, float],
    link: LinkGeometry,
    radio: RadioParams,
    grid: tuple[int, int],
) -> float:
    """Power in watts arriving at a BS from the transmitting array."""
    theta, phi = bs_direction
    g = gain_toward(snap, theta, phi, radio.array_efficiency, grid)
    return radio.tx_power_w * g * channel_gain(link, radio)


def rate(p_rx_w: float, radio: RadioParams) -> float:
    """Shannon rate in bit/s for the given received power."""
    return radio.bandwidth_hz * math.log2(1.0 + p_rx_w / radio.noise_power_w)


def interfered_sinr(p_interference_w: float, radio: RadioParams) -> float:
    """Linear SINR at a BS whose ground-user uplink the array leaks into."""
    return radio.gu_rx_power_w / (radio.noise_power_w + p_interference_w)
