"""Rotary-wing propulsion power and per-leg 3D flight energy.

A relocation between two hover formations decomposes into a horizontal
cruise phase at a fixed speed plus a signed vertical phase charged as
potential energy (descent credits energy back, as the model is written).
Formation time is set by the slowest UAV; all others hover for the
remainder, so every hover tail is nonnegative. Legs begin and end at hover,
which zeroes the kinetic-energy term.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .scenario import EnergyParams

__all__ = [
    "FlightLeg",
    "EnergyMatrix",
    "flight_leg",
    "propulsion_power",
    "max_range_speed",
    "leg_energy",
    "formation_transition",
    "energy_matrix",
]

_SPEED_SEARCH_LO = 0.1
_SPEED_SEARCH_HI = 60.0
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FlightLeg:
    """One UAV's move: horizontal distance, signed altitude change, cruise speed."""

    horizontal_dist_m: float
    alt_change_m: float
    speed_mps: float
    duration_s: float


@dataclass(frozen=True)
class EnergyMatrix:
    """Swarm relocation energy between every ordered pair of BS formations.

    ``joules[a, b]`` is the energy for the whole swarm to move from the
    formation serving BS ``a`` to the one serving BS ``b``; the diagonal is
    zero.
    """

    joules: np.ndarray

    def tour_cost(self, order) -> float:
        """Sum of matrix legs along a visiting order."""
        total = 0.0
        for a, b in zip(order[:-1], order[1:]):
            total += float(self.joules[a, b])
        return total


def flight_leg(horizontal_dist_m: float, alt_change_m: float, speed_mps: float) -> FlightLeg:
    """Build a leg; the duration is the horizontal cruise time."""
    if horizontal_dist_m < 0.0:
        raise ValueError("horizontal distance cannot be negative")
    if horizontal_dist_m > 0.0 and speed_mps <= 0.0:
        raise ValueError("a leg with horizontal motion needs a positive speed")
    duration = 0.0 if horizontal_dist_m == 0.0 else horizontal_dist_m / speed_mps
    return FlightLeg(
        horizontal_dist_m=float(horizontal_dist_m),
        alt_change_m=float(alt_change_m),
        speed_mps=float(speed_mps),
        duration_s=duration,
    )


def propulsion_power(v: float, ep: EnergyParams) -> float:
    """Level-flight propulsion power in watts at speed ``v``.

    Blade-profile, induced, and parasite terms; at v=0 this reduces to the
    hover power p1 + p2.
    """
    if v < 0.0:
        raise ValueError("speed cannot be negative")
    v2 = v * v
    profile = ep.p1_w * (1.0 + 3.0 * v2 / ep.v_tip_mps**2)
    inner = math.sqrt(1.0 + v2 * v2 / (4.0 * ep.v0_mps**4)) - v2 / (2.0 * ep.v0_mps**2)
    induced = ep.p2_w * math.sqrt(max(inner, 0.0))
    parasite = 0.5 * ep.air_density * ep.d0 * ep.s * ep.rotor_area_m2 * v2 * v
    return profile + induced + parasite


@functools.lru_cache(maxsize=16)
def max_range_speed(ep: EnergyParams) -> float:
    """Speed maximizing distance per joule, v / P(v), via golden-section search."""

    def ratio(v: float) -> float:
        return v / propulsion_power(v, ep)

    lo, hi = _SPEED_SEARCH_LO, _SPEED_SEARCH_HI
    a = hi - _GOLDEN * (hi - lo)
    b = lo + _GOLDEN * (hi - lo)
    fa, fb = ratio(a), ratio(b)
    while hi - lo > 1e-9:
        if fa < fb:
            lo, a, fa = a, b, fb
            b = lo + _GOLDEN * (hi - lo)
            fb = ratio(b)
        else:
            hi, b, fb = b, a, fa
            a = hi - _GOLDEN * (hi - lo)
            fa = ratio(a)
    return (lo + hi) / 2.0


def leg_energy(leg: FlightLeg, hover_tail_s: float, ep: EnergyParams) -> float:
    """Energy of one leg plus a hover tail, in joules.

    Cruise at the leg speed for its duration, hover for ``hover_tail_s``,
    and a signed potential term for the altitude change.
    """
    if hover_tail_s < 0.0:
        raise ValueError("hover tail cannot be negative")
    move = propulsion_power(leg.speed_mps, ep) * leg.duration_s if leg.duration_s > 0.0 else 0.0
    hover = propulsion_power(0.0, ep) * hover_tail_s
    vertical = ep.uav_mass_kg * ep.gravity_mps2 * leg.alt_change_m
    return move + hover + vertical


def formation_transition(src: np.ndarray, dst: np.ndarray, ep: EnergyParams) -> tuple[float, float]:
    """Swarm energy and duration to move between two formations.

    Every UAV cruises at the maximum-range speed; the slowest move defines
    the formation time and the others hover out the difference. Returns
    (total energy in joules, formation time in seconds).
    """
    src = np.asarray(src, dtype=float)
    dst = np.asarray(dst, dtype=float)
    if src.shape != dst.shape or src.ndim != 2 or src.shape[1] != 3:
        raise ValueError(f"formations must share one (n, 3) shape, got {src.shape} and {dst.shape}")
    v_mr = max_range_speed(ep)
    horiz = np.hypot(dst[:, 0] - src[:, 0], dst[:, 1] - src[:, 1])
    move_times = horiz / v_mr
    t_formation = float(move_times.max()) if len(move_times) else 0.0
    total = 0.0
    for d, dz, t_move in zip(horiz, dst[:, 2] - src[:, 2], move_times):
        leg = flight_leg(float(d), float(dz), v_mr)
        total += leg_energy(leg, t_formation - float(t_move), ep)
    return total, t_formation


def energy_matrix(per_bs_positions, ep: EnergyParams) -> EnergyMatrix:
    """Pairwise swarm relocation energies between all BS formations."""
    formations = [np.asarray(f, dtype=float) for f in per_bs_positions]
    shapes = {f.shape for f in formations}
    if len(shapes) != 1:
        raise ValueError(f"all formations must have the same UAV count, got shapes {sorted(shapes)}")
    n = len(formations)
    joules = np.zeros((n, n))
    for a in range(n):
        for b in range(n):
            if a != b:
                joules[a, b] = formation_transition(formations[a], formations[b], ep)[0]
    joules.setflags(write=False)
    return EnergyMatrix(joules=joules)
