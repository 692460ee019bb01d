"""Virtual-antenna-array factor and numerically integrated gain.

The fleet acts as one distributed array: each UAV contributes a phase term
set by its position and a real excitation weight in [0, 1]. The directional
power gain is the squared array factor normalized by its own integral over
the sphere,

    G(theta, phi) = 4*pi * |F(theta, phi)|^2 * eta / INT |F|^2 sin(theta) dtheta dphi,

with isotropic elements. The normalization integral uses a midpoint rule on
a uniform (theta, phi) grid, chosen over adaptive schemes for determinism;
it is computed once per snapshot and cached. All operations are pure with a
fixed summation order, so bulk sampling is reproducible bit-for-bit.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "BeamSnapshot",
    "GainField",
    "array_factor",
    "gain_toward",
    "gains_along",
    "pattern_denominator",
    "sample_gain_field",
    "write_gain_field_csv",
    "DEFAULT_GRID",
]

DEFAULT_GRID = (180, 360)

# Floor applied before converting linear gain to dBi so deep nulls stay finite.
_DB_FLOOR = 1e-30


@dataclass
class BeamSnapshot:
    """One swarm geometry and weight set, treated as immutable after creation."""

    positions: np.ndarray
    weights: np.ndarray
    wavelength_m: float
    _denominators: dict[tuple[int, int], float] = field(
        default_factory=dict, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        self.positions = np.array(self.positions, dtype=float)
        self.weights = np.array(self.weights, dtype=float)
        if self.positions.ndim != 2 or self.positions.shape[1] != 3:
            raise ValueError(f"positions must have shape (n, 3), got {self.positions.shape}")
        if self.weights.shape != (self.positions.shape[0],):
            raise ValueError("need exactly one weight per UAV position")
        if self.positions.shape[0] < 1:
            raise ValueError("a snapshot needs at least one element")
        if np.any(self.weights < 0.0) or np.any(self.weights > 1.0):
            raise ValueError("excitation weights must lie in [0, 1]")
        self.positions.setflags(write=False)
        self.weights.setflags(write=False)


@dataclass(frozen=True)
class GainField:
    """Linear gain sampled on the full (theta, phi) midpoint grid."""

    theta_rad: np.ndarray
    phi_rad: np.ndarray
    gains: np.ndarray
    total_radiated_integral: float


@functools.lru_cache(maxsize=8)
def _grid(n_theta: int, n_phi: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Midpoint nodes, unit direction vectors (3, M), and quadrature weights."""
    if n_theta < 1 or n_phi < 1:
        raise ValueError(f"grid counts must be positive, got {n_theta}x{n_phi}")
    theta = (np.arange(n_theta) + 0.5) * (math.pi / n_theta)
    phi = (np.arange(n_phi) + 0.5) * (2.0 * math.pi / n_phi)
    sin_t, cos_t = np.sin(theta), np.cos(theta)
    dirs = np.empty((3, n_theta * n_phi))
    dirs[0] = np.outer(sin_t, np.cos(phi)).ravel()
    dirs[1] = np.outer(sin_t, np.sin(phi)).ravel()
    dirs[2] = np.repeat(cos_t, n_phi)
    cell = (math.pi / n_theta) * (2.0 * math.pi / n_phi)
    quad_w = np.repeat(sin_t, n_phi) * cell
    for arr in (theta, phi, dirs, quad_w):
        arr.setflags(write=False)
    return theta, phi, dirs, quad_w


def _af_along(snap: BeamSnapshot, dirs: np.ndarray) -> np.ndarray:
    """Complex array factor along unit direction columns of ``dirs``."""
    k = 2.0 * math.pi / snap.wavelength_m
    phases = k * (snap.positions @ dirs)
    return snap.weights @ np.exp(1j * phases)


def array_factor(snap: BeamSnapshot, theta: float, phi: float) -> complex:
    """Complex array factor toward polar angle ``theta``, azimuth ``phi``."""
    direction = np.array(
        [
            [math.sin(theta) * math.cos(phi)],
            [math.sin(theta) * math.sin(phi)],
            [math.cos(theta)],
        ]
    )
    return complex(_af_along(snap, direction)[0])


def pattern_denominator(snap: BeamSnapshot, grid: tuple[int, int] = DEFAULT_GRID) -> float:
    """Midpoint-rule value of INT |F|^2 sin(theta) dtheta dphi, cached per snapshot.

    Raises:
        ValueError: for an all-zero weight vector (degenerate snapshot).
    """
    key = (int(grid[0]), int(grid[1]))
    cached = snap._denominators.get(key)
    if cached is not None:
        return cached
    if not np.any(snap.weights > 0.0):
        raise ValueError("degenerate snapshot: all excitation weights are zero")
    _, _, dirs, quad_w = _grid(*key)
    af = _af_along(snap, dirs)
    value = float(((af.real**2 + af.imag**2) * quad_w).sum())
    snap._denominators[key] = value
    return value


def gain_toward(
    snap: BeamSnapshot,
    theta: float,
    phi: float,
    eta: float,
    grid: tuple[int, int] = DEFAULT_GRID,
    element_pattern: Callable[[float, float], float] | None = None,
) -> float:
    """Linear power gain toward one direction.

    ``eta`` is the array efficiency in (0, 1]. ``element_pattern`` is a hook
    for a non-isotropic per-element magnitude; only the isotropic case is
    supported.
    """
    if element_pattern is not None:
        raise NotImplementedError("only isotropic elements are supported")
    denom = pattern_denominator(snap, grid)
    af = array_factor(snap, theta, phi)
    return 4.0 * math.pi * (af.real**2 + af.imag**2) * eta / denom


def gains_along(
    snap: BeamSnapshot, unit_dirs: np.ndarray, eta: float, grid: tuple[int, int] = DEFAULT_GRID
) -> np.ndarray:
    """Linear gains along unit direction columns of ``unit_dirs``, shape (3, m).

    Batched equivalent of :func:`gain_toward` sharing one cached denominator.
    """
    denom = pattern_denominator(snap, grid)
    af = _af_along(snap, unit_dirs)
    return 4.0 * math.pi * (af.real**2 + af.imag**2) * eta / denom


def sample_gain_field(
    snap: BeamSnapshot, eta: float, grid: tuple[int, int] = DEFAULT_GRID
) -> GainField:
    """Evaluate the gain on every node of the grid with one shared denominator."""
    denom = pattern_denominator(snap, grid)
    theta, phi, dirs, quad_w = _grid(int(grid[0]), int(grid[1]))
    af = _af_along(snap, dirs)
    gains = 4.0 * math.pi * (af.real**2 + af.imag**2) * eta / denom
    total = float((gains * quad_w).sum())
    gains = gains.reshape(len(theta), len(phi))
    gains.setflags(write=False)
    return GainField(theta_rad=theta, phi_rad=phi, gains=gains, total_radiated_integral=total)


def write_gain_field_csv(field_: GainField, path: str) -> None:
    """Write ``theta_rad,phi_rad,gain_linear,gain_dbi`` rows for every node."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("theta_rad,phi_rad,gain_linear,gain_dbi\n")
        for i, th in enumerate(field_.theta_rad):
            for j, ph in enumerate(field_.phi_rad):
                g = field_.gains[i, j]
                dbi = 10.0 * math.log10(max(g, _DB_FLOOR))
                fh.write(f"{th:.17g},{ph:.17g},{g:.17g},{dbi:.17g}\n")
