"""Candidate-solution encoding and objective evaluation.

A genome holds one excitation-weight row and one hover formation per BS,
plus the BS visiting order. Evaluation produces the three objectives:

* total uplink transmission time (sum over BSs of payload over rate),
* total linear SINR across interfered BSs (larger is better),
* swarm propulsion energy along the tour from the collection positions
  through the per-BS formations in visiting order,

together with the aggregate pairwise-separation shortfall used for
constraint handling. Evaluation is a pure function of (genome, scenario):
transmission time and interference do not depend on the visiting order,
energy does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import channel
from .beam import BeamSnapshot, gains_along
from .energy import formation_transition
from .scenario import Scenario

__all__ = [
    "Genome",
    "ObjectiveVector",
    "continuous_bounds",
    "eval_f1",
    "eval_f2",
    "eval_f3",
    "violation",
    "evaluate",
    "before_cb_genome",
]


@dataclass
class Genome:
    """Per-BS excitation weights and formations plus the visiting order."""

    weights: np.ndarray
    positions: np.ndarray
    order: np.ndarray

    def __post_init__(self) -> None:
        self.weights = np.asarray(self.weights, dtype=float)
        self.positions = np.asarray(self.positions, dtype=float)
        self.order = np.asarray(self.order, dtype=int)
        n_bss = self.weights.shape[0]
        if self.weights.ndim != 2:
            raise ValueError("weights must be an (n_bss, n_uavs) matrix")
        if self.positions.shape != (n_bss, self.weights.shape[1], 3):
            raise ValueError(
                f"positions shape {self.positions.shape} does not match weights {self.weights.shape}"
            )
        if sorted(self.order.tolist()) != list(range(n_bss)):
            raise ValueError(f"order must be a permutation of 0..{n_bss - 1}")

    def copy(self) -> "Genome":
        return Genome(self.weights.copy(), self.positions.copy(), self.order.copy())

    def to_dict(self) -> dict[str, Any]:
        return {
            "weights": self.weights.tolist(),
            "positions": self.positions.tolist(),
            "order": self.order.tolist(),
        }

    @staticmethod
    def from_dict(doc: dict[str, Any]) -> "Genome":
        unknown = set(doc) - {"weights", "positions", "order"}
        if unknown:
            raise ValueError(f"genome: unknown field(s) {sorted(unknown)}")
        return Genome(
            np.array(doc["weights"], dtype=float),
            np.array(doc["positions"], dtype=float),
            np.array(doc["order"], dtype=int),
        )


@dataclass(frozen=True)
class ObjectiveVector:
    """Objective values for one genome plus the separation shortfall."""

    f1_s: float
    f2_sinr: float
    f3_j: float
    violation_m: float

    @property
    def is_degenerate(self) -> bool:
        """True for the all-zero-weight-row sentinel; loses every comparison."""
        return math.isinf(self.f1_s)

    @property
    def feasible(self) -> bool:
        return self.violation_m == 0.0 and not self.is_degenerate

    def min_triple(self) -> tuple[float, float, float]:
        """The minimization view (time, negated SINR, energy)."""
        return (self.f1_s, -self.f2_sinr, self.f3_j)


def continuous_bounds(scenario: Scenario) -> tuple[np.ndarray, np.ndarray]:
    """Lower/upper bounds of the flattened continuous part of a genome.

    Layout: all weights (n_bss * n_uavs) first, then positions flattened as
    (bs, uav, xyz).
    """
    geom = scenario.geom
    n = geom.n_bss * geom.n_uavs
    lb = np.concatenate(
        [
            np.zeros(n),
            np.tile([geom.area_min_m, geom.area_min_m, geom.alt_min_m], n),
        ]
    )
    ub = np.concatenate(
        [
            np.ones(n),
            np.tile([geom.area_max_m, geom.area_max_m, geom.alt_max_m], n),
        ]
    )
    return lb, ub


def flatten_continuous(genome: Genome) -> np.ndarray:
    return np.concatenate([genome.weights.ravel(), genome.positions.ravel()])


def unflatten_continuous(flat: np.ndarray, n_bss: int, n_uavs: int, order: np.ndarray) -> Genome:
    n = n_bss * n_uavs
    return Genome(
        weights=flat[:n].reshape(n_bss, n_uavs),
        positions=flat[n:].reshape(n_bss, n_uavs, 3),
        order=np.array(order, dtype=int),
    )


def _row_snapshot(genome: Genome, j: int, scenario: Scenario) -> BeamSnapshot:
    return BeamSnapshot(
        positions=genome.positions[j],
        weights=genome.weights[j],
        wavelength_m=scenario.radio.wavelength_m,
    )


def _bs_view(centroid: np.ndarray, bs: tuple[float, float, float]):
    """Direction (theta, phi) and link geometry from a formation centroid to a BS."""
    v = np.asarray(bs, dtype=float) - centroid
    r = float(np.linalg.norm(v))
    theta = math.acos(v[2] / r)
    phi = math.atan2(v[1], v[0]) % (2.0 * math.pi)
    link = channel.link_geometry(centroid, bs)
    return (theta, phi), link


def _row_received_powers(
    snap: BeamSnapshot, centroid: np.ndarray, scenario: Scenario
) -> np.ndarray:
    """Received power at every BS from one snapshot, batched over directions."""
    radio, geom = scenario.radio, scenario.geom
    bs = np.asarray(geom.bs_positions_m, dtype=float)
    vecs = bs - centroid
    norms = np.linalg.norm(vecs, axis=1)
    units = (vecs / norms[:, None]).T
    gains = gains_along(snap, units, radio.array_efficiency, scenario.quadrature)
    powers = np.empty(geom.n_bss)
    for k in range(geom.n_bss):
        link = channel.link_geometry(centroid, geom.bs_positions_m[k])
        powers[k] = radio.tx_power_w * gains[k] * channel.channel_gain(link, radio)
    return powers


def _has_degenerate_row(genome: Genome) -> bool:
    return bool(np.any(~np.any(genome.weights > 0.0, axis=1)))


def eval_f1(genome: Genome, scenario: Scenario) -> float:
    """Total transmission time in seconds; inf for an all-zero weight row."""
    if _has_degenerate_row(genome):
        return math.inf
    radio, geom = scenario.radio, scenario.geom
    total = 0.0
    for j in range(geom.n_bss):
        snap = _row_snapshot(genome, j, scenario)
        centroid = genome.positions[j].mean(axis=0)
        direction, link = _bs_view(centroid, geom.bs_positions_m[j])
        p_rx = channel.received_power(snap, direction, link, radio, scenario.quadrature)
        total += geom.data_bits_per_bs[j] / channel.rate(p_rx, radio)
    return total


def eval_f2(genome: Genome, scenario: Scenario) -> float:
    """Summed linear SINR over all interfered BSs; 0 for a degenerate genome."""
    if _has_degenerate_row(genome):
        return 0.0
    radio, geom = scenario.radio, scenario.geom
    total = 0.0
    for j in range(geom.n_bss):
        snap = _row_snapshot(genome, j, scenario)
        centroid = genome.positions[j].mean(axis=0)
        for k in range(geom.n_bss):
            if k == j:
                continue
            direction, link = _bs_view(centroid, geom.bs_positions_m[k])
            p_int = channel.received_power(snap, direction, link, radio, scenario.quadrature)
            total += channel.interfered_sinr(p_int, radio)
    return total


def eval_f3(genome: Genome, scenario: Scenario) -> float:
    """Propulsion energy of the tour through the formations in visiting order."""
    ep = scenario.energy
    current = np.asarray(scenario.geom.uav_initial_positions_m, dtype=float)
    total = 0.0
    for j in genome.order:
        nxt = genome.positions[j]
        total += formation_transition(current, nxt, ep)[0]
        current = nxt
    return total


def violation(genome: Genome, scenario: Scenario) -> float:
    """Aggregate pairwise-separation shortfall across all formations, meters."""
    min_sep = scenario.geom.min_sep_m
    total = 0.0
    for form in genome.positions:
        diff = form[:, None, :] - form[None, :, :]
        dist = np.sqrt((diff**2).sum(axis=-1))
        iu = np.triu_indices(len(form), k=1)
        total += float(np.maximum(0.0, min_sep - dist[iu]).sum())
    return total


def evaluate(genome: Genome, scenario: Scenario) -> ObjectiveVector:
    """Assemble the full objective vector for one genome."""
    radio, geom = scenario.radio, scenario.geom
    v = violation(genome, scenario)
    f3 = eval_f3(genome, scenario)
    if _has_degenerate_row(genome):
        return ObjectiveVector(f1_s=math.inf, f2_sinr=0.0, f3_j=f3, violation_m=v)

    # Shared snapshots so each row's pattern normalization is computed once.
    f1 = 0.0
    f2 = 0.0
    for j in range(geom.n_bss):
        snap = _row_snapshot(genome, j, scenario)
        centroid = genome.positions[j].mean(axis=0)
        powers = _row_received_powers(snap, centroid, scenario)
        for k in range(geom.n_bss):
            if k == j:
                f1 += geom.data_bits_per_bs[j] / channel.rate(powers[k], radio)
            else:
                f2 += channel.interfered_sinr(powers[k], radio)
    return ObjectiveVector(f1_s=f1, f2_sinr=f2, f3_j=f3, violation_m=v)


def before_cb_genome(scenario: Scenario) -> Genome:
    """Reference configuration: collection positions, unit weights, natural order.

    This is the no-beamforming baseline every report compares against.
    """
    geom = scenario.geom
    initial = np.asarray(geom.uav_initial_positions_m, dtype=float)
    return Genome(
        weights=np.ones((geom.n_bss, geom.n_uavs)),
        positions=np.tile(initial, (geom.n_bss, 1, 1)),
        order=np.arange(geom.n_bss),
    )
