"""Scenario configuration: physical constants, geometry, and JSON I/O.

A :class:`Scenario` aggregates everything a run needs: radio-link constants,
the rotary-wing energy model parameters, the fleet/base-station geometry, the
master seed, and the spherical quadrature grid used for beam-pattern
normalization. Instances are immutable and freely shareable across parallel
evaluators.

Scenario files are strict JSON: field names carry SI units (``_m``, ``_w``,
``_hz``) and unknown keys are rejected. Serialization uses a canonical field
order so that serialize(deserialize(file)) is byte-identical for files
already in canonical form.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, fields
from importlib import resources
from typing import Any

import numpy as np

__all__ = [
    "RadioParams",
    "EnergyParams",
    "Geometry",
    "Scenario",
    "build_default_scenario",
    "validate",
    "to_json",
    "from_json",
    "load_scenario",
    "save_scenario",
    "load_bundled_scenario",
    "digest",
]

_PLACEMENT_ATTEMPTS = 10_000

# Free-space speed of light, m/s.
_C = 299_792_458.0


@dataclass(frozen=True)
class RadioParams:
    """Radio-link constants for the uplink and interference models."""

    wavelength_m: float
    carrier_hz: float
    tx_power_w: float
    bandwidth_hz: float
    noise_power_w: float
    array_efficiency: float
    gu_rx_power_w: float
    pathloss_const: float
    pathloss_exp: float
    k1: float
    k2: float
    xi_los: float
    xi_nlos: float


@dataclass(frozen=True)
class EnergyParams:
    """Rotary-wing propulsion model constants."""

    p1_w: float
    p2_w: float
    v_tip_mps: float
    v0_mps: float
    d0: float
    s: float
    rotor_area_m2: float
    air_density: float
    uav_mass_kg: float
    gravity_mps2: float


@dataclass(frozen=True)
class Geometry:
    """Monitoring-area bounds, fleet start positions, and BS layout."""

    area_min_m: float
    area_max_m: float
    alt_min_m: float
    alt_max_m: float
    min_sep_m: float
    uav_initial_positions_m: tuple[tuple[float, float, float], ...]
    bs_positions_m: tuple[tuple[float, float, float], ...]
    data_bits_per_bs: tuple[float, ...]

    @property
    def n_uavs(self) -> int:
        return len(self.uav_initial_positions_m)

    @property
    def n_bss(self) -> int:
        return len(self.bs_positions_m)


@dataclass(frozen=True)
class Scenario:
    """Immutable bundle of all physical configuration for one experiment."""

    radio: RadioParams
    energy: EnergyParams
    geom: Geometry
    master_seed: int
    quadrature: tuple[int, int] = (36, 72)


def _default_radio() -> RadioParams:
    wavelength = _C / 2.4e9
    # Receiver power at an interfered BS from its own ground user: a 200 m
    # terrestrial link evaluated with the same pathloss law under pure LoS.
    pathloss_const = 1.0
    pathloss_exp = 3.0
    xi_los = 1.0
    gu_rx = 0.1 / (pathloss_const * 200.0**pathloss_exp * xi_los)
    return RadioParams(
        wavelength_m=wavelength,
        carrier_hz=2.4e9,
        tx_power_w=0.1,
        bandwidth_hz=1.0e6,
        noise_power_w=1.0e-13,
        array_efficiency=1.0,
        gu_rx_power_w=gu_rx,
        pathloss_const=pathloss_const,
        pathloss_exp=pathloss_exp,
        k1=10.0,
        k2=0.6,
        xi_los=xi_los,
        xi_nlos=100.0,
    )


def _default_energy() -> EnergyParams:
    return EnergyParams(
        p1_w=79.8563,
        p2_w=88.6279,
        v_tip_mps=120.0,
        v0_mps=4.03,
        d0=0.6,
        s=0.05,
        rotor_area_m2=0.503,
        air_density=1.225,
        uav_mass_kg=2.0,
        gravity_mps2=9.81,
    )


def build_default_scenario(n_uavs: int, seed: int) -> Scenario:
    """Build the stock scenario: a 100 m x 100 m area with 8 ring BSs.

    UAV start positions are sampled uniformly inside the area box with
    minimum-separation rejection sampling driven by ``seed``; the same
    (n_uavs, seed) pair always yields the same scenario.

    Raises:
        ValueError: if n_uavs < 2, or placement fails within the attempt cap.
    """
    if n_uavs < 2:
        raise ValueError(f"need at least 2 UAVs, got {n_uavs}")
    area_min, area_max = 0.0, 100.0
    alt_min, alt_max = 75.0, 95.0
    min_sep = 2.0
    rng = np.random.default_rng(seed)

    placed: list[tuple[float, float, float]] = []
    attempts = 0
    while len(placed) < n_uavs:
        if attempts >= _PLACEMENT_ATTEMPTS:
            raise ValueError(
                f"could not place {n_uavs} UAVs with {min_sep} m separation "
                f"within {_PLACEMENT_ATTEMPTS} attempts"
            )
        attempts += 1
        cand = (
            float(rng.uniform(area_min, area_max)),
            float(rng.uniform(area_min, area_max)),
            float(rng.uniform(alt_min, alt_max)),
        )
        if all(math.dist(cand, p) >= min_sep for p in placed):
            placed.append(cand)

    center = (area_min + area_max) / 2.0
    ring_radius = 600.0
    n_bss = 8
    bss = tuple(
        (
            center + ring_radius * math.cos(2.0 * math.pi * j / n_bss),
            center + ring_radius * math.sin(2.0 * math.pi * j / n_bss),
            0.0,
        )
        for j in range(n_bss)
    )

    geom = Geometry(
        area_min_m=area_min,
        area_max_m=area_max,
        alt_min_m=alt_min,
        alt_max_m=alt_max,
        min_sep_m=min_sep,
        uav_initial_positions_m=tuple(placed),
        bs_positions_m=bss,
        data_bits_per_bs=(1.0e8,) * n_bss,
    )
    return Scenario(radio=_default_radio(), energy=_default_energy(), geom=geom, master_seed=seed)


def validate(scn: Scenario) -> list[str]:
    """Check every structural invariant; returns one message per violation.

    Violations are data, not failures: an empty list means the scenario is
    well formed.
    """
    out: list[str] = []
    radio, energy, geom = scn.radio, scn.energy, scn.geom

    for f in fields(radio):
        value = getattr(radio, f.name)
        if not value > 0.0:
            out.append(f"radio.{f.name}: must be strictly positive, got {value}")
    if not 0.0 < radio.array_efficiency <= 1.0:
        out.append(f"radio.array_efficiency: must lie in (0, 1], got {radio.array_efficiency}")
    if radio.xi_nlos < radio.xi_los:
        out.append("radio.xi_nlos: must be >= radio.xi_los")

    for f in fields(energy):
        value = getattr(energy, f.name)
        if not value > 0.0:
            out.append(f"energy.{f.name}: must be strictly positive, got {value}")

    if geom.area_min_m > geom.area_max_m:
        out.append("geom.area_min_m/area_max_m: horizontal bounds are inverted")
    if geom.alt_min_m > geom.alt_max_m:
        out.append("geom.alt_min_m/alt_max_m: altitude bounds are inverted")
    if geom.min_sep_m < 0.0:
        out.append(f"geom.min_sep_m: must be nonnegative, got {geom.min_sep_m}")
    if len(geom.data_bits_per_bs) != geom.n_bss:
        out.append(
            f"geom.data_bits_per_bs: expected {geom.n_bss} entries, got {len(geom.data_bits_per_bs)}"
        )

    for i, (x, y, z) in enumerate(geom.uav_initial_positions_m):
        if not (geom.area_min_m <= x <= geom.area_max_m and geom.area_min_m <= y <= geom.area_max_m):
            out.append(f"geom.uav_initial_positions_m[{i}]: outside the horizontal area bounds")
        if not geom.alt_min_m <= z <= geom.alt_max_m:
            out.append(f"geom.uav_initial_positions_m[{i}]: outside the altitude bounds")
    pos = geom.uav_initial_positions_m
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            if math.dist(pos[i], pos[j]) < geom.min_sep_m:
                out.append(
                    f"geom.uav_initial_positions_m[{i}]/[{j}]: closer than the "
                    f"{geom.min_sep_m} m minimum separation"
                )

    for j, (x, y, z) in enumerate(geom.bs_positions_m):
        inside = geom.area_min_m <= x <= geom.area_max_m and geom.area_min_m <= y <= geom.area_max_m
        if inside:
            out.append(f"geom.bs_positions_m[{j}]: lies inside the monitoring square")
        if z != 0.0:
            out.append(f"geom.bs_positions_m[{j}]: must sit at ground level z=0, got z={z}")

    nt, nph = scn.quadrature
    if nt < 18 or nph < 36:
        out.append(f"quadrature: grid must be at least 18x36, got {nt}x{nph}")
    return out


# --- JSON serialization ----------------------------------------------------


def _params_to_dict(obj: Any) -> dict[str, float]:
    return {f.name: getattr(obj, f.name) for f in fields(obj)}


def to_dict(scn: Scenario) -> dict[str, Any]:
    """Canonical nested-dict form of a scenario."""
    geom = scn.geom
    return {
        "radio": _params_to_dict(scn.radio),
        "energy": _params_to_dict(scn.energy),
        "geometry": {
            "area_min_m": geom.area_min_m,
            "area_max_m": geom.area_max_m,
            "alt_min_m": geom.alt_min_m,
            "alt_max_m": geom.alt_max_m,
            "min_sep_m": geom.min_sep_m,
            "n_uavs": geom.n_uavs,
            "n_bss": geom.n_bss,
            "uav_initial_positions_m": [list(p) for p in geom.uav_initial_positions_m],
            "bs_positions_m": [list(p) for p in geom.bs_positions_m],
            "data_bits_per_bs": list(geom.data_bits_per_bs),
        },
        "master_seed": scn.master_seed,
        "quadrature": list(scn.quadrature),
    }


def _check_keys(d: dict[str, Any], allowed: set[str], where: str) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ValueError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = allowed - set(d)
    if missing:
        raise ValueError(f"{where}: missing field(s) {sorted(missing)}")


def from_dict(doc: dict[str, Any]) -> Scenario:
    """Parse a scenario document, rejecting unknown or missing fields."""
    _check_keys(doc, {"radio", "energy", "geometry", "master_seed", "quadrature"}, "scenario")

    radio_keys = {f.name for f in fields(RadioParams)}
    _check_keys(doc["radio"], radio_keys, "scenario.radio")
    radio = RadioParams(**{k: float(v) for k, v in doc["radio"].items()})

    energy_keys = {f.name for f in fields(EnergyParams)}
    _check_keys(doc["energy"], energy_keys, "scenario.energy")
    energy = EnergyParams(**{k: float(v) for k, v in doc["energy"].items()})

    g = doc["geometry"]
    geom_keys = {
        "area_min_m",
        "area_max_m",
        "alt_min_m",
        "alt_max_m",
        "min_sep_m",
        "n_uavs",
        "n_bss",
        "uav_initial_positions_m",
        "bs_positions_m",
        "data_bits_per_bs",
    }
    _check_keys(g, geom_keys, "scenario.geometry")
    uavs = tuple(tuple(float(c) for c in p) for p in g["uav_initial_positions_m"])
    bss = tuple(tuple(float(c) for c in p) for p in g["bs_positions_m"])
    if any(len(p) != 3 for p in uavs + bss):
        raise ValueError("scenario.geometry: positions must be [x, y, z] triples")
    if g["n_uavs"] != len(uavs):
        raise ValueError(
            f"scenario.geometry.n_uavs: declared {g['n_uavs']} but "
            f"{len(uavs)} initial positions given"
        )
    if g["n_bss"] != len(bss):
        raise ValueError(
            f"scenario.geometry.n_bss: declared {g['n_bss']} but {len(bss)} BS positions given"
        )
    geom = Geometry(
        area_min_m=float(g["area_min_m"]),
        area_max_m=float(g["area_max_m"]),
        alt_min_m=float(g["alt_min_m"]),
        alt_max_m=float(g["alt_max_m"]),
        min_sep_m=float(g["min_sep_m"]),
        uav_initial_positions_m=uavs,
        bs_positions_m=bss,
        data_bits_per_bs=tuple(float(b) for b in g["data_bits_per_bs"]),
    )
    quad = doc["quadrature"]
    if len(quad) != 2:
        raise ValueError("scenario.quadrature: expected [n_theta, n_phi]")
    return Scenario(
        radio=radio,
        energy=energy,
        geom=geom,
        master_seed=int(doc["master_seed"]),
        quadrature=(int(quad[0]), int(quad[1])),
    )


def to_json(scn: Scenario) -> str:
    return json.dumps(to_dict(scn), indent=2, allow_nan=False) + "\n"


def from_json(text: str) -> Scenario:
    return from_dict(json.loads(text))


def save_scenario(scn: Scenario, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(to_json(scn))


def load_scenario(path: str) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return from_json(fh.read())


def load_bundled_scenario(name: str) -> Scenario:
    """Load one of the packaged scenarios, e.g. ``default-8uav``."""
    text = resources.files("uavcb.data").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return from_json(text)


def digest(scn: Scenario) -> str:
    """Stable sha256 digest of the canonical JSON form."""
    return hashlib.sha256(to_json(scn).encode("utf-8")).hexdigest()
