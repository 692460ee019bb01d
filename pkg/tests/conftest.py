import math

import numpy as np
import pytest

from uavcb.objectives import Genome
from uavcb.scenario import Geometry, Scenario, _default_energy, _default_radio


def make_small_scenario(
    n_uavs: int = 3,
    n_bss: int = 3,
    seed: int = 11,
    quadrature: tuple[int, int] = (18, 36),
    ring_radius: float = 150.0,
    data_bits: float = 1.0e6,
) -> Scenario:
    """Compact scenario for fast unit tests; same constants, smaller geometry."""
    rng = np.random.default_rng(seed)
    area_min, area_max = 0.0, 20.0
    alt_min, alt_max = 75.0, 80.0
    min_sep = 2.0
    placed: list[tuple[float, float, float]] = []
    while len(placed) < n_uavs:
        cand = (
            float(rng.uniform(area_min, area_max)),
            float(rng.uniform(area_min, area_max)),
            float(rng.uniform(alt_min, alt_max)),
        )
        if all(math.dist(cand, p) >= min_sep for p in placed):
            placed.append(cand)
    center = (area_min + area_max) / 2.0
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
        data_bits_per_bs=(data_bits,) * n_bss,
    )
    return Scenario(
        radio=_default_radio(),
        energy=_default_energy(),
        geom=geom,
        master_seed=seed,
        quadrature=quadrature,
    )


def random_genome(scenario: Scenario, rng: np.random.Generator) -> Genome:
    geom = scenario.geom
    return Genome(
        weights=rng.uniform(0.0, 1.0, (geom.n_bss, geom.n_uavs)),
        positions=np.stack(
            [
                np.column_stack(
                    [
                        rng.uniform(geom.area_min_m, geom.area_max_m, geom.n_uavs),
                        rng.uniform(geom.area_min_m, geom.area_max_m, geom.n_uavs),
                        rng.uniform(geom.alt_min_m, geom.alt_max_m, geom.n_uavs),
                    ]
                )
                for _ in range(geom.n_bss)
            ]
        ),
        order=rng.permutation(geom.n_bss),
    )


@pytest.fixture(scope="session")
def small_scenario() -> Scenario:
    return make_small_scenario()
