"""UAV virtual-antenna-array deployment planning toolkit.

Simulates collaborative beamforming by a UAV swarm uplinking to remote base
stations, and optimizes excitation weights, hover formations, and the BS
visiting order with a chaos-enhanced NSGA-II to trade off transmission time,
interference to non-target BSs, and propulsion energy.
"""

from .beam import BeamSnapshot, GainField, array_factor, gain_toward, sample_gain_field
from .metrics import hypervolume
from .moea import AlgoConfig, Individual, ParetoArchive, run
from .objectives import Genome, ObjectiveVector, before_cb_genome, evaluate
from .report import RunReport, execute_experiment, export_beampattern
from .scenario import (
    EnergyParams,
    Geometry,
    RadioParams,
    Scenario,
    build_default_scenario,
    load_bundled_scenario,
    load_scenario,
    save_scenario,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "AlgoConfig",
    "BeamSnapshot",
    "EnergyParams",
    "GainField",
    "Genome",
    "Geometry",
    "Individual",
    "ObjectiveVector",
    "ParetoArchive",
    "RadioParams",
    "RunReport",
    "Scenario",
    "array_factor",
    "before_cb_genome",
    "build_default_scenario",
    "evaluate",
    "execute_experiment",
    "export_beampattern",
    "gain_toward",
    "hypervolume",
    "load_bundled_scenario",
    "load_scenario",
    "run",
    "sample_gain_field",
    "save_scenario",
    "validate",
    "__version__",
]
