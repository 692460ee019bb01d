"""Experiment driver and report artifacts.

One experiment produces, inside the output directory:

* ``report.json``: digest, config, archive objectives, the before-CB
  baseline, the SINR improvement factor, and the hypervolume;
* ``pareto.csv``: one row per archived solution (``f1_s,f2_linear,f3_j,
  violation,genome_id``);
* ``solutions.json``: full genomes, losslessly round-trippable;
* ``flightpaths.json``: per-UAV waypoints and per-leg energies of the
  best-interference-mitigation solution;
* ``beampattern.csv``: the gain field of that solution toward its first
  visited BS;
* ``runlog.jsonl``: one JSON line per generation.

Figures for the same data are rendered alongside (see :mod:`uavcb.plots`).
Numbers in CSV files are written with 17 significant digits; JSON numbers
round-trip exactly.
"""

from __future__ import annotations

import dataclasses
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import moea, scenario as scenario_mod
from .beam import BeamSnapshot, sample_gain_field, write_gain_field_csv
from .energy import formation_transition
from .metrics import hypervolume, reference_point
from .objectives import Genome, ObjectiveVector, before_cb_genome, evaluate
from .scenario import Scenario

__all__ = ["RunReport", "execute_experiment", "export_beampattern"]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


@dataclass
class RunReport:
    """Everything the report file records about one experiment."""

    scenario_digest: str
    algorithm: str
    config: dict[str, Any]
    archive: list[dict[str, Any]]
    before_cb: dict[str, Any]
    sinr_improvement_factor: float
    hypervolume: float
    wall_time_s: float
    out_dir: str = ""
    history: list[dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "scenario_digest": self.scenario_digest,
            "algorithm": self.algorithm,
            "config": self.config,
            "archive": self.archive,
            "before_cb": self.before_cb,
            "sinr_improvement_factor": self.sinr_improvement_factor,
            "hypervolume": self.hypervolume,
            "wall_time_s": self.wall_time_s,
        }


def _objective_dict(vec: ObjectiveVector) -> dict[str, float]:
    # SINR is tracked linearly; the dB view is included for presentation.
    return {
        "f1_s": vec.f1_s,
        "f2_linear": vec.f2_sinr,
        "f2_db": 10.0 * math.log10(vec.f2_sinr) if vec.f2_sinr > 0.0 else -math.inf,
        "f3_j": vec.f3_j,
        "violation_m": vec.violation_m,
    }


def _sorted_archive(archive: moea.ParetoArchive) -> list[tuple[str, moea.Individual]]:
    """Deterministic archive ordering with stable genome ids."""
    ordered = sorted(
        archive.individuals,
        key=lambda ind: (ind.objectives.min_triple(), ind.objectives.violation_m),
    )
    return [(f"g{i:03d}", ind) for i, ind in enumerate(ordered)]


def _write_pareto_csv(path: Path, rows: list[tuple[str, moea.Individual]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("f1_s,f2_linear,f3_j,violation,genome_id\n")
        for gid, ind in rows:
            o = ind.objectives
            fh.write(
                f"{_fmt(o.f1_s)},{_fmt(o.f2_sinr)},{_fmt(o.f3_j)},{_fmt(o.violation_m)},{gid}\n"
            )


def _write_solutions_json(path: Path, rows: list[tuple[str, moea.Individual]]) -> None:
    doc = [
        {
            "genome_id": gid,
            **ind.genome.to_dict(),
            "objectives": _objective_dict(ind.objectives),
        }
        for gid, ind in rows
    ]
    _dump_json(path, doc)


def _flightpaths_doc(
    scn: Scenario, genome: Genome, vec: ObjectiveVector, gid: str
) -> dict[str, Any]:
    initial = np.asarray(scn.geom.uav_initial_positions_m, dtype=float)
    legs = []
    current = initial
    prev_label: Any = "initial"
    for j in genome.order:
        nxt = genome.positions[j]
        e, t = formation_transition(current, nxt, scn.energy)
        legs.append(
            {"from": prev_label, "to": int(j), "duration_s": t, "energy_j": e}
        )
        current = nxt
        prev_label = int(j)
    uavs = []
    for i in range(scn.geom.n_uavs):
        waypoints = [initial[i].tolist()]
        waypoints += [genome.positions[j][i].tolist() for j in genome.order]
        uavs.append({"uav": i, "waypoints_m": waypoints})
    return {
        "genome_id": gid,
        "order": genome.order.tolist(),
        "f3_j": vec.f3_j,
        "legs": legs,
        "uavs": uavs,
    }


def _dump_json(path: Path, doc: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, allow_nan=False)
        fh.write("\n")


def export_beampattern(genome: Genome, bs_index: int, scn: Scenario, path: str | Path) -> None:
    """Write the gain-field CSV of one genome's snapshot for the given BS."""
    snap = BeamSnapshot(
        positions=genome.positions[bs_index],
        weights=genome.weights[bs_index],
        wavelength_m=scn.radio.wavelength_m,
    )
    gain_field = sample_gain_field(snap, scn.radio.array_efficiency, scn.quadrature)
    write_gain_field_csv(gain_field, str(path))


def execute_experiment(
    scn: Scenario,
    config: moea.AlgoConfig,
    out_dir: str | Path,
    algorithm: str = "cnsga2",
    figures: bool = True,
) -> RunReport:
    """Run one experiment end to end and write every artifact.

    ``algorithm`` selects the solver preset actually run: ``cnsga2`` or
    ``nsga2`` (the config's feature flags are forced accordingly), or
    ``baseline`` which skips optimization and reports the before-CB
    configuration alone.
    """
    problems = scenario_mod.validate(scn)
    if problems:
        raise ValueError("invalid scenario: " + "; ".join(problems))

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    flag_presets = {
        "cnsga2": dict(chaotic_init=True, chaotic_sbx=True, chaotic_pm=True, elimination=True),
        "nsga2": dict(chaotic_init=False, chaotic_sbx=False, chaotic_pm=False, elimination=False),
    }
    start = time.perf_counter()
    if algorithm == "baseline":
        ind = moea.Individual(before_cb_genome(scn))
        ind.objectives = evaluate(ind.genome, scn)
        ind.rank = 0
        archive = moea.ParetoArchive(
            individuals=[ind], algorithm="baseline", seed=config.master_seed, iterations=0
        )
        used_config = config
    elif algorithm in flag_presets:
        used_config = dataclasses.replace(config, **flag_presets[algorithm])
        with open(out / "runlog.jsonl", "w", encoding="utf-8") as log:
            archive = moea.run(scn, used_config, log_stream=log)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    wall = time.perf_counter() - start

    baseline_vec = evaluate(before_cb_genome(scn), scn)
    rows = _sorted_archive(archive)
    best_f2 = max(ind.objectives.f2_sinr for _, ind in rows)
    improvement = best_f2 / baseline_vec.f2_sinr

    triples = [ind.objectives.min_triple() for _, ind in rows]
    hv = hypervolume(triples, reference_point([triples]))

    _write_pareto_csv(out / "pareto.csv", rows)
    _write_solutions_json(out / "solutions.json", rows)

    best_gid, best_ind = max(rows, key=lambda r: r[1].objectives.f2_sinr)
    flightpaths = _flightpaths_doc(scn, best_ind.genome, best_ind.objectives, best_gid)
    _dump_json(out / "flightpaths.json", flightpaths)
    export_beampattern(
        best_ind.genome, int(best_ind.genome.order[0]), scn, out / "beampattern.csv"
    )

    report = RunReport(
        scenario_digest=scenario_mod.digest(scn),
        algorithm=archive.algorithm,
        config=used_config.to_dict(),
        archive=[
            {"genome_id": gid, "objectives": _objective_dict(ind.objectives)}
            for gid, ind in rows
        ],
        before_cb=_objective_dict(baseline_vec),
        sinr_improvement_factor=improvement,
        hypervolume=hv,
        wall_time_s=wall,
        out_dir=str(out),
        history=archive.history,
    )
    doc = report.to_dict()
    if not math.isfinite(doc["before_cb"]["f2_db"]):
        doc["before_cb"]["f2_db"] = None
    _dump_json(out / "report.json", doc)

    if figures:
        from . import plots

        plots.render_all(out, scn, report, best_ind.genome, flightpaths)
    return report
