"""Figure rendering for the report directory.

Renders PNG companions for the delimited artifacts: pairwise projections of
the archived objective vectors, the exported beam pattern, the flight paths
of the reported solution, and the per-generation convergence traces.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Any

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .beam import BeamSnapshot, sample_gain_field
from .objectives import Genome
from .report import RunReport
from .scenario import Scenario

__all__ = [
    "render_all",
    "pareto_figure",
    "beampattern_figure",
    "flightpaths_figure",
    "convergence_figure",
]


def pareto_figure(report: RunReport, path: Path) -> None:
    arch = report.archive
    f1 = [row["objectives"]["f1_s"] for row in arch]
    f2 = [row["objectives"]["f2_linear"] for row in arch]
    f3 = [row["objectives"]["f3_j"] for row in arch]
    base = report.before_cb

    fig, axes = plt.subplots(1, 3, figsize=(13, 4))
    pairs = [
        (f1, f2, "transmission time (s)", "total interfered SINR (linear)"),
        (f1, f3, "transmission time (s)", "propulsion energy (J)"),
        (f2, f3, "total interfered SINR (linear)", "propulsion energy (J)"),
    ]
    base_pts = [
        (base["f1_s"], base["f2_linear"]),
        (base["f1_s"], base["f3_j"]),
        (base["f2_linear"], base["f3_j"]),
    ]
    for ax, (x, y, xl, yl), (bx, by) in zip(axes, pairs, base_pts):
        ax.scatter(x, y, s=18, c="tab:blue", label="archive")
        ax.scatter([bx], [by], marker="x", c="tab:red", s=50, label="before CB")
        ax.set_xlabel(xl)
        ax.set_ylabel(yl)
        ax.grid(alpha=0.3)
    axes[0].legend(fontsize=8)
    fig.suptitle(f"Pareto archive ({report.algorithm}, seed {report.config['master_seed']})")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def beampattern_figure(scn: Scenario, genome: Genome, bs_index: int, path: Path) -> None:
    snap = BeamSnapshot(
        positions=genome.positions[bs_index],
        weights=genome.weights[bs_index],
        wavelength_m=scn.radio.wavelength_m,
    )
    gf = sample_gain_field(snap, scn.radio.array_efficiency, scn.quadrature)
    dbi = 10.0 * np.log10(np.maximum(gf.gains, 1e-12))

    fig, ax = plt.subplots(figsize=(8, 4))
    mesh = ax.imshow(
        dbi,
        origin="lower",
        aspect="auto",
        extent=(0.0, 360.0, 180.0, 0.0),
        cmap="viridis",
        vmin=max(dbi.min(), dbi.max() - 40.0),
    )
    ax.set_xlabel("azimuth (deg)")
    ax.set_ylabel("polar angle (deg)")
    ax.set_title(f"Gain toward BS {bs_index} snapshot (dBi)")
    fig.colorbar(mesh, ax=ax, label="dBi")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def flightpaths_figure(scn: Scenario, flightpaths: dict[str, Any], path: Path) -> None:
    geom = scn.geom
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.add_patch(
        plt.Rectangle(
            (geom.area_min_m, geom.area_min_m),
            geom.area_max_m - geom.area_min_m,
            geom.area_max_m - geom.area_min_m,
            fill=False,
            ls="--",
            color="gray",
        )
    )
    cmap = plt.get_cmap("tab20")
    for entry in flightpaths["uavs"]:
        pts = np.asarray(entry["waypoints_m"])
        color = cmap(entry["uav"] % 20)
        ax.plot(pts[:, 0], pts[:, 1], "-", lw=0.8, color=color, alpha=0.8)
        ax.scatter(pts[0, 0], pts[0, 1], marker="s", s=30, color=color)
        ax.scatter(pts[1:, 0], pts[1:, 1], marker="o", s=12, color=color, alpha=0.6)
    ax.set_xlabel("x (m)")
    ax.set_ylabel("y (m)")
    ax.set_title(f"Flight paths, visiting order {flightpaths['order']}")
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def convergence_figure(history: list[dict[str, Any]], path: Path) -> None:
    iters = [h["iter"] for h in history]
    fig, axes = plt.subplots(1, 3, figsize=(13, 3.5))
    for ax, key, label in zip(
        axes,
        ("best_f1_s", "best_f2_sinr", "best_f3_j"),
        ("best transmission time (s)", "best total SINR (linear)", "best energy (J)"),
    ):
        ax.plot(iters, [h[key] for h in history], lw=1.2)
        ax.set_xlabel("generation")
        ax.set_ylabel(label)
        ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def render_all(
    out_dir: Path,
    scn: Scenario,
    report: RunReport,
    best_genome: Genome,
    flightpaths: dict[str, Any],
) -> None:
    out = Path(out_dir)
    pareto_figure(report, out / "pareto_front.png")
    beampattern_figure(scn, best_genome, int(best_genome.order[0]), out / "beampattern.png")
    flightpaths_figure(scn, flightpaths, out / "flightpaths.png")
    if report.history:
        convergence_figure(report.history, out / "convergence.png")
