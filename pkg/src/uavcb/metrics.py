"""Pareto-front quality metrics."""

from __future__ import annotations

from typing import Sequence

import numpy as np

__all__ = ["hypervolume", "reference_point"]


def hypervolume(front: Sequence[Sequence[float]], ref_point: Sequence[float]) -> float:
    """Exact hypervolume of a minimization front against a reference point.

    Computes the Lebesgue measure of the region dominated by the front and
    bounded above by ``ref_point``, by recursive slicing along the last
    objective. Exact for two and three objectives (any small front size);
    dominated points are harmless.

    Raises:
        ValueError: if a point falls outside the reference box.
    """
    pts = [tuple(float(c) for c in p) for p in front]
    ref = tuple(float(c) for c in ref_point)
    if not pts:
        return 0.0
    if any(len(p) != len(ref) for p in pts):
        raise ValueError("front points and reference point must share one dimension")
    for p in pts:
        if any(c > r for c, r in zip(p, ref)):
            raise ValueError(f"point {p} lies outside the reference box {ref}")
    return _slice_hv(pts, ref)


def _slice_hv(pts: list[tuple[float, ...]], ref: tuple[float, ...]) -> float:
    if not pts:
        return 0.0
    if len(ref) == 1:
        return ref[0] - min(p[0] for p in pts)
    levels = sorted({p[-1] for p in pts})
    total = 0.0
    for i, z in enumerate(levels):
        upper = levels[i + 1] if i + 1 < len(levels) else ref[-1]
        if upper <= z:
            continue
        active = [p[:-1] for p in pts if p[-1] <= z]
        total += (upper - z) * _slice_hv(active, ref[:-1])
    return total


def reference_point(fronts: Sequence[Sequence[Sequence[float]]]) -> np.ndarray:
    """Common reference point for comparing fronts: the union nadir plus 10%.

    Each coordinate is pushed beyond the worst observed value by 10% of its
    magnitude (with a tiny absolute floor), so every point strictly dominates
    the reference regardless of sign.
    """
    merged = np.vstack([np.asarray(f, dtype=float) for f in fronts if len(f)])
    nadir = merged.max(axis=0)
    return nadir + np.maximum(0.1 * np.abs(nadir), 1e-12)
