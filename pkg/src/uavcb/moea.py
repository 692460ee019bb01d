"""NSGA-II machinery with chaos-driven operators and an elimination stage.

The solver maintains a population of mixed genomes (continuous excitation
weights and positions, plus a BS-visiting permutation). Each iteration runs
binary tournament selection, crossover (simulated binary crossover on the
continuous part, partially mapped crossover on the permutation), mutation
(polynomial on the continuous part, exchange mutation on the permutation),
then merges parents and children, optionally deletes the worst few by
transmission time and by interference SINR, and keeps the best N by
constrained non-dominated rank and crowding distance.

Four feature flags graft the chaotic variants onto the classic algorithm:
chaotic initialization (Gauss/mouse map instead of uniform draws) and
chaos-driven branch thresholds inside crossover and mutation (Logistic and
Chebyshev maps instead of a fixed 0.5), plus the elimination stage. With all
flags off the loop is a plain NSGA-II baseline.

Everything is reproducible from (scenario, config): operator streams and the
loop RNG are confined to the sequential loop, and fitness evaluation is pure,
so optional process-parallel evaluation cannot perturb the sequence.
"""

from __future__ import annotations

import json
import math
import multiprocessing
from dataclasses import dataclass, field, fields, replace
from typing import Any, IO, Sequence

import numpy as np

from . import chaos
from .objectives import (
    Genome,
    ObjectiveVector,
    continuous_bounds,
    evaluate,
    flatten_continuous,
    unflatten_continuous,
)
from .scenario import Scenario

__all__ = [
    "Individual",
    "AlgoConfig",
    "ParetoArchive",
    "dominates",
    "fast_nondominated_sort",
    "crowding_distance",
    "tournament_select",
    "sbx_children",
    "chaotic_sbx",
    "pm_delta",
    "chaotic_pm",
    "pmx_crossover",
    "exchange_mutation",
    "eliminate",
    "chaotic_init",
    "environmental_select",
    "run",
]


@dataclass
class Individual:
    """A genome with its evaluation and current selection bookkeeping."""

    genome: Genome
    objectives: ObjectiveVector | None = None
    rank: int | None = None
    crowding: float = 0.0


@dataclass(frozen=True)
class AlgoConfig:
    """Solver parameters and feature flags.

    ``mutation_prob=None`` resolves to 1 over the number of continuous
    dimensions; ``tau1``/``tau2=None`` resolve to 5% of the merged pool at
    each elimination. ``parallel_workers=0`` evaluates serially.
    """

    pop_size: int = 50
    max_iters: int = 200
    crossover_prob: float = 0.9
    mutation_prob: float | None = None
    sbx_eta: float = 20.0
    pm_eta: float = 20.0
    tau1: int | None = None
    tau2: int | None = None
    chaotic_init: bool = True
    chaotic_sbx: bool = True
    chaotic_pm: bool = True
    elimination: bool = True
    master_seed: int = 0
    parallel_workers: int = 0

    def __post_init__(self) -> None:
        if self.pop_size < 4 or self.pop_size % 2 != 0:
            raise ValueError(f"pop_size must be even and >= 4, got {self.pop_size}")
        if self.max_iters < 0:
            raise ValueError("max_iters cannot be negative")
        if not 0.0 <= self.crossover_prob <= 1.0:
            raise ValueError("crossover_prob must lie in [0, 1]")
        if self.mutation_prob is not None and not 0.0 <= self.mutation_prob <= 1.0:
            raise ValueError("mutation_prob must lie in [0, 1]")
        if self.sbx_eta < 0.0 or self.pm_eta < 0.0:
            raise ValueError("distribution indices must be nonnegative")
        if (self.tau1 is None) != (self.tau2 is None):
            raise ValueError("set both tau1 and tau2 or neither")
        if self.tau1 is not None:
            if self.tau1 < 0 or self.tau2 < 0:
                raise ValueError("elimination counts cannot be negative")
            if self.tau1 + self.tau2 > self.pop_size:
                raise ValueError("tau1 + tau2 must not exceed pop_size")
        if self.parallel_workers < 0:
            raise ValueError("parallel_workers cannot be negative")

    @property
    def algorithm_name(self) -> str:
        flags = (self.chaotic_init, self.chaotic_sbx, self.chaotic_pm, self.elimination)
        if all(flags):
            return "cnsga2"
        if not any(flags):
            return "nsga2"
        return "custom"

    @staticmethod
    def cnsga2(**kw: Any) -> "AlgoConfig":
        return AlgoConfig(**kw)

    @staticmethod
    def nsga2(**kw: Any) -> "AlgoConfig":
        return AlgoConfig(
            chaotic_init=False, chaotic_sbx=False, chaotic_pm=False, elimination=False, **kw
        )

    def to_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @staticmethod
    def from_dict(doc: dict[str, Any]) -> "AlgoConfig":
        allowed = {f.name for f in fields(AlgoConfig)}
        unknown = set(doc) - allowed
        if unknown:
            raise ValueError(f"config: unknown field(s) {sorted(unknown)}")
        return AlgoConfig(**doc)


@dataclass
class ParetoArchive:
    """Final rank-0 individuals with run provenance."""

    individuals: list[Individual]
    algorithm: str
    seed: int
    iterations: int
    history: list[dict[str, Any]] = field(default_factory=list)

    def best_by_f2(self) -> Individual:
        return max(self.individuals, key=lambda ind: ind.objectives.f2_sinr)


# --- dominance, sorting, crowding -------------------------------------------


def dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool:
    """Constrained dominance: feasibility first, then violation, then Pareto."""
    if a.is_degenerate or b.is_degenerate:
        return not a.is_degenerate and b.is_degenerate
    a_feas = a.violation_m == 0.0
    b_feas = b.violation_m == 0.0
    if a_feas != b_feas:
        return a_feas
    if not a_feas:
        return a.violation_m < b.violation_m
    ta, tb = a.min_triple(), b.min_triple()
    return all(x <= y for x, y in zip(ta, tb)) and any(x < y for x, y in zip(ta, tb))


def fast_nondominated_sort(pop: Sequence[Individual]) -> list[list[Individual]]:
    """Partition into Pareto fronts and assign ranks (Deb's fast sort)."""
    n = len(pop)
    dominated_by: list[list[int]] = [[] for _ in range(n)]
    counts = [0] * n
    fronts: list[list[int]] = [[]]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if dominates(pop[i].objectives, pop[j].objectives):
                dominated_by[i].append(j)
            elif dominates(pop[j].objectives, pop[i].objectives):
                counts[i] += 1
        if counts[i] == 0:
            pop[i].rank = 0
            fronts[0].append(i)
    k = 0
    while fronts[k]:
        nxt: list[int] = []
        for i in fronts[k]:
            for j in dominated_by[i]:
                counts[j] -= 1
                if counts[j] == 0:
                    pop[j].rank = k + 1
                    nxt.append(j)
        k += 1
        fronts.append(nxt)
    return [[pop[i] for i in front] for front in fronts[:-1]]


def crowding_distance(front: Sequence[Individual]) -> np.ndarray:
    """Per-individual crowding distance; also stored on the individuals.

    Extremes of every varying objective get infinity; an objective that is
    constant (or non-finite) across the front contributes nothing.
    """
    n = len(front)
    dist = np.zeros(n)
    if n == 0:
        return dist
    if n <= 2:
        dist[:] = math.inf
    else:
        values = np.array([ind.objectives.min_triple() for ind in front])
        for m in range(values.shape[1]):
            col = values[:, m]
            idx = np.argsort(col, kind="stable")
            span = col[idx[-1]] - col[idx[0]]
            if not math.isfinite(span) or span <= 0.0:
                continue
            dist[idx[0]] = math.inf
            dist[idx[-1]] = math.inf
            gaps = (col[idx[2:]] - col[idx[:-2]]) / span
            dist[idx[1:-1]] += gaps
    for ind, d in zip(front, dist):
        ind.crowding = float(d)
    return dist


def tournament_select(
    pop: Sequence[Individual], rng: np.random.Generator, k: int = 2
) -> Individual:
    """Binary (size-k) tournament on (rank, crowding); full ties go to the RNG."""
    picks = rng.choice(len(pop), size=min(k, len(pop)), replace=False)
    best = pop[picks[0]]
    for i in picks[1:]:
        cand = pop[i]
        if cand.rank < best.rank:
            best = cand
        elif cand.rank == best.rank:
            if cand.crowding > best.crowding:
                best = cand
            elif cand.crowding == best.crowding and rng.integers(2) == 1:
                best = cand
    return best


# --- variation operators -----------------------------------------------------


def sbx_children(
    p1: np.ndarray, p2: np.ndarray, u: np.ndarray, threshold: float, eta: float
) -> tuple[np.ndarray, np.ndarray]:
    """Simulated-binary-crossover kernel, no bound handling.

    The spread factor branch is picked per dimension by comparing ``u``
    against ``threshold``; the child pair always preserves the parent
    midpoint.
    """
    exponent = 1.0 / (eta + 1.0)
    beta = np.where(
        u <= threshold,
        (2.0 * u) ** exponent,
        (1.0 / (2.0 * (1.0 - u))) ** exponent,
    )
    c1 = 0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2)
    c2 = 0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2)
    return c1, c2


def chaotic_sbx(
    parent1: np.ndarray,
    parent2: np.ndarray,
    lb: np.ndarray,
    ub: np.ndarray,
    eta: float,
    stream: chaos.ChaoticStream,
    rng: np.random.Generator,
    chaotic: bool = True,
) -> tuple[np.ndarray, np.ndarray]:
    """Crossover of two continuous vectors, clamped to the bounds.

    With ``chaotic`` the branch threshold is the next Logistic draw; without
    it the threshold is the classic fixed 0.5.
    """
    threshold = stream.next() if chaotic else 0.5
    u = rng.random(parent1.shape)
    c1, c2 = sbx_children(parent1, parent2, u, threshold, eta)
    return np.clip(c1, lb, ub), np.clip(c2, lb, ub)


def pm_delta(u: np.ndarray, threshold: float, eta: float) -> np.ndarray:
    """Polynomial-mutation step kernel; u=0.5 yields exactly zero in both branches."""
    exponent = 1.0 / (eta + 1.0)
    return np.where(
        u < threshold,
        (2.0 * u) ** exponent - 1.0,
        1.0 - (2.0 * (1.0 - u)) ** exponent,
    )


def chaotic_pm(
    values: np.ndarray,
    lb: np.ndarray,
    ub: np.ndarray,
    eta: float,
    prob: float,
    stream: chaos.ChaoticStream,
    rng: np.random.Generator,
    chaotic: bool = True,
) -> np.ndarray:
    """Per-dimension polynomial mutation of a continuous vector.

    Each dimension mutates with probability ``prob``; the step is scaled by
    the dimension's range and the result is clamped. With ``chaotic`` the
    branch threshold is the next normalized Chebyshev draw instead of 0.5.
    """
    threshold = stream.next() if chaotic else 0.5
    mask = rng.random(values.shape) < prob
    u = rng.random(values.shape)
    delta = pm_delta(u, threshold, eta)
    mutated = np.where(mask, values + delta * (ub - lb), values)
    return np.clip(mutated, lb, ub)


def _pmx_with_cuts(a: np.ndarray, b: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """One PMX child: ``a`` with the [lo, hi) segment taken from ``b``."""
    child = a.copy()
    child[lo:hi] = b[lo:hi]
    segment = set(b[lo:hi].tolist())
    mapping = {int(b[i]): int(a[i]) for i in range(lo, hi)}
    for i in list(range(lo)) + list(range(hi, len(a))):
        v = int(a[i])
        while v in segment:
            v = mapping[v]
        child[i] = v
    return child


def pmx_crossover(
    order1: np.ndarray, order2: np.ndarray, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Partially mapped crossover of two permutations with two RNG cut points."""
    if len(order1) != len(order2):
        raise ValueError("permutation parents must have the same length")
    n = len(order1)
    if n < 2:
        return order1.copy(), order2.copy()
    lo, hi = sorted(int(c) for c in rng.choice(n + 1, size=2, replace=False))
    return _pmx_with_cuts(order1, order2, lo, hi), _pmx_with_cuts(order2, order1, lo, hi)


def exchange_mutation(order: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Swap two distinct positions of a permutation."""
    out = order.copy()
    if len(out) < 2:
        return out
    i, j = rng.choice(len(out), size=2, replace=False)
    out[i], out[j] = out[j], out[i]
    return out


def eliminate(pop: list[Individual], tau1: int, tau2: int) -> list[Individual]:
    """Drop the worst ``tau1`` by transmission time, then the worst ``tau2`` by SINR.

    Worst by time means largest f1; worst by SINR means smallest f2 (the SINR
    objective is maximized). Survivors keep their original order.
    """
    if tau1 + tau2 >= len(pop):
        raise ValueError(
            f"cannot eliminate {tau1}+{tau2} from a population of {len(pop)}"
        )
    by_f1 = sorted(range(len(pop)), key=lambda i: pop[i].objectives.f1_s)
    kept = sorted(by_f1[: len(pop) - tau1]) if tau1 else list(range(len(pop)))
    if tau2:
        by_f2 = sorted(kept, key=lambda i: -pop[i].objectives.f2_sinr)
        kept = sorted(by_f2[: len(kept) - tau2])
    return [pop[i] for i in kept]


# --- initialization and the main loop ----------------------------------------


def _spawn_rngs(seed: int) -> tuple[np.random.Generator, ...]:
    seqs = np.random.SeedSequence(seed).spawn(4)
    return tuple(np.random.Generator(np.random.PCG64(s)) for s in seqs)


def _logistic_seed(rng: np.random.Generator) -> float:
    while True:
        x = float(rng.uniform(0.0, 1.0))
        if 0.0 < x < 1.0 and x not in (0.25, 0.5, 0.75):
            return x


def chaotic_init(
    scenario: Scenario, config: AlgoConfig, rng: np.random.Generator | None = None
) -> list[Individual]:
    """Initial population; continuous dims via the Gauss/mouse map when enabled.

    Every genome satisfies the box and permutation constraints by
    construction; pairwise separation is left to constrained dominance.
    """
    if rng is None:
        rng = _spawn_rngs(config.master_seed)[0]
    geom = scenario.geom
    lb, ub = continuous_bounds(scenario)
    stream = chaos.gauss_mouse_stream(float(rng.uniform(0.0, 1.0)))
    pop: list[Individual] = []
    for _ in range(config.pop_size):
        if config.chaotic_init:
            draws = np.array([stream.next() for _ in range(len(lb))])
        else:
            draws = rng.random(len(lb))
        flat = lb + draws * (ub - lb)
        order = rng.permutation(geom.n_bss)
        pop.append(Individual(unflatten_continuous(flat, geom.n_bss, geom.n_uavs, order)))
    return pop


def environmental_select(pop: list[Individual], n: int) -> list[Individual]:
    """Keep the best ``n`` by (rank, crowding); fills fronts in order."""
    fronts = fast_nondominated_sort(pop)
    out: list[Individual] = []
    for front in fronts:
        crowding_distance(front)
        if len(out) + len(front) <= n:
            out.extend(front)
        else:
            merge_order = sorted(range(len(front)), key=lambda i: -front[i].crowding)
            out.extend(front[i] for i in merge_order[: n - len(out)])
            break
    return out


# Worker-side scenario for process-parallel evaluation.
_WORKER_SCENARIO: Scenario | None = None


def _init_worker(scenario: Scenario) -> None:
    global _WORKER_SCENARIO
    _WORKER_SCENARIO = scenario


def _eval_worker(genome: Genome) -> ObjectiveVector:
    return evaluate(genome, _WORKER_SCENARIO)


def _evaluate_all(
    individuals: list[Individual], scenario: Scenario, pool: multiprocessing.pool.Pool | None
) -> None:
    pending = [ind for ind in individuals if ind.objectives is None]
    if not pending:
        return
    if pool is None:
        for ind in pending:
            ind.objectives = evaluate(ind.genome, scenario)
    else:
        results = pool.map(_eval_worker, [ind.genome for ind in pending], chunksize=4)
        for ind, obj in zip(pending, results):
            ind.objectives = obj


def _generation_stats(pop: list[Individual], iteration: int) -> dict[str, Any]:
    feasible = [ind for ind in pop if ind.objectives.feasible]
    basis = feasible or [ind for ind in pop if not ind.objectives.is_degenerate] or pop
    return {
        "iter": iteration,
        "best_f1_s": min(ind.objectives.f1_s for ind in basis),
        "best_f2_sinr": max(ind.objectives.f2_sinr for ind in basis),
        "best_f3_j": min(ind.objectives.f3_j for ind in basis),
        "feasible": len(feasible),
        "rank0_size": sum(1 for ind in pop if ind.rank == 0),
    }


def run(
    scenario: Scenario,
    config: AlgoConfig,
    initial_population: list[Genome] | None = None,
    log_stream: IO[str] | None = None,
) -> ParetoArchive:
    """Full solver loop; returns the final rank-0 set with provenance.

    ``initial_population`` (optional, exactly ``pop_size`` genomes) replaces
    the built-in initialization, e.g. for warm starts. ``log_stream``
    receives one JSON line per generation.
    """
    geom = scenario.geom
    n_cont = geom.n_bss * geom.n_uavs * 4
    mutation_prob = config.mutation_prob if config.mutation_prob is not None else 1.0 / n_cont
    lb, ub = continuous_bounds(scenario)

    init_rng, sbx_rng, pm_rng, loop_rng = _spawn_rngs(config.master_seed)
    sbx_stream = chaos.logistic_stream(_logistic_seed(sbx_rng))
    pm_stream = chaos.chebyshev_stream(float(pm_rng.uniform(-1.0, 1.0)))

    if initial_population is not None:
        if len(initial_population) != config.pop_size:
            raise ValueError(
                f"initial population must have pop_size={config.pop_size} genomes, "
                f"got {len(initial_population)}"
            )
        pop = [Individual(g.copy()) for g in initial_population]
    else:
        pop = chaotic_init(scenario, config, init_rng)

    pool = None
    if config.parallel_workers > 0:
        pool = multiprocessing.Pool(config.parallel_workers, _init_worker, (scenario,))
    try:
        _evaluate_all(pop, scenario, pool)
        pop = environmental_select(pop, config.pop_size)
        history = [_generation_stats(pop, 0)]
        if log_stream is not None:
            log_stream.write(json.dumps(history[-1]) + "\n")

        for t in range(1, config.max_iters + 1):
            parents = [tournament_select(pop, loop_rng) for _ in range(config.pop_size)]
            children: list[Individual] = []
            for i in range(0, config.pop_size, 2):
                g1, g2 = parents[i].genome, parents[i + 1].genome
                if loop_rng.random() < config.crossover_prob:
                    c1, c2 = chaotic_sbx(
                        flatten_continuous(g1),
                        flatten_continuous(g2),
                        lb,
                        ub,
                        config.sbx_eta,
                        sbx_stream,
                        sbx_rng,
                        config.chaotic_sbx,
                    )
                    o1, o2 = pmx_crossover(g1.order, g2.order, loop_rng)
                else:
                    c1, c2 = flatten_continuous(g1), flatten_continuous(g2)
                    o1, o2 = g1.order.copy(), g2.order.copy()
                for flat, order in ((c1, o1), (c2, o2)):
                    flat = chaotic_pm(
                        flat, lb, ub, config.pm_eta, mutation_prob, pm_stream, pm_rng,
                        config.chaotic_pm,
                    )
                    order = exchange_mutation(order, loop_rng)
                    children.append(
                        Individual(unflatten_continuous(flat, geom.n_bss, geom.n_uavs, order))
                    )
            _evaluate_all(children, scenario, pool)
            merged = pop + children
            if config.elimination:
                tau1 = config.tau1 if config.tau1 is not None else math.ceil(0.05 * len(merged))
                tau2 = config.tau2 if config.tau2 is not None else math.ceil(0.05 * len(merged))
                merged = eliminate(merged, tau1, tau2)
            pop = environmental_select(merged, config.pop_size)
            history.append(_generation_stats(pop, t))
            if log_stream is not None:
                log_stream.write(json.dumps(history[-1]) + "\n")
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    archive = [ind for ind in pop if ind.rank == 0]
    return ParetoArchive(
        individuals=archive,
        algorithm=config.algorithm_name,
        seed=config.master_seed,
        iterations=config.max_iters,
        history=history,
    )
