"""Derivative-free training of QAOA angles against a chosen estimator."""

from __future__ import annotations

import time
from dataclasses import dataclass, replace

import numpy as np

from .estimators import EstimatorConfig, estimate
from .qaoa import QaoaParams, build_ansatz
from .qubo_ising import IsingModel
from .statevector import derive_seed


class OptimizationError(RuntimeError):
    """Objective returned a non-finite value; offending params attached."""

    def __init__(self, message: str, params):
        super().__init__(message)
        self.params = params


@dataclass(frozen=True)
class OptimizerConfig:
    max_evals: int = 200
    initial_simplex_scale: float = 0.5
    convergence_tol: float = 1e-6
    restarts: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.max_evals < 1:
            raise ValueError("max_evals must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass
class TrainingTrace:
    evaluations: list[tuple[np.ndarray, float, float]]
    best_params: QaoaParams
    best_value: float
    total_circuits: int
    total_shots: int


def nelder_mead(objective, x0, cfg: OptimizerConfig) -> tuple[np.ndarray, float]:
    """Simplex minimization with reflect/expand/contract/shrink = 1, 2, 0.5, 0.5.

    Stops when max_evals objective calls are spent or the simplex objective
    spread drops below convergence_tol. Returns the best point ever evaluated,
    so the result is never worse than the starting point.
    """
    x0 = np.asarray(x0, dtype=float)
    dim = len(x0)
    if dim < 1:
        raise ValueError("need at least one dimension")
    rng = np.random.default_rng(cfg.seed)

    budget = cfg.max_evals
    best_x = None
    best_f = np.inf

    def f(x):
        nonlocal budget, best_x, best_f
        budget -= 1
        val = float(objective(x))
        if not np.isfinite(val):
            raise OptimizationError(f"objective returned {val}", np.array(x))
        if val < best_f:
            best_f, best_x = val, np.array(x, dtype=float)
        return val

    simplex = [x0.copy()]
    for i in range(dim):
        step = np.zeros(dim)
        step[i] = cfg.initial_simplex_scale * (1.0 + 0.25 * rng.uniform(-1.0, 1.0))
        simplex.append(x0 + step)
    values = []
    for x in simplex:
        if budget <= 0:
            break
        values.append(f(x))
    simplex = simplex[: len(values)]
    if len(simplex) < dim + 1:
        return best_x, best_f

    while budget > 0:
        order = np.argsort(values)
        simplex = [simplex[i] for i in order]
        values = [values[i] for i in order]
        if values[-1] - values[0] < cfg.convergence_tol:
            break
        centroid = np.mean(simplex[:-1], axis=0)
        reflected = centroid + (centroid - simplex[-1])
        fr = f(reflected)
        if values[0] <= fr < values[-2]:
            simplex[-1], values[-1] = reflected, fr
            continue
        if fr < values[0]:
            if budget <= 0:
                break
            expanded = centroid + 2.0 * (centroid - simplex[-1])
            fe = f(expanded)
            if fe < fr:
                simplex[-1], values[-1] = expanded, fe
            else:
                simplex[-1], values[-1] = reflected, fr
            continue
        if budget <= 0:
            break
        contracted = centroid + 0.5 * (simplex[-1] - centroid)
        fc = f(contracted)
        if fc < values[-1]:
            simplex[-1], values[-1] = contracted, fc
            continue
        for i in range(1, len(simplex)):  # shrink toward the best vertex
            if budget <= 0:
                break
            simplex[i] = simplex[0] + 0.5 * (simplex[i] - simplex[0])
            values[i] = f(simplex[i])
    return best_x, best_f


def train_qaoa(
    model: IsingModel, p: int, estimator_cfg: EstimatorConfig, opt_cfg: OptimizerConfig
) -> TrainingTrace:
    """Multi-restart angle optimization; the objective is the configured
    estimator evaluated on the ansatz.

    Restart 0 starts exactly at gamma = beta = 0 (so the trivial baseline is
    always among the evaluated points); further restarts draw gamma in
    [0, 2pi) and beta in [0, pi). The returned trace holds the winning
    restart's evaluations while the circuit/shot totals aggregate every
    restart. Deterministic for fixed seeds.
    """
    if p < 1:
        raise ValueError("training needs p >= 1")
    dim = 2 * p
    best_trace = None
    best_value = np.inf
    total_circuits = 0
    total_shots = 0
    for r in range(opt_cfg.restarts):
        evals: list[tuple[np.ndarray, float, float]] = []
        counter = 0

        def objective(vec):
            nonlocal counter, total_circuits, total_shots
            params = QaoaParams.from_vector(vec)
            cfg = estimator_cfg
            if not cfg.exact:
                cfg = replace(cfg, seed=derive_seed(estimator_cfg.seed, r, counter))
            t0 = time.perf_counter()
            result = estimate(build_ansatz(model, params), model, cfg)
            elapsed = time.perf_counter() - t0
            evals.append((np.array(vec, dtype=float), result.value, elapsed))
            counter += 1
            total_circuits += result.circuits_used
            total_shots += result.shots_used
            return result.value

        if r == 0:
            x0 = np.zeros(dim)
        else:
            rng = np.random.default_rng(derive_seed(opt_cfg.seed, r, 0))
            x0 = np.concatenate(
                [rng.uniform(0.0, 2.0 * np.pi, size=p), rng.uniform(0.0, np.pi, size=p)]
            )
        restart_cfg = replace(opt_cfg, seed=derive_seed(opt_cfg.seed, r, 1))
        x_best, f_best = nelder_mead(objective, x0, restart_cfg)
        if f_best < best_value:
            best_value = f_best
            best_trace = (evals, QaoaParams.from_vector(x_best))
    evaluations, best_params = best_trace
    return TrainingTrace(evaluations, best_params, float(best_value), total_circuits, total_shots)


TRACE_CSV_HEADER = "eval_index,value,wall_time_seconds,params"


def trace_to_csv(trace: TrainingTrace) -> str:
    """One row per evaluation of the winning restart; params joined by ';'."""
    lines = [TRACE_CSV_HEADER]
    for i, (vec, value, elapsed) in enumerate(trace.evaluations):
        lines.append(f"{i},{value!r},{elapsed!r},{';'.join(repr(float(v)) for v in vec)}")
    return "\n".join(lines) + "\n"
