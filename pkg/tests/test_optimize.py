"""Nelder-Mead and the QAOA training loop."""

import numpy as np
import pytest

from conftest import ising_dense_matrix
from holcus.estimators import EstimatorConfig
from holcus.optimize import (
    OptimizationError,
    OptimizerConfig,
    TrainingTrace,
    nelder_mead,
    trace_to_csv,
    train_qaoa,
)
from holcus.qubo_ising import qubo_to_ising, random_qubo


class TestNelderMead:
    def test_convex_1d(self):
        cfg = OptimizerConfig(max_evals=400, convergence_tol=1e-12)
        x, f = nelder_mead(lambda v: (v[0] - 1.0) ** 2, [5.0], cfg)
        assert abs(x[0] - 1.0) < 1e-4

    def test_convex_bowl(self):
        cfg = OptimizerConfig(max_evals=500, convergence_tol=1e-12)
        x, f = nelder_mead(lambda v: v[0] ** 2 + 10 * v[1] ** 2, [3.0, 3.0], cfg)
        assert f < 1e-6

    def test_noisy_objective(self):
        noise = np.random.default_rng(4)

        def f(v):
            return v[0] ** 2 + 1e-3 * noise.uniform(-1, 1)

        x, _ = nelder_mead(f, [2.0], OptimizerConfig(max_evals=300, convergence_tol=0.0))
        assert abs(x[0]) < 0.1

    def test_never_worse_than_start(self):
        # objective with a cliff: the start is near-optimal
        def f(v):
            return 100.0 if abs(v[0]) > 0.4 else v[0] ** 2

        x, best = nelder_mead(f, [0.0], OptimizerConfig(max_evals=50, initial_simplex_scale=2.0))
        assert best <= f([0.0])

    def test_respects_eval_budget(self):
        calls = []

        def f(v):
            calls.append(1)
            return float(np.sum(np.square(v)))

        nelder_mead(f, [1.0, 2.0, 3.0], OptimizerConfig(max_evals=25, convergence_tol=0.0))
        assert len(calls) <= 25

    def test_non_finite_objective_surfaces_params(self):
        def f(v):
            return np.nan if v[0] > 1.2 else v[0] ** 2

        with pytest.raises(OptimizationError) as err:
            nelder_mead(f, [1.0], OptimizerConfig(max_evals=100, initial_simplex_scale=1.0))
        assert err.value.params is not None


class TestTrainQaoa:
    def setup_method(self):
        self.model = qubo_to_ising(random_qubo(3, 31))
        self.est = EstimatorConfig(method="holcus")

    def test_never_worse_than_zero_angle_baseline(self):
        trace = train_qaoa(self.model, 1, self.est, OptimizerConfig(max_evals=40, restarts=2, seed=0))
        assert trace.best_value <= self.model.offset + 1e-12

    def test_variational_bound(self):
        model = qubo_to_ising(random_qubo(4, 33))
        trace = train_qaoa(model, 3, self.est, OptimizerConfig(max_evals=60, restarts=2, seed=1))
        ground = np.linalg.eigvalsh(ising_dense_matrix(model))[0]
        assert trace.best_value >= ground - 1e-9

    def test_deterministic(self):
        cfg = OptimizerConfig(max_evals=30, restarts=2, seed=7)
        est = EstimatorConfig(method="holcus", shots=128, seed=5)
        a = train_qaoa(self.model, 1, est, cfg)
        b = train_qaoa(self.model, 1, est, cfg)
        assert a.best_value == b.best_value
        assert np.array_equal(a.best_params.to_vector(), b.best_params.to_vector())
        assert [v for _, v, _ in a.evaluations] == [v for _, v, _ in b.evaluations]

    def test_restart_monotonicity(self):
        est = EstimatorConfig(method="holcus")
        values = []
        for restarts in (1, 2, 3):
            cfg = OptimizerConfig(max_evals=30, restarts=restarts, seed=11)
            values.append(train_qaoa(self.model, 1, est, cfg).best_value)
        assert values[1] <= values[0] + 1e-12
        assert values[2] <= values[1] + 1e-12

    def test_circuit_accounting_per_method(self):
        # 1 circuit per evaluation for the combined method, M per-term circuits
        # for the per-term method, aggregated across restarts.
        from holcus.pauli_lcu import from_ising

        M = from_ising(self.model).num_terms
        cfg = OptimizerConfig(max_evals=12, restarts=2, seed=3)
        t_holcus = train_qaoa(self.model, 1, EstimatorConfig(method="holcus"), cfg)
        t_had = train_qaoa(self.model, 1, EstimatorConfig(method="hadamard"), cfg)
        assert t_holcus.total_circuits <= 12 * 2
        assert t_had.total_circuits == M * (t_had.total_circuits // M)
        assert t_had.total_circuits > t_holcus.total_circuits

    def test_best_value_is_min_of_trace(self):
        trace = train_qaoa(self.model, 1, self.est, OptimizerConfig(max_evals=25, restarts=1))
        assert trace.best_value == pytest.approx(min(v for _, v, _ in trace.evaluations))

    def test_p_zero_rejected(self):
        with pytest.raises(ValueError):
            train_qaoa(self.model, 0, self.est, OptimizerConfig())

    def test_trace_csv(self):
        trace = train_qaoa(self.model, 1, self.est, OptimizerConfig(max_evals=10, restarts=1))
        text = trace_to_csv(trace)
        lines = text.strip().splitlines()
        assert lines[0].startswith("eval_index")
        assert len(lines) == len(trace.evaluations) + 1
