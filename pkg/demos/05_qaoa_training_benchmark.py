"""End-to-end QAOA training plus a miniature speedup benchmark.

Trains the angles of a small QUBO with the per-term estimator and with the
single-circuit estimator under identical budgets, then reproduces the wall
time, speedup, and scaling data files the CLI harness emits. Runs in well
under a minute; widen the grids through holcus-bench for a longer study.
"""

import tempfile
import time
from pathlib import Path

from holcus import (
    EstimatorConfig,
    OptimizerConfig,
    brute_force_min,
    qubo_to_ising,
    random_qubo,
    train_qaoa,
)
from holcus.bench import aggregate_speedup, emit_plot_data, exp1_config, run_experiment

# --- one instance, trained twice -------------------------------------------
qubo = random_qubo(5, seed=42)
model = qubo_to_ising(qubo)
best_bits, best_cost = brute_force_min(qubo)
print(f"n = 5 instance, brute-force optimum {best_cost:.4f} at {best_bits}")

opt = OptimizerConfig(max_evals=40, restarts=3, seed=0)
for method in ("hadamard", "holcus"):
    cfg = EstimatorConfig(method=method, shots=2000, seed=1)
    t0 = time.perf_counter()
    trace = train_qaoa(model, 2, cfg, opt)
    elapsed = time.perf_counter() - t0
    print(f"{method:9s}: best {trace.best_value:+.4f} in {elapsed:.2f}s "
          f"({trace.total_circuits} circuits, {trace.total_shots} shots)")

# --- a tiny benchmark grid ---------------------------------------------------
workdir = Path(tempfile.mkdtemp())
cfg = exp1_config(
    n_min=3,
    n_max=5,
    p_values=(1,),
    instances_per_n=2,
    shots=512,
    restarts=1,
    max_evals=15,
    master_seed=7,
    output_path=str(workdir / "exp1.csv"),
)
records = run_experiment(cfg)
print(f"\n{len(records)} benchmark records -> {cfg.output_path}")

rows, skipped = aggregate_speedup(records)
print("n  p  mean t_perterm/t_single   (min..max over instances)")
for row in rows:
    print(f"{row.n}  {row.p}  {row.mean_ratio:20.2f}   ({row.min_ratio:.2f}..{row.max_ratio:.2f})")

for kind in ("time_vs_n", "speedup_vs_n", "holcus_scaling"):
    out = workdir / f"{kind}.dat"
    emit_plot_data(records, kind, out)
    print(f"plot data: {out}")
