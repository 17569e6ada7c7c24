"""Benchmark harness: desk-scale reruns of the two training experiments.

Experiment 1 trains QAOA with the per-term Hadamard estimator and with the
single-circuit estimator on the same seeded instances and logs wall times for
the speedup comparison. Experiment 2 tracks the single-circuit method alone
over a growing variable count. Wall time covers circuit creation plus
training, never the QUBO -> Ising mapping or instance generation.

Records append to the output CSV as they complete, so a crashed run keeps
everything finished so far. Instance seeds derive from the master seed by
counter splitting, independent of scheduling.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .estimators import EXACT, EstimatorConfig
from .optimize import OptimizerConfig, train_qaoa
from .qaoa import QaoaParams, exact_expectation
from .qubo_ising import brute_force_min, qubo_to_ising, random_qubo
from .statevector import CapacityError, derive_seed

BENCH_CSV_HEADER = (
    "n,p,instance_seed,method,wall_time_seconds,best_value,"
    "exact_value_of_best_params,brute_force_optimum,circuits_total,shots_total,max_qubits,error"
)


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str = "single"  # exp1_compare | exp2_scaling | single
    n_min: int = 3
    n_max: int = 6
    p_values: tuple[int, ...] = (1, 2, 3)
    instances_per_n: int = 2
    shots: int | None = 10_000
    restarts: int = 3
    methods: tuple[str, ...] = ("hadamard", "holcus")
    master_seed: int = 0
    output_path: str = "bench.csv"
    max_evals: int = 60
    threads: int = 1

    def __post_init__(self):
        if self.instances_per_n < 1:
            raise ValueError("instances_per_n must be >= 1")
        if self.n_min < 1 or self.n_max < self.n_min:
            raise ValueError(f"bad n range [{self.n_min}, {self.n_max}]")


def exp1_config(**overrides) -> ExperimentConfig:
    """Hadamard vs single-circuit comparison grid (desk scale: n up to 7)."""
    base = dict(
        experiment="exp1_compare",
        n_min=3,
        n_max=7,
        p_values=(1, 2, 3),
        instances_per_n=5,
        methods=("hadamard", "holcus"),
    )
    base.update(overrides)
    return ExperimentConfig(**base)


def exp2_config(**overrides) -> ExperimentConfig:
    """Scaling grid for the single-circuit method alone (desk scale: n up to 9)."""
    base = dict(
        experiment="exp2_scaling",
        n_min=3,
        n_max=9,
        p_values=(3,),
        instances_per_n=10,
        methods=("holcus",),
    )
    base.update(overrides)
    return ExperimentConfig(**base)


@dataclass
class BenchmarkRecord:
    n: int
    p: int
    instance_seed: int
    method: str
    wall_time_seconds: float = 0.0
    best_value: float = 0.0
    exact_value_of_best_params: float = 0.0
    brute_force_optimum: float = 0.0
    circuits_total: int = 0
    shots_total: int = 0
    max_qubits: int = 0
    error: str = ""


def record_to_csv_row(rec: BenchmarkRecord) -> str:
    return ",".join(
        [
            str(rec.n),
            str(rec.p),
            str(rec.instance_seed),
            rec.method,
            repr(rec.wall_time_seconds),
            repr(rec.best_value),
            repr(rec.exact_value_of_best_params),
            repr(rec.brute_force_optimum),
            str(rec.circuits_total),
            str(rec.shots_total),
            str(rec.max_qubits),
            rec.error,
        ]
    )


def record_from_csv_row(row: str) -> BenchmarkRecord:
    parts = row.split(",")
    if len(parts) != len(BENCH_CSV_HEADER.split(",")):
        raise ValueError(f"malformed record row: {row!r}")
    return BenchmarkRecord(
        n=int(parts[0]),
        p=int(parts[1]),
        instance_seed=int(parts[2]),
        method=parts[3],
        wall_time_seconds=float(parts[4]) if parts[4] else 0.0,
        best_value=float(parts[5]) if parts[5] else 0.0,
        exact_value_of_best_params=float(parts[6]) if parts[6] else 0.0,
        brute_force_optimum=float(parts[7]) if parts[7] else 0.0,
        circuits_total=int(parts[8]),
        shots_total=int(parts[9]),
        max_qubits=int(parts[10]),
        error=parts[11],
    )


def read_records(path) -> list[BenchmarkRecord]:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != BENCH_CSV_HEADER:
        raise ValueError(f"{path} does not start with the benchmark CSV header")
    return [record_from_csv_row(ln) for ln in lines[1:]]


def _run_one(cfg: ExperimentConfig, n: int, p: int, instance: int, method: str) -> BenchmarkRecord:
    seed = derive_seed(cfg.master_seed, n, instance)
    rec = BenchmarkRecord(n=n, p=p, instance_seed=seed, method=method)
    try:
        qubo = random_qubo(n, seed)
        model = qubo_to_ising(qubo)
        rec.brute_force_optimum = brute_force_min(qubo)[1]
        est_cfg = EstimatorConfig(method=method, shots=cfg.shots, seed=derive_seed(seed, p))
        opt_cfg = OptimizerConfig(
            max_evals=cfg.max_evals, restarts=cfg.restarts, seed=derive_seed(seed, p, 1)
        )
        t0 = time.perf_counter()
        trace = train_qaoa(model, p, est_cfg, opt_cfg)
        rec.wall_time_seconds = time.perf_counter() - t0
        rec.best_value = trace.best_value
        rec.exact_value_of_best_params = exact_expectation(model, trace.best_params)
        rec.circuits_total = trace.total_circuits
        rec.shots_total = trace.total_shots
        rec.max_qubits = _max_qubits_of(method, model)
    except CapacityError as exc:
        rec.error = f"capacity: {exc}"
    return rec


def _max_qubits_of(method: str, model) -> int:
    from .estimators import estimate
    from .qaoa import build_ansatz

    probe = estimate(
        build_ansatz(model, QaoaParams((0.0,), (0.0,))),
        model,
        EstimatorConfig(method=method, shots=EXACT),
    )
    return probe.max_qubits


def run_experiment(cfg: ExperimentConfig, progress=None) -> list[BenchmarkRecord]:
    """Full grid sweep; records are appended to cfg.output_path as they finish."""
    tasks = [
        (n, p, instance, method)
        for n in range(cfg.n_min, cfg.n_max + 1)
        for p in cfg.p_values
        for instance in range(cfg.instances_per_n)
        for method in cfg.methods
    ]
    out = Path(cfg.output_path)
    fresh = not out.exists()
    records = []
    with open(out, "a") as fh:
        if fresh:
            fh.write(BENCH_CSV_HEADER + "\n")
            fh.flush()
        if cfg.threads > 1:
            with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                futures = [pool.submit(_run_one, cfg, *task) for task in tasks]
                for fut in futures:
                    rec = fut.result()
                    records.append(rec)
                    fh.write(record_to_csv_row(rec) + "\n")
                    fh.flush()
                    if progress:
                        progress(rec)
        else:
            for task in tasks:
                rec = _run_one(cfg, *task)
                records.append(rec)
                fh.write(record_to_csv_row(rec) + "\n")
                fh.flush()
                if progress:
                    progress(rec)
    return records


@dataclass
class SpeedupRow:
    n: int
    p: int
    mean_ratio: float
    min_ratio: float
    max_ratio: float
    pairs: int


def aggregate_speedup(
    records: list[BenchmarkRecord], slow: str = "hadamard", fast: str = "holcus"
) -> tuple[list[SpeedupRow], int]:
    """Paired wall-time ratios slow/fast per (n, p); returns rows plus the
    number of records skipped for missing partners."""
    times: dict[tuple[int, int, int, str], float] = {}
    for rec in records:
        if rec.error:
            continue
        times[(rec.n, rec.p, rec.instance_seed, rec.method)] = rec.wall_time_seconds
    ratios: dict[tuple[int, int], list[float]] = {}
    skipped = 0
    seen_pairs = set()
    for (n, p, seed, method) in times:
        if method not in (slow, fast):
            continue
        key = (n, p, seed)
        if key in seen_pairs:
            continue
        seen_pairs.add(key)
        a = times.get((n, p, seed, slow))
        b = times.get((n, p, seed, fast))
        if a is None or b is None:
            skipped += 1
            continue
        ratios.setdefault((n, p), []).append(a / b)
    rows = [
        SpeedupRow(n, p, sum(r) / len(r), min(r), max(r), len(r))
        for (n, p), r in sorted(ratios.items())
    ]
    return rows, skipped


PLOT_KINDS = ("time_vs_n", "speedup_vs_n", "holcus_scaling")


def emit_plot_data(records: list[BenchmarkRecord], kind: str, path) -> None:
    """Plot-ready text: 'series<TAB>x<TAB>y' rows in deterministic order."""
    if not records:
        raise ValueError("no records to plot")
    if kind not in PLOT_KINDS:
        raise ValueError(f"kind must be one of {PLOT_KINDS}")
    lines = [f"# {kind}: series\tx\ty"]
    good = [r for r in records if not r.error]
    if kind == "time_vs_n":
        series: dict[tuple[str, int], dict[int, list[float]]] = {}
        for r in good:
            series.setdefault((r.method, r.p), {}).setdefault(r.n, []).append(r.wall_time_seconds)
        for (method, p), by_n in sorted(series.items()):
            for n, ts in sorted(by_n.items()):
                lines.append(f"{method}_p{p}\t{n}\t{sum(ts) / len(ts)!r}")
    elif kind == "speedup_vs_n":
        rows, _ = aggregate_speedup(good)
        for row in rows:
            lines.append(f"p{row.p}\t{row.n}\t{row.mean_ratio!r}")
    else:
        by_n: dict[int, list[float]] = {}
        for r in good:
            if r.method == "holcus":
                by_n.setdefault(r.n, []).append(r.wall_time_seconds)
        for n, ts in sorted(by_n.items()):
            lines.append(f"holcus\t{n}\t{sum(ts) / len(ts)!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_config_file(path) -> dict[str, str]:
    """key = value lines; '#' starts a comment."""
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"expected 'key = value', got {line!r}")
            key, _, value = line.partition("=")
            out[key.strip()] = value.strip()
    return out
