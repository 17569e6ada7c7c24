"""The four expectation-value estimators and their resource accounting.

All four consume a state-preparation circuit on n qubits plus an Ising model
and return an EstimateResult:

  raw        - sample the state register, average the spin energies.
  hadamard   - one Hadamard-test circuit per LCU term, weighted sum.
  holcus     - single combined Hadamard+LCU circuit measuring one qubit;
               value = offset + N * (2 P(0) - 1).
  holcus_div - one combined circuit per coefficient group, uniform ancilla
               preparation inside each group.

Exact mode (shots=EXACT) reads marginal probabilities analytically, which
separates method error from shot noise; finite mode draws seeded multinomial
samples of the measured qubit. Imaginary-part estimates (the S-dagger
pathway) omit the real constant offset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import (
    CLOSED,
    Circuit,
    Gate,
    ResourceReport,
    append,
    dense,
    h,
    make_register_map,
    resource_report,
    run,
    s_dagger,
)
from .pauli_lcu import (
    LcuDecomposition,
    LcuTerm,
    PauliString,
    build_prep_unitaries,
    build_select_circuit,
    build_uniform_prep_circuit,
    decomposition_from_terms,
    from_ising,
    group_by_coefficient,
    inverted,
)
from .qubo_ising import IsingModel
from .statevector import StateVector, derive_seed, marginal_probabilities, sample_counts

EXACT = None
REAL = "real"
IMAGINARY = "imaginary"
METHODS = ("raw", "hadamard", "holcus", "holcus_div")


@dataclass(frozen=True)
class EstimatorConfig:
    method: str
    shots: int | None = EXACT
    seed: int = 0
    part: str = REAL
    grouping_tol: float = 1e-9

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.shots is not EXACT and self.shots < 1:
            raise ValueError(f"shots must be >= 1 or EXACT, got {self.shots}")
        if self.part not in (REAL, IMAGINARY):
            raise ValueError(f"part must be {REAL!r} or {IMAGINARY!r}")

    @property
    def exact(self) -> bool:
        return self.shots is EXACT


@dataclass
class EstimateResult:
    value: float
    std_error: float
    circuits_used: int
    shots_used: int
    max_qubits: int
    resources: tuple[ResourceReport, ...]


def hadamard_test_circuit(prep: Circuit, unitary: PauliString, part: str = REAL) -> Circuit:
    """Interference circuit for Re or Im of <psi|U|psi> on one extra qubit.

    Re[<U>] = 2 P(0) - 1 on the ancilla; with the S-dagger inserted the same
    statistic yields Im[<U>].
    """
    n = prep.num_qubits
    anc = n
    circ = Circuit(n + 1, (), make_register_map(n, 0, hadamard=True))
    for g in prep.gates:
        circ = append(circ, g)
    circ = append(circ, h(anc))
    if part == IMAGINARY:
        circ = append(circ, s_dagger(anc))
    if unitary.ops:
        circ = append(circ, dense(unitary.local_matrix(), unitary.support, [(anc, CLOSED)]))
    circ = append(circ, h(anc))
    return circ


def _remap(gate: Gate, mapping: dict[int, int]) -> Gate:
    return Gate(
        gate.kind,
        tuple(mapping[q] for q in gate.targets),
        gate.params,
        tuple((mapping[q], v) for q, v in gate.controls),
        gate.matrix,
    )


def holcus_circuit(
    prep: Circuit, dec: LcuDecomposition, part: str = REAL, uniform: bool = False
) -> Circuit:
    """Single combined circuit: Hadamard qubit, LCU ancillas, state register.

    Stages: H (and optional S-dagger) on the Hadamard qubit, controlled
    prepare on the ancillas, uncontrolled state prep, the select stage, the
    controlled un-prepare, and a final H. Only the Hadamard qubit is measured.

    With uniform=True the prepare/un-prepare stages are the controlled-H
    ladder (valid when the decomposition is dense with every slot weighted
    equally, e.g. an equal-coefficient group of power-of-two size).
    """
    n = prep.num_qubits
    m = dec.num_ancillas
    reg = make_register_map(n, m, hadamard=True)
    hq = reg["hadamard"][0]
    anc = reg["lcu_ancilla"]
    circ = Circuit(n + m + 1, (), reg)
    circ = append(circ, h(hq))
    if part == IMAGINARY:
        circ = append(circ, s_dagger(hq))
    if uniform:
        if dec.layout != "dense" or dec.num_terms != 1 << m:
            raise ValueError("uniform prep needs a dense layout filling every slot")
        ladder = build_uniform_prep_circuit(m)
        mapping = {j: anc[j] for j in range(m)}
        mapping[m] = hq
        prep_gates = tuple(_remap(g, mapping) for g in ladder.gates)
        unprep_gates = tuple(_remap(g, mapping) for g in inverted(ladder).gates)
    else:
        v, v_hat = build_prep_unitaries(dec)
        prep_gates = (dense(v, anc, [(hq, CLOSED)]),)
        unprep_gates = (dense(v_hat.conj().T, anc, [(hq, CLOSED)]),)
    for g in prep_gates:
        circ = append(circ, g)
    for g in prep.gates:
        circ = append(circ, g)
    for g in build_select_circuit(dec, reg).gates:
        circ = append(circ, g)
    for g in unprep_gates:
        circ = append(circ, g)
    circ = append(circ, h(hq))
    return circ


def _p0(state: StateVector, qubit: int, cfg: EstimatorConfig, *path: int) -> float:
    """P(measuring 0) on one qubit: analytic in exact mode, sampled otherwise."""
    dist = marginal_probabilities(state, [qubit])
    p0 = dist.probabilities.get("0", 0.0)
    if cfg.exact:
        return p0
    counts = sample_counts(dist, cfg.shots, derive_seed(cfg.seed, *path))
    return counts.counts.get("0", 0) / cfg.shots


def _finalize(cfg, value, variance, circuits, reports, max_qubits) -> EstimateResult:
    if cfg.exact:
        return EstimateResult(float(value), 0.0, circuits, 0, max_qubits, tuple(reports))
    return EstimateResult(
        float(value), math.sqrt(variance), circuits, circuits * cfg.shots, max_qubits, tuple(reports)
    )


def estimate_raw(prep: Circuit, model: IsingModel, cfg: EstimatorConfig) -> EstimateResult:
    """Direct sampling of the state register; each sample scores its spin energy."""
    n = prep.num_qubits
    state = run(prep)
    probs = np.abs(state.amplitudes) ** 2
    idx = np.arange(1 << n)
    spins = 1.0 - 2.0 * ((idx[:, None] >> np.arange(n)[None, :]) & 1)
    energies = model.offset + spins @ model.h
    for (i, j), c in model.J.items():
        energies = energies + c * spins[:, i] * spins[:, j]
    report = resource_report(prep)
    if cfg.exact:
        return _finalize(cfg, probs @ energies, 0.0, 1, [report], n)
    dist = marginal_probabilities(state)
    counts = sample_counts(dist, cfg.shots, derive_seed(cfg.seed, 0))
    total = 0.0
    total_sq = 0.0
    for key, c in counts.counts.items():
        e = energies[int(key, 2)]
        total += c * e
        total_sq += c * e * e
    mean = total / cfg.shots
    var = max(total_sq / cfg.shots - mean * mean, 0.0) / cfg.shots
    return _finalize(cfg, mean, var, 1, [report], n)


def estimate_hadamard(prep: Circuit, model: IsingModel, cfg: EstimatorConfig) -> EstimateResult:
    """Per-term Hadamard tests: value = offset + sum_k c_k (2 P_k(0) - 1)."""
    dec = from_ising(model)
    value = model.offset if cfg.part == REAL else 0.0
    variance = 0.0
    reports = []
    for k, term in enumerate(dec.terms):
        circ = hadamard_test_circuit(prep, term.unitary, cfg.part)
        reports.append(resource_report(circ))
        p0 = _p0(run(circ), prep.num_qubits, cfg, k)
        c_k = float(term.signed_coefficient.real)
        value += c_k * (2.0 * p0 - 1.0)
        if not cfg.exact:
            variance += (2.0 * c_k) ** 2 * p0 * (1.0 - p0) / cfg.shots
    return _finalize(cfg, value, variance, dec.num_terms, reports, prep.num_qubits + 1)


def estimate_holcus(prep: Circuit, model: IsingModel, cfg: EstimatorConfig) -> EstimateResult:
    """Single-circuit estimate: value = offset + N * (2 P(0) - 1)."""
    dec = from_ising(model)
    circ = holcus_circuit(prep, dec, cfg.part)
    p0 = _p0(run(circ), prep.num_qubits + dec.num_ancillas, cfg, 0)
    norm = dec.normalization
    value = (model.offset if cfg.part == REAL else 0.0) + norm * (2.0 * p0 - 1.0)
    variance = 0.0 if cfg.exact else (2.0 * norm) ** 2 * p0 * (1.0 - p0) / cfg.shots
    return _finalize(
        cfg, value, variance, 1, [resource_report(circ)], prep.num_qubits + dec.num_ancillas + 1
    )


def _group_layout(group_size: int) -> tuple[str, int]:
    """(layout, ancilla count) for one coefficient group; 0 means plain
    Hadamard test, dense powers of two admit the uniform ladder."""
    if group_size == 1:
        return "hadamard", 0
    if group_size & (group_size - 1) == 0:
        return "dense", group_size.bit_length() - 1
    return "shifted", math.ceil(math.log2(group_size + 1))


def estimate_holcus_div(prep: Circuit, model: IsingModel, cfg: EstimatorConfig) -> EstimateResult:
    """Grouped estimate: one combined circuit per coefficient group.

    The group phase is factored out front, so the in-circuit preparation is
    real and uniform: value = offset + sum_g N_g (2 P_g(0) - 1) with
    N_g = |group| * alpha_g * sign_g.
    """
    dec = from_ising(model)
    groups = group_by_coefficient(dec, cfg.grouping_tol)
    value = model.offset if cfg.part == REAL else 0.0
    variance = 0.0
    reports = []
    max_anc = 0
    for g_idx, group in enumerate(groups):
        sign = float(np.cos(group.common_theta))
        size = len(group.term_indices)
        scale = size * group.common_alpha * sign
        layout, anc = _group_layout(size)
        max_anc = max(max_anc, anc)
        members = [dec.terms[k] for k in group.term_indices]
        if layout == "hadamard":
            circ = hadamard_test_circuit(prep, members[0].unitary, cfg.part)
        else:
            flat = [LcuTerm(t.alpha, 0.0, t.unitary) for t in members]
            sub = decomposition_from_terms(flat, layout)
            circ = holcus_circuit(prep, sub, cfg.part, uniform=(layout == "dense"))
        reports.append(resource_report(circ))
        p0 = _p0(run(circ), prep.num_qubits + anc, cfg, g_idx)
        value += scale * (2.0 * p0 - 1.0)
        if not cfg.exact:
            variance += (2.0 * scale) ** 2 * p0 * (1.0 - p0) / cfg.shots
    return _finalize(cfg, value, variance, len(groups), reports, prep.num_qubits + max_anc + 1)


_DISPATCH = {
    "raw": estimate_raw,
    "hadamard": estimate_hadamard,
    "holcus": estimate_holcus,
    "holcus_div": estimate_holcus_div,
}


def estimate(prep: Circuit, model: IsingModel, cfg: EstimatorConfig) -> EstimateResult:
    return _DISPATCH[cfg.method](prep, model, cfg)


ESTIMATE_CSV_HEADER = (
    "method,part,shots,seed,value,std_error,circuits_used,shots_used,"
    "max_qubits,total_gates,total_controlled_gates,max_depth"
)


def result_to_csv_row(cfg: EstimatorConfig, result: EstimateResult) -> str:
    """Flatten an estimate and its resource reports into one CSV row."""
    shots = "exact" if cfg.exact else str(cfg.shots)
    return ",".join(
        [
            cfg.method,
            cfg.part,
            shots,
            str(cfg.seed),
            repr(result.value),
            repr(result.std_error),
            str(result.circuits_used),
            str(result.shots_used),
            str(result.max_qubits),
            str(sum(r.gate_count for r in result.resources)),
            str(sum(r.controlled_gate_count for r in result.resources)),
            str(max((r.logical_depth for r in result.resources), default=0)),
        ]
    )
