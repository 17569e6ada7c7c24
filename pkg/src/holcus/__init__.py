"""Statevector simulator and single-circuit LCU expectation-value toolkit.

The package bundles a dense statevector engine, a small gate IR with
open/closed multi-controls, LCU decompositions of Ising Hamiltonians, the
combined Hadamard+LCU estimator alongside per-term Hadamard-test and raw
sampling baselines, and a QAOA training loop with a benchmark harness.
"""

from .circuit import (
    CLOSED,
    OPEN,
    Circuit,
    Gate,
    ResourceReport,
    add_control,
    append,
    circuit_from_text,
    circuit_to_text,
    resource_report,
    run,
)
from .estimators import (
    EXACT,
    IMAGINARY,
    REAL,
    EstimateResult,
    EstimatorConfig,
    estimate,
    estimate_hadamard,
    estimate_holcus,
    estimate_holcus_div,
    estimate_raw,
    hadamard_test_circuit,
    holcus_circuit,
)
from .optimize import OptimizerConfig, TrainingTrace, nelder_mead, train_qaoa
from .pauli_lcu import (
    CoefficientGroup,
    LcuDecomposition,
    LcuTerm,
    PauliString,
    build_prep_unitaries,
    build_select_circuit,
    build_uniform_prep_circuit,
    decomposition_from_terms,
    from_ising,
    group_by_coefficient,
)
from .qaoa import QaoaParams, build_ansatz, exact_expectation
from .qubo_ising import (
    IsingModel,
    QuboInstance,
    brute_force_min,
    ising_energy,
    qubo_cost,
    qubo_to_ising,
    random_qubo,
    read_qubo_file,
    write_qubo_file,
)
from .statevector import (
    CapacityError,
    OutcomeDistribution,
    ShotCounts,
    StateVector,
    UnitarityError,
    apply_unitary,
    derive_seed,
    marginal_probabilities,
    new_basis_state,
    pauli_expectation,
    sample_counts,
)

__version__ = "0.1.0"
