"""QAOA ansatz construction and the exact (noise-free) training oracle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, append, exp_x, exp_z, exp_zz, h, run
from .qubo_ising import IsingModel
from .statevector import MAX_QUBITS, CapacityError, pauli_expectation


@dataclass(frozen=True)
class QaoaParams:
    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        if len(self.gammas) != len(self.betas):
            raise ValueError(
                f"need as many gammas ({len(self.gammas)}) as betas ({len(self.betas)})"
            )

    @property
    def p(self) -> int:
        return len(self.gammas)

    @staticmethod
    def from_vector(vec) -> "QaoaParams":
        vec = np.asarray(vec, dtype=float)
        half = len(vec) // 2
        return QaoaParams(tuple(vec[:half]), tuple(vec[half:]))

    def to_vector(self) -> np.ndarray:
        return np.array(self.gammas + self.betas, dtype=float)


def build_ansatz(model: IsingModel, params: QaoaParams) -> Circuit:
    """Uniform superposition, then p layers of problem-phase evolution
    e^{i gamma H_P} followed by the mixer e^{i beta X} on every qubit.

    Phase gates take the evolution angle directly: EXP_Z(gamma * h_i) and
    EXP_ZZ(gamma * J_ij), quadratic terms in ascending (i, j) order.
    """
    if model.n < 1:
        raise ValueError("model needs at least one spin")
    circ = Circuit(model.n)
    for q in range(model.n):
        circ = append(circ, h(q))
    for layer in range(params.p):
        gamma = params.gammas[layer]
        beta = params.betas[layer]
        for i in range(model.n):
            if model.h[i] != 0.0:
                circ = append(circ, exp_z(gamma * model.h[i], i))
        for (i, j), c in sorted(model.J.items()):
            if c != 0.0:
                circ = append(circ, exp_zz(gamma * c, i, j))
        for q in range(model.n):
            circ = append(circ, exp_x(beta, q))
    return circ


def exact_expectation(model: IsingModel, params: QaoaParams) -> float:
    """<psi|H_P|psi> on the ansatz output, term by term, with no sampling."""
    if model.n > MAX_QUBITS:
        raise CapacityError(f"n = {model.n} exceeds simulator capacity {MAX_QUBITS}")
    state = run(build_ansatz(model, params))
    value = model.offset
    for i in range(model.n):
        if model.h[i] != 0.0:
            value += model.h[i] * pauli_expectation(state, {i: "Z"}).real
    for (i, j), c in model.J.items():
        if c != 0.0:
            value += c * pauli_expectation(state, {i: "Z", j: "Z"}).real
    return float(value)
