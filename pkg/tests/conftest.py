"""Shared oracle helpers.

Everything here recomputes expected values along an independent route:
full matrices come from explicit basis-state enumeration (never from the
package's strided kernels), rotations from scipy's expm (never from the
package's closed forms), and Hamiltonians from Kronecker products.
"""

import numpy as np
import pytest
from scipy.linalg import expm

from holcus.circuit import Circuit, Gate

I2 = np.eye(2, dtype=complex)
PAULI = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
H_MAT = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
S_MAT = np.diag([1, 1j]).astype(complex)
SWAP_MAT = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def pauli_full_matrix(ops: dict, n: int) -> np.ndarray:
    """Kron product, qubit 0 least significant."""
    mat = np.eye(1, dtype=complex)
    for q in range(n):
        mat = np.kron(PAULI[ops.get(q, "I")], mat)
    return mat


def local_gate_matrix(gate: Gate) -> np.ndarray:
    """Local matrix of a gate, rotations via expm."""
    if gate.kind == "H":
        return H_MAT
    if gate.kind == "X":
        return PAULI["X"]
    if gate.kind == "S":
        return S_MAT
    if gate.kind == "S_DAGGER":
        return S_MAT.conj().T
    if gate.kind == "EXP_X":
        return expm(1j * gate.params[0] * PAULI["X"])
    if gate.kind == "EXP_Z":
        return expm(1j * gate.params[0] * PAULI["Z"])
    if gate.kind == "EXP_ZZ":
        return expm(1j * gate.params[0] * np.kron(PAULI["Z"], PAULI["Z"]))
    if gate.kind == "SWAP":
        return SWAP_MAT
    return gate.matrix


def embed_full_matrix(local: np.ndarray, targets, controls, n: int) -> np.ndarray:
    """2^n matrix of a controlled gate by explicit column enumeration."""
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    k = len(targets)
    for col in range(dim):
        if any(((col >> q) & 1) != v for q, v in controls):
            out[col, col] = 1.0
            continue
        t_in = 0
        base = col
        for j, q in enumerate(targets):
            t_in |= ((col >> q) & 1) << j
            base &= ~(1 << q)
        for t_out in range(1 << k):
            row = base
            for j, q in enumerate(targets):
                row |= ((t_out >> j) & 1) << q
            out[row, col] = local[t_out, t_in]
    return out


def circuit_full_matrix(circ: Circuit) -> np.ndarray:
    mat = np.eye(1 << circ.num_qubits, dtype=complex)
    for g in circ.gates:
        mat = embed_full_matrix(local_gate_matrix(g), g.targets, g.controls, circ.num_qubits) @ mat
    return mat


def ising_dense_matrix(model) -> np.ndarray:
    """offset*I + sum h_i Z_i + sum J_ij Z_i Z_j as an explicit matrix."""
    n = model.n
    mat = model.offset * np.eye(1 << n, dtype=complex)
    for i in range(n):
        if model.h[i] != 0.0:
            mat = mat + model.h[i] * pauli_full_matrix({i: "Z"}, n)
    for (i, j), c in model.J.items():
        if c != 0.0:
            mat = mat + c * pauli_full_matrix({i: "Z", j: "Z"}, n)
    return mat


def lcu_dense_matrix(dec, n: int) -> np.ndarray:
    """sum_k alpha_k e^{i theta_k} U_k assembled from Kronecker products."""
    mat = np.zeros((1 << n, 1 << n), dtype=complex)
    for term in dec.terms:
        mat = mat + term.alpha * np.exp(1j * term.theta) * pauli_full_matrix(term.unitary.ops, n)
    return mat


def random_prep_circuit(n: int, rng: np.random.Generator, depth: int = 12) -> Circuit:
    """Random single/two-qubit gate sequence over the IR's named kinds."""
    from holcus.circuit import append, exp_x, exp_z, exp_zz, h, s, s_dagger, swap, x

    circ = Circuit(n)
    for _ in range(depth):
        choice = rng.integers(0, 8)
        q = int(rng.integers(0, n))
        if choice == 0:
            circ = append(circ, h(q))
        elif choice == 1:
            circ = append(circ, x(q))
        elif choice == 2:
            circ = append(circ, s(q))
        elif choice == 3:
            circ = append(circ, s_dagger(q))
        elif choice == 4:
            circ = append(circ, exp_x(float(rng.uniform(-np.pi, np.pi)), q))
        elif choice == 5:
            circ = append(circ, exp_z(float(rng.uniform(-np.pi, np.pi)), q))
        elif n >= 2:
            q2 = int(rng.integers(0, n - 1))
            q2 = q2 if q2 != q else n - 1
            if choice == 6:
                circ = append(circ, exp_zz(float(rng.uniform(-np.pi, np.pi)), q, q2))
            else:
                circ = append(circ, swap(q, q2))
    return circ


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
