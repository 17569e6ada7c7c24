"""Dense statevector simulation engine.

Amplitudes are stored as a flat complex128 array of length 2**num_qubits.
Qubit 0 is the least-significant bit of the basis index; bitstrings are
rendered most-significant-qubit-first, so basis index 2 on two qubits is
the string "10" (qubit 1 set, qubit 0 clear).

Gate application works on strided index blocks (gather, multiply by the
k-qubit matrix, scatter), which is O(2^n * 2^k) per gate and never builds
a 2^n x 2^n operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_QUBITS = 24

OPEN = 0
CLOSED = 1

_PAULI_FLIPS = {"X": True, "Y": True, "Z": False}


class CapacityError(ValueError):
    """Requested problem size exceeds the simulator guard."""


class UnitarityError(ValueError):
    """A matrix failed the optional unitarity validation."""


@dataclass
class StateVector:
    """Dense n-qubit state: 2^n complex amplitudes, norm 1."""

    num_qubits: int
    amplitudes: np.ndarray

    @property
    def dim(self) -> int:
        return 1 << self.num_qubits

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())


@dataclass
class OutcomeDistribution:
    """Measurement probabilities over an ordered subset of qubits.

    Key character j corresponds to qubit_indices[j]; passing the qubits in
    descending index order therefore yields the canonical MSB-first
    rendering of basis indices.
    """

    qubit_indices: tuple[int, ...]
    probabilities: dict[str, float]


@dataclass
class ShotCounts:
    """Multinomial sample of an OutcomeDistribution."""

    qubit_indices: tuple[int, ...]
    counts: dict[str, int]
    total_shots: int
    seed: int


def new_basis_state(num_qubits: int, basis_index: int = 0) -> StateVector:
    """Computational basis state |basis_index> on num_qubits qubits."""
    if num_qubits < 1:
        raise ValueError(f"num_qubits must be >= 1, got {num_qubits}")
    if num_qubits > MAX_QUBITS:
        raise CapacityError(f"num_qubits={num_qubits} exceeds guard of {MAX_QUBITS}")
    dim = 1 << num_qubits
    if not 0 <= basis_index < dim:
        raise ValueError(f"basis_index {basis_index} out of range for {num_qubits} qubits")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[basis_index] = 1.0
    return StateVector(num_qubits, amps)


def _check_unitary(matrix: np.ndarray, tol: float = 1e-10) -> None:
    dim = matrix.shape[0]
    err = np.max(np.abs(matrix.conj().T @ matrix - np.eye(dim)))
    if err > tol:
        raise UnitarityError(f"matrix is not unitary (deviation {err:.2e})")


def _base_indices(num_qubits: int, targets: tuple[int, ...]) -> np.ndarray:
    """All basis indices with 0 on every target bit, one per free-bit pattern."""
    free = [q for q in range(num_qubits) if q not in targets]
    pattern = np.arange(1 << len(free), dtype=np.intp)
    base = np.zeros_like(pattern)
    for pos, q in enumerate(free):
        base |= ((pattern >> pos) & 1) << q
    return base


def apply_unitary(
    state: StateVector,
    matrix: np.ndarray,
    targets: list[int] | tuple[int, ...],
    controls: list[tuple[int, int]] | tuple[tuple[int, int], ...] = (),
    validate: bool = False,
) -> StateVector:
    """Apply a 2^k x 2^k unitary to the target qubits, in place.

    Bit j of the matrix row/column index corresponds to targets[j]
    (LSB-first, consistent with the global qubit-0-is-LSB convention).
    Controls are (qubit, value) pairs: value 1 is a closed control, 0 an
    open control; the matrix acts only on basis components matching every
    control, all other components are untouched.
    """
    targets = tuple(targets)
    controls = tuple(controls)
    n = state.num_qubits
    k = len(targets)
    if len(set(targets)) != k:
        raise ValueError(f"duplicate target qubits in {targets}")
    control_qubits = tuple(q for q, _ in controls)
    if set(targets) & set(control_qubits):
        raise ValueError(f"targets {targets} overlap controls {control_qubits}")
    for q in targets + control_qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} out of range for {n}-qubit state")
    for _, v in controls:
        if v not in (OPEN, CLOSED):
            raise ValueError(f"control polarity must be 0 (open) or 1 (closed), got {v}")
    matrix = np.asarray(matrix, dtype=np.complex128)
    if matrix.shape != (1 << k, 1 << k):
        raise ValueError(f"matrix shape {matrix.shape} does not match {k} targets")
    if validate:
        _check_unitary(matrix)

    base = _base_indices(n, targets)
    for q, v in controls:
        base = base[((base >> q) & 1) == v]
    if base.size == 0:
        return state
    offsets = np.zeros(1 << k, dtype=np.intp)
    sub = np.arange(1 << k, dtype=np.intp)
    for j, q in enumerate(targets):
        offsets |= ((sub >> j) & 1) << q
    idx = offsets[:, None] + base[None, :]
    state.amplitudes[idx] = matrix @ state.amplitudes[idx]
    return state


def marginal_probabilities(state: StateVector, qubits: list[int] | tuple[int, ...] | None = None) -> OutcomeDistribution:
    """Marginal distribution over the given qubits (default: all, MSB-first)."""
    n = state.num_qubits
    if qubits is None:
        qubits = tuple(range(n - 1, -1, -1))
    qubits = tuple(qubits)
    if len(qubits) == 0:
        raise ValueError("qubit list must be non-empty")
    if len(set(qubits)) != len(qubits):
        raise ValueError(f"duplicate qubits in {qubits}")
    for q in qubits:
        if not 0 <= q < n:
            raise ValueError(f"qubit {q} out of range for {n}-qubit state")
    probs = np.abs(state.amplitudes) ** 2
    # Axis n-1-q of the reshaped tensor corresponds to qubit q.
    tensor = probs.reshape([2] * n)
    keep_axes = [n - 1 - q for q in qubits]
    drop_axes = tuple(ax for ax in range(n) if ax not in keep_axes)
    if drop_axes:
        tensor = tensor.sum(axis=drop_axes)
    # After the sum the remaining axes are the kept ones in ascending axis
    # order; permute so that axis j corresponds to qubits[j].
    remaining = sorted(keep_axes)
    tensor = np.moveaxis(tensor, [remaining.index(ax) for ax in keep_axes], range(len(qubits)))
    flat = tensor.reshape(-1)
    out: dict[str, float] = {}
    width = len(qubits)
    for i, p in enumerate(flat):
        if p > 0.0:
            out[format(i, f"0{width}b")] = float(p)
    return OutcomeDistribution(qubits, out)


def sample_counts(distribution: OutcomeDistribution, shots: int, seed: int) -> ShotCounts:
    """Multinomial draw from a distribution; deterministic for a given seed."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    keys = sorted(distribution.probabilities)
    pvals = np.array([distribution.probabilities[k] for k in keys], dtype=float)
    pvals = pvals / pvals.sum()
    rng = np.random.default_rng(seed)
    draws = rng.multinomial(shots, pvals)
    counts = {k: int(c) for k, c in zip(keys, draws) if c > 0}
    return ShotCounts(distribution.qubit_indices, counts, shots, seed)


def pauli_expectation(state: StateVector, pauli) -> complex:
    """<psi|P|psi> for a Pauli string, computed without sampling.

    Accepts a PauliString or a plain {qubit: "X"|"Y"|"Z"} mapping.
    """
    ops = getattr(pauli, "ops", pauli)
    n = state.num_qubits
    for q, op in ops.items():
        if not 0 <= q < n:
            raise ValueError(f"pauli qubit {q} out of range for {n}-qubit state")
        if op not in _PAULI_FLIPS:
            raise ValueError(f"unknown pauli operator {op!r}")
    flip = 0
    sign_mask = 0
    num_y = 0
    for q, op in ops.items():
        if _PAULI_FLIPS[op]:
            flip |= 1 << q
        if op in ("Z", "Y"):
            sign_mask |= 1 << q
        if op == "Y":
            num_y += 1
    idx = np.arange(state.dim, dtype=np.intp)
    signs = 1.0 - 2.0 * (np.bitwise_count(idx & sign_mask) & 1)
    val = np.sum(signs * state.amplitudes * np.conj(state.amplitudes[idx ^ flip]))
    return complex((1j ** num_y) * val)


def derive_seed(master_seed: int, *path: int) -> int:
    """Counter-based split of a master seed into independent streams.

    The same (master_seed, path) always yields the same child seed, no
    matter in which order streams are requested.
    """
    seq = np.random.SeedSequence(master_seed, spawn_key=tuple(path))
    return int(seq.generate_state(1, dtype=np.uint64)[0])
