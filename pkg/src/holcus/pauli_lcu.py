"""Pauli-string algebra and LCU machinery.

A Hamiltonian A = sum_k alpha_k * e^{i theta_k} * U_k is held as a list of
terms with alpha_k > 0, the phase split out as an angle theta_k, and U_k a
Pauli string. The normalization N = sum_k alpha_k rescales the estimator
output back to physical units.

Slot layouts for the ancilla register:

  dense   - slots 0..M-1 on m = ceil(log2(M)) ancillas (m >= 1), the
            textbook arrangement; the term at slot 0 needs an extra closed
            control on the Hadamard qubit in the select stage.
  shifted - slots 1..M on m = ceil(log2(M+1)) ancillas; slot 0 stays empty
            so no select gate ever touches the Hadamard qubit. This is the
            default. When M is a power of two this costs one ancilla more
            than dense.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import CLOSED, Circuit, Gate, append, dense, h, make_register_map, swap

_PAULI_MATS = {
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}

LAYOUTS = ("dense", "shifted")


@dataclass(frozen=True)
class PauliString:
    """Map qubit -> X/Y/Z; identity everywhere else. Empty map = identity."""

    ops: dict[int, str]

    def __post_init__(self):
        for q, op in self.ops.items():
            if q < 0:
                raise ValueError(f"negative qubit index {q}")
            if op not in _PAULI_MATS:
                raise ValueError(f"operator must be X, Y or Z, got {op!r}")

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.ops))

    def local_matrix(self) -> np.ndarray:
        """Dense matrix over just the support qubits, LSB-first target order."""
        mat = np.eye(1, dtype=np.complex128)
        for q in self.support:
            mat = np.kron(_PAULI_MATS[self.ops[q]], mat)
        return mat

    def __str__(self) -> str:
        if not self.ops:
            return "I"
        return "*".join(f"{self.ops[q]}{q}" for q in self.support)


@dataclass(frozen=True)
class LcuTerm:
    alpha: float
    theta: float
    unitary: PauliString

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError(f"term weight must be positive, got {self.alpha}")

    @property
    def signed_coefficient(self) -> complex:
        return self.alpha * np.exp(1j * self.theta)


@dataclass(frozen=True)
class LcuDecomposition:
    terms: tuple[LcuTerm, ...]
    normalization: float
    num_ancillas: int
    layout: str
    slot_of_term: dict[int, int] = field(default_factory=dict)

    @property
    def num_terms(self) -> int:
        return len(self.terms)


def ancillas_for(num_terms: int, layout: str) -> int:
    if layout == "shifted":
        return math.ceil(math.log2(num_terms + 1))
    return max(1, math.ceil(math.log2(num_terms)))


def decomposition_from_terms(terms, layout: str = "shifted") -> LcuDecomposition:
    terms = tuple(terms)
    if not terms:
        raise ValueError("decomposition needs at least one term")
    if layout not in LAYOUTS:
        raise ValueError(f"layout must be one of {LAYOUTS}, got {layout!r}")
    m = ancillas_for(len(terms), layout)
    offset = 1 if layout == "shifted" else 0
    slots = {k: k + offset for k in range(len(terms))}
    norm = float(sum(t.alpha for t in terms))
    return LcuDecomposition(terms, norm, m, layout, slots)


def from_ising(model, layout: str = "shifted") -> LcuDecomposition:
    """LCU terms of the spin Hamiltonian: one Z_i per field, one Z_i Z_j per
    coupling. Negative coefficients become theta = pi; the constant offset is
    excluded and must be re-added by the caller."""
    terms = []
    for i in range(model.n):
        c = model.h[i]
        if c != 0.0:
            terms.append(LcuTerm(abs(c), math.pi if c < 0 else 0.0, PauliString({i: "Z"})))
    for (i, j), c in sorted(model.J.items()):
        if c != 0.0:
            terms.append(LcuTerm(abs(c), math.pi if c < 0 else 0.0, PauliString({i: "Z", j: "Z"})))
    if not terms:
        raise ValueError("all-zero model has no LCU terms")
    return decomposition_from_terms(terms, layout)


def _complete_unitary(column0: np.ndarray) -> np.ndarray:
    """Extend a unit column to a unitary by Gram-Schmidt over the standard
    basis, skipping pivots that fall in the span already built. Deterministic."""
    dim = column0.shape[0]
    cols = [column0.astype(np.complex128)]
    for i in range(dim):
        v = np.zeros(dim, dtype=np.complex128)
        v[i] = 1.0
        for _ in range(2):  # double pass keeps the basis orthonormal to ~1e-15
            for c in cols:
                v = v - c * np.vdot(c, v)
        nrm = np.linalg.norm(v)
        if nrm > 1e-9:
            cols.append(v / nrm)
        if len(cols) == dim:
            break
    if len(cols) != dim:
        raise RuntimeError("unitary completion failed; normalization is inconsistent")
    return np.stack(cols, axis=1)


def build_prep_unitaries(dec: LcuDecomposition) -> tuple[np.ndarray, np.ndarray]:
    """The pair (V, V_hat): column 0 of V holds sqrt(alpha_k/N) e^{i theta_k}
    at each term's slot, column 0 of V_hat the same magnitudes with no phase.
    Remaining columns are a deterministic completion."""
    dim = 1 << dec.num_ancillas
    col_v = np.zeros(dim, dtype=np.complex128)
    col_vhat = np.zeros(dim, dtype=np.complex128)
    for k, term in enumerate(dec.terms):
        slot = dec.slot_of_term[k]
        amp = math.sqrt(term.alpha / dec.normalization)
        col_v[slot] = amp * np.exp(1j * term.theta)
        col_vhat[slot] = amp
    for col in (col_v, col_vhat):
        if abs(np.linalg.norm(col) - 1.0) > 1e-9:
            raise RuntimeError("prep column is not normalized; decomposition is inconsistent")
    return _complete_unitary(col_v), _complete_unitary(col_vhat)


def build_select_circuit(dec: LcuDecomposition, register_map: dict[str, range]) -> Circuit:
    """Multiplexed Pauli application: term k fires when the ancilla register
    holds slot_of_term[k], encoded by open/closed controls per binary digit.

    In dense layout the slot-0 term additionally carries a closed control on
    the Hadamard qubit (that pattern would otherwise fire on the untouched
    |0...0> ancilla branch). Identity terms emit no gate.
    """
    anc = register_map.get("lcu_ancilla", range(0))
    state = register_map["state"]
    if len(anc) < dec.num_ancillas:
        raise ValueError(f"need {dec.num_ancillas} ancillas, register has {len(anc)}")
    num_qubits = max(r.stop for r in register_map.values())
    circ = Circuit(num_qubits, (), dict(register_map))
    for k, term in enumerate(dec.terms):
        pauli = term.unitary
        if not pauli.ops:
            continue
        slot = dec.slot_of_term[k]
        controls = [(anc[j], (slot >> j) & 1) for j in range(dec.num_ancillas)]
        if dec.layout == "dense" and slot == 0:
            if "hadamard" not in register_map:
                raise ValueError("dense layout needs a hadamard register for the slot-0 control")
            controls.append((register_map["hadamard"][0], CLOSED))
        targets = [state[q] for q in pauli.support]
        if max(pauli.support) >= len(state):
            raise ValueError(f"state register too small for {pauli}")
        circ = append(circ, dense(pauli.local_matrix(), targets, controls))
    return circ


@dataclass(frozen=True)
class CoefficientGroup:
    common_alpha: float
    common_theta: float
    term_indices: tuple[int, ...]


def group_by_coefficient(dec: LcuDecomposition, tol: float = 1e-9) -> list[CoefficientGroup]:
    """Partition term indices by (alpha, theta) within tol, first-occurrence order."""
    if tol < 0:
        raise ValueError("tolerance must be >= 0")
    groups: list[list[int]] = []
    reps: list[tuple[float, float]] = []
    for k, term in enumerate(dec.terms):
        for g, (a, t) in enumerate(reps):
            if abs(term.alpha - a) <= tol and abs(term.theta - t) <= tol:
                groups[g].append(k)
                break
        else:
            reps.append((term.alpha, term.theta))
            groups.append([k])
    return [
        CoefficientGroup(a, t, tuple(idx)) for (a, t), idx in zip(reps, groups)
    ]


def build_uniform_prep_circuit(m: int, nearest_neighbor: bool = False) -> Circuit:
    """Controlled uniform initialization: |0>^m -> 2^{-m/2} sum_k |k> on the
    ancillas whenever the Hadamard qubit is set.

    All-to-all connectivity needs just m controlled-H gates. The
    nearest-neighbor variant assumes the chain hadamard - a_{m-1} - ... - a_0,
    so only the top ancilla can host the controlled-H; each prepared qubit is
    then pushed down with swaps: m(m+1)/2 gates in total.
    """
    if m < 1:
        raise ValueError(f"need at least one ancilla, got {m}")
    reg = make_register_map(0, m, hadamard=True)
    reg = {"lcu_ancilla": reg["lcu_ancilla"], "hadamard": reg["hadamard"]}
    circ = Circuit(m + 1, (), reg)
    hq = m
    if not nearest_neighbor:
        for j in range(m):
            circ = append(circ, h(j, controls=[(hq, CLOSED)]))
        return circ
    top = m - 1
    for k in range(m):
        circ = append(circ, h(top, controls=[(hq, CLOSED)]))
        for j in range(top, k, -1):
            circ = append(circ, swap(j, j - 1))
    return circ


def inverted(circ: Circuit) -> Circuit:
    """Inverse circuit: gates reversed with each gate inverted."""
    inv_gates = []
    for g in reversed(circ.gates):
        if g.kind in ("H", "X", "SWAP"):
            inv_gates.append(g)
        elif g.kind == "S":
            inv_gates.append(Gate("S_DAGGER", g.targets, (), g.controls))
        elif g.kind == "S_DAGGER":
            inv_gates.append(Gate("S", g.targets, (), g.controls))
        elif g.kind in ("EXP_X", "EXP_Z", "EXP_ZZ"):
            inv_gates.append(Gate(g.kind, g.targets, (-g.params[0],), g.controls))
        else:
            inv_gates.append(Gate("DENSE", g.targets, (), g.controls, g.matrix.conj().T))
    return Circuit(circ.num_qubits, tuple(inv_gates), circ.register_map)
