"""Gate-level circuit IR executed on the statevector engine.

Gates are named kinds with radian parameters plus a DENSE escape hatch for
explicit unitaries. Every gate may carry multi-controls with open/closed
polarity. Circuits are immutable once built (append returns a new one) and
carry an optional register map naming contiguous qubit spans.

Rotation conventions: EXP_Z(phi) = e^{i phi Z}, EXP_X(phi) = e^{i phi X},
EXP_ZZ(phi) = e^{i phi Z (x) Z}. These are the evolution operators directly,
with no hidden -theta/2 factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .statevector import CLOSED, OPEN, StateVector, apply_unitary, new_basis_state

GATE_KINDS = ("H", "X", "S", "S_DAGGER", "EXP_X", "EXP_Z", "EXP_ZZ", "SWAP", "DENSE")

_ARITY = {"H": 1, "X": 1, "S": 1, "S_DAGGER": 1, "EXP_X": 1, "EXP_Z": 1, "EXP_ZZ": 2, "SWAP": 2}
_NUM_PARAMS = {"H": 0, "X": 0, "S": 0, "S_DAGGER": 0, "EXP_X": 1, "EXP_Z": 1, "EXP_ZZ": 1, "SWAP": 0, "DENSE": 0}

_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2.0)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_S = np.diag([1.0, 1.0j]).astype(np.complex128)
_SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128)


@dataclass(frozen=True)
class Gate:
    kind: str
    targets: tuple[int, ...]
    params: tuple[float, ...] = ()
    controls: tuple[tuple[int, int], ...] = ()
    matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "DENSE":
            if self.matrix is None:
                raise ValueError("DENSE gate requires a matrix")
            dim = self.matrix.shape[0]
            if self.matrix.shape != (dim, dim) or dim != 1 << len(self.targets):
                raise ValueError(
                    f"DENSE matrix shape {self.matrix.shape} does not match {len(self.targets)} targets"
                )
        else:
            if len(self.targets) != _ARITY[self.kind]:
                raise ValueError(f"{self.kind} takes {_ARITY[self.kind]} targets, got {self.targets}")
        if len(self.params) != _NUM_PARAMS.get(self.kind, 0):
            raise ValueError(f"{self.kind} takes {_NUM_PARAMS[self.kind]} params, got {self.params}")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"duplicate targets {self.targets}")
        cq = tuple(q for q, _ in self.controls)
        if len(set(cq)) != len(cq) or set(cq) & set(self.targets):
            raise ValueError(f"controls {self.controls} overlap targets {self.targets}")
        for _, v in self.controls:
            if v not in (OPEN, CLOSED):
                raise ValueError(f"control polarity must be OPEN (0) or CLOSED (1), got {v}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.targets + tuple(q for q, _ in self.controls)

    def with_control(self, qubit: int, polarity: int = CLOSED) -> "Gate":
        if qubit in self.qubits:
            raise ValueError(f"qubit {qubit} already used by this gate")
        return replace(self, controls=self.controls + ((qubit, polarity),))


def h(qubit: int, controls=()) -> Gate:
    return Gate("H", (qubit,), controls=tuple(controls))


def x(qubit: int, controls=()) -> Gate:
    return Gate("X", (qubit,), controls=tuple(controls))


def s(qubit: int) -> Gate:
    return Gate("S", (qubit,))


def s_dagger(qubit: int) -> Gate:
    return Gate("S_DAGGER", (qubit,))


def exp_x(phi: float, qubit: int) -> Gate:
    return Gate("EXP_X", (qubit,), (float(phi),))


def exp_z(phi: float, qubit: int) -> Gate:
    return Gate("EXP_Z", (qubit,), (float(phi),))


def exp_zz(phi: float, qubit_a: int, qubit_b: int) -> Gate:
    return Gate("EXP_ZZ", (qubit_a, qubit_b), (float(phi),))


def swap(qubit_a: int, qubit_b: int) -> Gate:
    return Gate("SWAP", (qubit_a, qubit_b))


def dense(matrix: np.ndarray, targets, controls=()) -> Gate:
    return Gate("DENSE", tuple(targets), controls=tuple(controls), matrix=np.asarray(matrix, dtype=np.complex128))


def gate_matrix(gate: Gate) -> np.ndarray:
    """Dense matrix of the gate on its targets (controls excluded)."""
    if gate.kind == "H":
        return _H
    if gate.kind == "X":
        return _X
    if gate.kind == "S":
        return _S
    if gate.kind == "S_DAGGER":
        return _S.conj().T
    if gate.kind == "EXP_X":
        phi = gate.params[0]
        return np.cos(phi) * np.eye(2, dtype=np.complex128) + 1j * np.sin(phi) * _X
    if gate.kind == "EXP_Z":
        phi = gate.params[0]
        return np.diag([np.exp(1j * phi), np.exp(-1j * phi)])
    if gate.kind == "EXP_ZZ":
        phi = gate.params[0]
        return np.diag([np.exp(1j * phi), np.exp(-1j * phi), np.exp(-1j * phi), np.exp(1j * phi)])
    if gate.kind == "SWAP":
        return _SWAP
    return gate.matrix


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[Gate, ...] = ()
    register_map: dict[str, range] | None = None

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("circuit needs at least one qubit")
        for g in self.gates:
            _check_gate_range(g, self.num_qubits)
        if self.register_map is not None:
            spans = sorted(self.register_map.values(), key=lambda r: r.start)
            for a, b in zip(spans, spans[1:]):
                if a.stop > b.start:
                    raise ValueError("register spans must be disjoint")
            for r in spans:
                if r.start < 0 or r.stop > self.num_qubits:
                    raise ValueError(f"register span {r} out of range")

    @property
    def gate_count(self) -> int:
        return len(self.gates)


def _check_gate_range(gate: Gate, num_qubits: int) -> None:
    for q in gate.qubits:
        if not 0 <= q < num_qubits:
            raise ValueError(f"gate qubit {q} out of range for {num_qubits}-qubit circuit")


def append(circuit: Circuit, gate: Gate) -> Circuit:
    """New circuit with the gate appended."""
    _check_gate_range(gate, circuit.num_qubits)
    return replace(circuit, gates=circuit.gates + (gate,))


def extend(circuit: Circuit, gates) -> Circuit:
    out = circuit
    for g in gates:
        out = append(out, g)
    return out


def add_control(circuit: Circuit, control_qubit: int, polarity: int = CLOSED) -> Circuit:
    """Every gate acquires an extra control on control_qubit.

    Executing the result with the control qubit in |1> (closed polarity)
    reproduces the original circuit; with |0> it is the identity.
    """
    for g in circuit.gates:
        if control_qubit in g.qubits:
            raise ValueError(f"control qubit {control_qubit} already used by the circuit")
    if not 0 <= control_qubit < circuit.num_qubits:
        raise ValueError(f"control qubit {control_qubit} out of range")
    return replace(circuit, gates=tuple(g.with_control(control_qubit, polarity) for g in circuit.gates))


def run(circuit: Circuit, initial: StateVector | None = None, validate: bool = False) -> StateVector:
    """Execute the circuit on a copy of the initial state (default |0...0>)."""
    if initial is None:
        state = new_basis_state(circuit.num_qubits)
    else:
        if initial.num_qubits != circuit.num_qubits:
            raise ValueError(
                f"state has {initial.num_qubits} qubits, circuit needs {circuit.num_qubits}"
            )
        state = initial.copy()
    for g in circuit.gates:
        apply_unitary(state, gate_matrix(g), g.targets, g.controls, validate=validate)
    return state


@dataclass(frozen=True)
class ResourceReport:
    gate_count: int
    controlled_gate_count: int
    logical_depth: int
    qubit_count: int


def resource_report(circuit: Circuit) -> ResourceReport:
    """Logical resource counts: every gate costs depth 1 regardless of arity.

    Depth is the streaming moment count: gates are packed into moments in
    list order, and a gate opens a new moment whenever it touches a qubit
    already used in the current one.
    """
    depth = 0
    current: set[int] = set()
    controlled = 0
    for g in circuit.gates:
        if g.controls:
            controlled += 1
        qs = set(g.qubits)
        if depth == 0 or current & qs:
            depth += 1
            current = qs
        else:
            current |= qs
    return ResourceReport(len(circuit.gates), controlled, depth, circuit.num_qubits)


def make_register_map(num_state: int, num_ancilla: int, hadamard: bool = True) -> dict[str, range]:
    """Standard layout: state in the low bits, LCU ancillas above, Hadamard qubit on top."""
    reg = {"state": range(0, num_state)}
    if num_ancilla:
        reg["lcu_ancilla"] = range(num_state, num_state + num_ancilla)
    if hadamard:
        top = num_state + num_ancilla
        reg["hadamard"] = range(top, top + 1)
    return reg


# --- text serialization (one gate per line) ---------------------------------
#
# Header:  qubits <n>
# Gate:    <kind> [p=<v,...>] [t=<q,...>] [c=<q:pol,...>] [m=<re,im;re,im;...>]
# Dense matrices are flattened row-major as re,im pairs joined by ';'.


def circuit_to_text(circuit: Circuit) -> str:
    lines = [f"qubits {circuit.num_qubits}"]
    if circuit.register_map:
        for name, span in circuit.register_map.items():
            lines.append(f"register {name} {span.start} {span.stop}")
    for g in circuit.gates:
        parts = [g.kind]
        if g.params:
            parts.append("p=" + ",".join(repr(v) for v in g.params))
        parts.append("t=" + ",".join(str(q) for q in g.targets))
        if g.controls:
            parts.append("c=" + ",".join(f"{q}:{v}" for q, v in g.controls))
        if g.kind == "DENSE":
            flat = g.matrix.reshape(-1)
            parts.append("m=" + ";".join(f"{float(v.real)!r},{float(v.imag)!r}" for v in flat))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("qubits "):
        raise ValueError("circuit text must start with a 'qubits <n>' line")
    num_qubits = int(lines[0].split()[1])
    register_map: dict[str, range] = {}
    gates = []
    for ln in lines[1:]:
        if ln.startswith("register "):
            _, name, start, stop = ln.split()
            register_map[name] = range(int(start), int(stop))
            continue
        fields = ln.split()
        kind = fields[0]
        params: tuple[float, ...] = ()
        targets: tuple[int, ...] = ()
        controls: tuple[tuple[int, int], ...] = ()
        matrix = None
        for f in fields[1:]:
            tag, _, body = f.partition("=")
            if tag == "p":
                params = tuple(float(v) for v in body.split(","))
            elif tag == "t":
                targets = tuple(int(q) for q in body.split(","))
            elif tag == "c":
                controls = tuple((int(q.split(":")[0]), int(q.split(":")[1])) for q in body.split(","))
            elif tag == "m":
                vals = [complex(float(p.split(",")[0]), float(p.split(",")[1])) for p in body.split(";")]
                dim = int(round(len(vals) ** 0.5))
                matrix = np.array(vals, dtype=np.complex128).reshape(dim, dim)
            else:
                raise ValueError(f"unknown field {f!r} in line {ln!r}")
        gates.append(Gate(kind, targets, params, controls, matrix))
    return Circuit(num_qubits, tuple(gates), register_map or None)
