"""QUBO instances, the QUBO -> Ising map, and the brute-force oracle.

Binary variables follow the global bit convention: variable i sits at bit i
of the basis index, and bitstrings are rendered most-significant-variable
first. The spin map is x_i = (1 - z_i)/2 with z_i = +1 for x_i = 0, i.e.
the eigenvalue of Z on |x_i>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statevector import CapacityError

BRUTE_FORCE_GUARD = 24
_CHUNK = 1 << 18


@dataclass(frozen=True)
class QuboInstance:
    n: int
    Q: np.ndarray
    seed: int = 0

    def __post_init__(self):
        if self.Q.shape != (self.n, self.n):
            raise ValueError(f"Q must be {self.n}x{self.n}, got {self.Q.shape}")
        if np.max(np.abs(self.Q - self.Q.T)) > 1e-12:
            raise ValueError("Q must be symmetric")


@dataclass(frozen=True)
class IsingModel:
    n: int
    h: np.ndarray
    J: dict[tuple[int, int], float]
    offset: float = 0.0

    def __post_init__(self):
        if self.h.shape != (self.n,):
            raise ValueError(f"h must have length {self.n}")
        for i, j in self.J:
            if not (0 <= i < j < self.n):
                raise ValueError(f"coupling key ({i},{j}) must satisfy 0 <= i < j < n")
        if not np.all(np.isfinite(self.h)) or not all(np.isfinite(v) for v in self.J.values()):
            raise ValueError("coefficients must be finite")


def random_qubo(n: int, seed: int) -> QuboInstance:
    """Symmetric cost matrix with entries uniform in (-2, 2)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    Q = np.zeros((n, n))
    upper = np.triu_indices(n)
    Q[upper] = rng.uniform(-2.0, 2.0, size=len(upper[0]))
    Q = Q + np.triu(Q, k=1).T
    return QuboInstance(n, Q, seed)


def _as_bits(x, n: int) -> np.ndarray:
    """Accept an MSB-first bitstring or a per-variable 0/1 sequence."""
    if isinstance(x, str):
        if len(x) != n:
            raise ValueError(f"bitstring length {len(x)} != n = {n}")
        return np.array([int(c) for c in reversed(x)], dtype=float)
    bits = np.asarray(x, dtype=float)
    if bits.shape != (n,):
        raise ValueError(f"assignment length {bits.shape} != n = {n}")
    return bits


def qubo_cost(q: QuboInstance, x) -> float:
    """x^T Q x for a bitstring (MSB-first) or 0/1 vector indexed by variable."""
    bits = _as_bits(x, q.n)
    return float(bits @ q.Q @ bits)


def qubo_to_ising(q: QuboInstance) -> IsingModel:
    """Substitute x_i = (1 - z_i)/2; diagonal terms use x_i^2 = x_i.

    The resulting (h, J, offset) satisfies qubo_cost(x) = ising_energy(z(x))
    exactly for every assignment.
    """
    n = q.n
    diag = np.diag(q.Q)
    off = q.Q - np.diag(diag)
    h = -diag / 2.0 - off.sum(axis=1) / 2.0
    J = {}
    for i in range(n):
        for j in range(i + 1, n):
            if q.Q[i, j] != 0.0:
                J[(i, j)] = float(q.Q[i, j] / 2.0)
    offset = float(diag.sum() / 2.0 + off.sum() / 4.0)
    return IsingModel(n, h, J, offset)


def ising_energy(m: IsingModel, z) -> float:
    """offset + sum_i h_i z_i + sum_{i<j} J_ij z_i z_j for spins z in {-1,+1}."""
    z = np.asarray(z, dtype=float)
    if z.shape != (m.n,):
        raise ValueError(f"spin vector length {z.shape} != n = {m.n}")
    if not np.all(np.abs(z) == 1.0):
        raise ValueError("spins must be +1 or -1")
    e = m.offset + float(m.h @ z)
    for (i, j), c in m.J.items():
        e += c * z[i] * z[j]
    return float(e)


def spins_from_bits(bits: np.ndarray) -> np.ndarray:
    return 1.0 - 2.0 * np.asarray(bits, dtype=float)


def bitstring_from_index(index: int, n: int) -> str:
    return format(index, f"0{n}b")


def all_qubo_costs(q: QuboInstance) -> np.ndarray:
    """Vector of x^T Q x over all 2^n assignments, indexed by basis index."""
    if q.n > BRUTE_FORCE_GUARD:
        raise CapacityError(f"n = {q.n} exceeds brute-force guard {BRUTE_FORCE_GUARD}")
    dim = 1 << q.n
    out = np.empty(dim)
    cols = np.arange(q.n)
    for start in range(0, dim, _CHUNK):
        idx = np.arange(start, min(start + _CHUNK, dim))
        bits = ((idx[:, None] >> cols[None, :]) & 1).astype(float)
        out[idx] = np.einsum("bi,ij,bj->b", bits, q.Q, bits)
    return out


def brute_force_min(q: QuboInstance) -> tuple[str, float]:
    """Global minimum over all assignments; ties resolve to the lowest index."""
    costs = all_qubo_costs(q)
    best = int(np.argmin(costs))
    return bitstring_from_index(best, q.n), float(costs[best])


def write_qubo_file(q: QuboInstance, path) -> None:
    """Plain-text format: first line n, then n rows of n space-separated values."""
    lines = [str(q.n)]
    for row in q.Q:
        lines.append(" ".join(repr(float(v)) for v in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_qubo_file(path) -> QuboInstance:
    with open(path) as fh:
        raw = [ln.strip() for ln in fh if ln.strip()]
    n = int(raw[0])
    if len(raw) != n + 1:
        raise ValueError(f"expected {n} matrix rows, found {len(raw) - 1}")
    Q = np.array([[float(v) for v in ln.split()] for ln in raw[1:]])
    return QuboInstance(n, Q)
