"""Two-qubit entanglement measures and energy-based witnesses."""

from __future__ import annotations

import math

import numpy as np

from . import numkit
from .errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    NegativeEnergyError,
    NotAStateError,
    OddNError,
    OutOfRangeError,
)
from .lattice import InteractionGraph

CLIP_TOL = 1e-9
_YY = np.kron(numkit.SY, numkit.SY)


def reduced_pair(rho: np.ndarray, k: int, l: int, n: int) -> np.ndarray:
    """Two-qubit reduced state of sites ``k`` and ``l`` (``k`` is the first factor)."""
    rho = np.asarray(rho)
    if rho.shape != (2**n, 2**n):
        raise DimensionMismatchError(f"state shape {rho.shape} does not match {n} qubits")
    if k == l or not (0 <= k < n and 0 <= l < n):
        raise IndexOutOfRangeError(f"need distinct sites in [0, {n}), got {k}, {l}")
    t = rho.reshape((2,) * (2 * n))
    rest = [s for s in range(n) if s not in (k, l)]
    order = [k, l] + rest + [n + k, n + l] + [n + s for s in rest]
    m = 2 ** (n - 2)
    t = t.transpose(order).reshape(4, m, 4, m)
    return np.einsum("aibi->ab", t)


def _clean_pair_state(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise DimensionMismatchError(f"two-qubit state must be 4x4, got {rho.shape}")
    if not numkit.is_hermitian(rho, CLIP_TOL):
        raise NotAStateError("two-qubit state is not Hermitian")
    rho = 0.5 * (rho + rho.conj().T)
    if abs(np.trace(rho) - 1) > CLIP_TOL:
        raise NotAStateError(f"two-qubit state has trace {np.trace(rho).real:.12g}")
    w, v = np.linalg.eigh(rho)
    if w[0] < -CLIP_TOL:
        raise NotAStateError(f"two-qubit state has eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    w /= w.sum()
    return (v * w) @ v.conj().T


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    rho = _clean_pair_state(rho)
    w, v = np.linalg.eigh(rho)
    sqrt_rho = (v * np.sqrt(np.clip(w, 0, None))) @ v.conj().T
    flipped = _YY @ rho.conj() @ _YY
    # eigenvalues of sqrt(rho) flipped sqrt(rho) equal those of rho @ flipped
    lam = np.linalg.eigvalsh(sqrt_rho @ flipped @ sqrt_rho)
    lam = np.sqrt(np.clip(lam, 0, None))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def binary_entropy(p: float) -> float:
    if p <= 0 or p >= 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def eof(c: float) -> float:
    """Entanglement of formation of a two-qubit state with concurrence ``c``."""
    if not 0 <= c <= 1:
        raise OutOfRangeError(f"concurrence must lie in [0, 1], got {c}")
    return binary_entropy((1 + math.sqrt(1 - c * c)) / 2)


def witness_delta(energy: float, bound: float) -> float:
    """``energy - bound``; a negative value certifies entanglement."""
    return energy - bound


def heisenberg_concurrence_from_energy(energy: float, n: int) -> float:
    """Nearest-neighbour concurrence of a zero-field Heisenberg ring from its energy."""
    return max(-(energy / n + 1) / 2, 0.0)


def collective_concurrence_from_energy(energy: float, n: int) -> float:
    if n % 2:
        raise OddNError(f"collective model needs even n, got {n}")
    return max(-(energy + n * (n - 4)) / (2 * n * (n - 1)), 0.0)


def unentangled_bound(energy: float) -> int:
    """Upper bound ``floor(<H_S>/2)`` on the number of unentangled spins.

    For a mixture the bound applies to the ensemble average of the
    unentangled-spin count over its pure components.
    """
    if energy < 0:
        raise NegativeEnergyError(f"collective energy cannot be negative, got {energy}")
    return int(math.floor(energy / 2 + 1e-12))


def nn_correlation_average(rho: np.ndarray, g: InteractionGraph, axis: str) -> float:
    """Mean of ``<sigma_a^(k) sigma_a^(l)>`` over the edges of ``g``."""
    rho = np.asarray(rho)
    if rho.shape != (2**g.n, 2**g.n):
        raise DimensionMismatchError(f"state shape {rho.shape} does not match {g.n} qubits")
    op = np.kron(numkit.PAULI[axis], numkit.PAULI[axis])
    total = sum(
        numkit.expectation(reduced_pair(rho, k, l, g.n), op, validate=False)
        for k, l in g.edges
    )
    return total / len(g.edges)


def pair_concurrence(rho: np.ndarray, g: InteractionGraph) -> float:
    """Nearest-neighbour concurrence.

    On periodic cubic lattices all bonds are equivalent by symmetry and the
    first one is used; on other graphs the concurrence is averaged over edges.
    """
    if g.cubic_dim is not None:
        k, l = g.edges[0]
        return concurrence(reduced_pair(rho, k, l, g.n))
    return float(np.mean([concurrence(reduced_pair(rho, k, l, g.n)) for k, l in g.edges]))
