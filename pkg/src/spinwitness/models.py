"""Spin-model descriptors and their Hamiltonian matrices.

Basis convention: site 0 is the leftmost Kronecker factor (most significant
bit of the basis index) and bit value 0 is spin up, ``sigma_z = +1``.

The field term of the Heisenberg and XY models is ``B * m * sum_k sigma_z``
with ``m = graph.field_multiplicity``: ``m = d`` on periodic ``d``-dimensional
cubic lattices, so that the per-bond two-spin function carries ``B/2`` per
spin exactly as in the two-sublattice reduction, and ``m = 1`` on every
other graph.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import numkit
from .errors import (
    BadConfigError,
    BadFillingError,
    IndexOutOfRangeError,
    OddNError,
    TooLargeError,
    TooSmallError,
    ZeroCouplingError,
)
from .lattice import InteractionGraph, chain, complete

MAX_SPINS = 14
MAX_COLLECTIVE = 12
MAX_BH_SITES = 16
MAX_SECTOR_DIM = 16384


class ModelKind(str, enum.Enum):
    HEISENBERG = "heisenberg"
    XY = "xy"
    COLLECTIVE = "collective"
    BOSE_HUBBARD = "bosehubbard"


@dataclass(frozen=True)
class SpinModel:
    """Symbolic model: enough to build the quantum matrix and the classical objective."""

    kind: ModelKind
    graph: InteractionGraph | None = None
    couplings: dict = field(default_factory=dict)
    b_field: float = 0.0
    n_b: int | None = None
    sites: int | None = None
    periodic: bool = True

    def __post_init__(self):
        if self.kind in (ModelKind.HEISENBERG, ModelKind.XY) and self.graph is None:
            raise BadConfigError(f"{self.kind.value} model needs an interaction graph")
        if self.kind is ModelKind.XY and not {"jx", "jy"} <= set(self.couplings):
            raise BadConfigError("XY model needs couplings jx and jy")
        if self.kind is ModelKind.BOSE_HUBBARD:
            if self.n_b is None or not 0 <= self.n_b <= self.n_sites:
                raise BadFillingError(f"need 0 <= n_b <= {self.n_sites}, got {self.n_b}")

    @classmethod
    def heisenberg(cls, graph: InteractionGraph, b: float = 0.0) -> "SpinModel":
        return cls(ModelKind.HEISENBERG, graph, {"j": 1.0}, float(b))

    @classmethod
    def xy(cls, graph: InteractionGraph, jx: float, jy: float, b: float = 0.0) -> "SpinModel":
        return cls(ModelKind.XY, graph, {"jx": float(jx), "jy": float(jy)}, float(b))

    @classmethod
    def ising(cls, graph: InteractionGraph, b: float = 0.0) -> "SpinModel":
        """Transverse-field Ising chain: the XY model with ``jx = 1, jy = 0``."""
        return cls.xy(graph, 1.0, 0.0, b)

    @classmethod
    def collective(cls, n: int) -> "SpinModel":
        return cls(ModelKind.COLLECTIVE, sites=n)

    @classmethod
    def bose_hubbard(cls, n: int, n_b: int, j: float = 1.0, periodic: bool = True) -> "SpinModel":
        return cls(ModelKind.BOSE_HUBBARD, couplings={"j": float(j)}, n_b=n_b, sites=n, periodic=periodic)

    @property
    def n_sites(self) -> int:
        if self.graph is not None:
            return self.graph.n
        return int(self.sites)

    @property
    def axis_couplings(self) -> tuple[float, float, float]:
        """Per-bond ``(Jx, Jy, Jz)`` of the spin models."""
        if self.kind is ModelKind.HEISENBERG:
            return (1.0, 1.0, 1.0)
        if self.kind is ModelKind.XY:
            return (self.couplings["jx"], self.couplings["jy"], 0.0)
        raise BadConfigError(f"{self.kind.value} has no per-bond spin couplings")

    @property
    def max_coupling(self) -> float:
        """``M = max(|Jx|, |Jy|)`` of the XY model."""
        return max(abs(self.couplings["jx"]), abs(self.couplings["jy"]))

    @property
    def reduced_field(self) -> float:
        """``b = |B| / M`` of the XY model."""
        m = self.max_coupling
        if m == 0:
            raise ZeroCouplingError("XY model with jx = jy = 0 has no reduced field")
        return abs(self.b_field) / m


def pauli_at(site: int, axis: str, n: int) -> np.ndarray:
    """``I x ... x sigma_axis x ... x I`` on ``n`` spins (site 0 leftmost)."""
    if not 0 <= site < n:
        raise IndexOutOfRangeError(f"site {site} out of range for {n} spins")
    if axis not in numkit.PAULI:
        raise BadConfigError(f"unknown Pauli axis {axis!r}")
    factors = [numkit.I2] * n
    factors[site] = numkit.PAULI[axis]
    return numkit.kron(*factors)


def _bits(n: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(2**n)
    # z[k] = +1 for spin up (bit 0) at site k
    z = np.array([1 - 2 * ((idx >> (n - 1 - k)) & 1) for k in range(n)])
    return idx, z


def _guard_spins(n: int, limit: int = MAX_SPINS):
    if n > limit:
        raise TooLargeError(f"{n} spins exceeds the dense limit of {limit}")


def _spin_hamiltonian(n, edges, jx, jy, jz, site_field) -> np.ndarray:
    """Real-symmetric ``sum_edges (jx XX + jy YY + jz ZZ) + site_field * sum_k Z_k``."""
    _guard_spins(n)
    idx, z = _bits(n)
    h = np.zeros((2**n, 2**n))
    diag = np.zeros(2**n)
    for k, l in edges:
        zz = z[k] * z[l]
        if jz:
            diag += jz * zz
        if jx or jy:
            flipped = idx ^ (1 << (n - 1 - k)) ^ (1 << (n - 1 - l))
            # <flip|YY|s> = -z_k z_l
            h[flipped, idx] += jx - jy * zz
    if site_field:
        diag += site_field * z.sum(axis=0)
    h[idx, idx] += diag
    return h


def build_heisenberg(g: InteractionGraph, b: float = 0.0) -> np.ndarray:
    return _spin_hamiltonian(g.n, g.edges, 1.0, 1.0, 1.0, b * g.field_multiplicity)


def build_xy(g: InteractionGraph, jx: float, jy: float, b: float = 0.0) -> np.ndarray:
    return _spin_hamiltonian(g.n, g.edges, jx, jy, 0.0, b * g.field_multiplicity)


def build_collective(n: int) -> np.ndarray:
    """``Jx^2 + Jy^2 + Jz^2`` for collective spin operators ``Ja = sum_k sigma_a``."""
    if n % 2:
        raise OddNError(f"collective model needs even n, got {n}")
    if n < 2:
        raise TooSmallError("collective model needs n >= 2")
    _guard_spins(n, MAX_COLLECTIVE)
    # sigma_a^2 = I on every site; distinct pairs appear twice in the square
    pairs = complete(n).edges
    h = 2.0 * _spin_hamiltonian(n, pairs, 1.0, 1.0, 1.0, 0.0)
    h[np.diag_indices_from(h)] += 3.0 * n
    return h


@dataclass(frozen=True)
class SectorBasis:
    """Hard-core boson occupation patterns with exactly ``n_particles`` ones.

    Pattern bit ``n_sites - 1 - k`` is the occupation of site ``k``, so the
    ascending integer order equals lexicographic order of the site strings.
    """

    n_sites: int
    n_particles: int

    def __post_init__(self):
        if self.n_sites < 1:
            raise TooSmallError("sector needs at least one site")
        if self.n_sites > MAX_BH_SITES:
            raise TooLargeError(f"{self.n_sites} sites exceeds limit {MAX_BH_SITES}")
        if not 0 <= self.n_particles <= self.n_sites:
            raise BadFillingError(
                f"need 0 <= n_particles <= {self.n_sites}, got {self.n_particles}"
            )
        if math.comb(self.n_sites, self.n_particles) > MAX_SECTOR_DIM:
            raise TooLargeError("sector dimension exceeds limit")

    @cached_property
    def states(self) -> tuple[int, ...]:
        return tuple(
            s for s in range(2**self.n_sites) if s.bit_count() == self.n_particles
        )

    @cached_property
    def index(self) -> dict[int, int]:
        return {s: i for i, s in enumerate(self.states)}

    def __len__(self) -> int:
        return len(self.states)

    def occupation(self, state: int) -> tuple[int, ...]:
        n = self.n_sites
        return tuple((state >> (n - 1 - k)) & 1 for k in range(n))


def build_bh_hardcore(basis: SectorBasis, j: float = 1.0, periodic: bool = True) -> np.ndarray:
    """Hopping Hamiltonian ``-J sum_<kl> (a_k^+ a_l + h.c.)`` of a hard-core boson chain.

    The on-site interaction vanishes identically when no site holds two
    bosons, so only the hopping term survives.
    """
    n = basis.n_sites
    edges = chain(n, periodic).edges if n >= 2 else ()
    dim = len(basis)
    h = np.zeros((dim, dim))
    index = basis.index
    for i, s in enumerate(basis.states):
        for k, l in edges:
            mk, ml = 1 << (n - 1 - k), 1 << (n - 1 - l)
            if bool(s & mk) != bool(s & ml):
                h[index[s ^ mk ^ ml], i] -= j
    return h


def hamiltonian(model: SpinModel) -> np.ndarray:
    """Quantum Hamiltonian matrix of ``model`` (Bose-Hubbard: its fixed-``n_b`` sector)."""
    if model.kind is ModelKind.HEISENBERG:
        return build_heisenberg(model.graph, model.b_field)
    if model.kind is ModelKind.XY:
        return build_xy(model.graph, model.couplings["jx"], model.couplings["jy"], model.b_field)
    if model.kind is ModelKind.COLLECTIVE:
        return build_collective(model.n_sites)
    basis = SectorBasis(model.n_sites, model.n_b)
    return build_bh_hardcore(basis, model.couplings["j"], model.periodic)


def hardcore_spin_hamiltonian(n: int, j: float = 1.0, periodic: bool = True) -> np.ndarray:
    """Hard-core boson chain on the full ``2**n`` space, all particle numbers.

    Empty site is spin up, so ``a_k`` acts as ``sigma_+`` and the hopping
    term equals an XY chain with ``jx = jy = -J/2``.
    """
    g = chain(n, periodic)
    return _spin_hamiltonian(n, g.edges, -j / 2, -j / 2, 0.0, 0.0)


def number_operator_diagonal(n: int) -> np.ndarray:
    """Diagonal of the total boson number in the spin basis (occupied = bit 1)."""
    _, z = _bits(n)
    return ((1 - z) // 2).sum(axis=0)
