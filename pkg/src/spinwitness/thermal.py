"""Gibbs states, thermal energies and the entanglement temperature bound.

Temperatures are in units of the coupling with ``k_B = 1``. Every function
that only needs energies accepts a spectrum in one of three forms:

* a square Hermitian matrix (diagonalized on the fly),
* a 1-D array of eigenvalues,
* a :class:`LevelSet` of distinct energies with degeneracies,

so that one diagonalization can serve a whole temperature scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import brentq

from . import numkit
from .errors import BadConfigError, OddNError, TooLargeError, TooSmallError
from .models import SectorBasis, build_bh_hardcore

T_MIN = 1e-6
T_TOL = 1e-5
T_MAX = 1e12
GROUND_TOL = 1e-12
LEVEL_TOL = 1e-9
MAX_COLLECTIVE_LEVELS = 40


@dataclass(frozen=True)
class ThermalPoint:
    temperature: float
    energy: float
    bound: float

    @property
    def delta_e(self) -> float:
        return self.energy - self.bound

    @property
    def detected(self) -> bool:
        return self.delta_e < 0


@dataclass(frozen=True)
class LevelSet:
    """Distinct energies (strictly increasing) with positive integer degeneracies."""

    energies: tuple[float, ...]
    degeneracies: tuple[int, ...]

    def __post_init__(self):
        if len(self.energies) != len(self.degeneracies) or not self.energies:
            raise BadConfigError("level set needs matching, non-empty energies and degeneracies")
        if any(b <= a for a, b in zip(self.energies, self.energies[1:])):
            raise BadConfigError("level energies must be strictly increasing")
        if any(d < 1 for d in self.degeneracies):
            raise BadConfigError("degeneracies must be positive")

    @property
    def dimension(self) -> int:
        return sum(self.degeneracies)

    def __iter__(self):
        return iter(zip(self.energies, self.degeneracies))

    @classmethod
    def from_eigenvalues(cls, eigenvalues, tol: float = LEVEL_TOL) -> "LevelSet":
        """Group sorted eigenvalues into levels; a gap above ``tol`` starts a new level."""
        w = np.sort(np.asarray(eigenvalues, dtype=float))
        energies, degens, group = [], [], [w[0]]
        for x in w[1:]:
            if x - group[-1] > tol:
                energies.append(float(np.mean(group)))
                degens.append(len(group))
                group = [x]
            else:
                group.append(x)
        energies.append(float(np.mean(group)))
        degens.append(len(group))
        return cls(tuple(energies), tuple(degens))


def _spectrum(h) -> tuple[np.ndarray, np.ndarray]:
    """(energies, multiplicities) of any accepted spectrum form."""
    if isinstance(h, LevelSet):
        return np.array(h.energies, dtype=float), np.array(h.degeneracies, dtype=float)
    h = np.asarray(h)
    if h.ndim == 1:
        w = np.sort(h.astype(float))
        return w, np.ones_like(w)
    w = numkit.eigvalsh(h)
    return w, np.ones_like(w)


def _weights(energies: np.ndarray, mult: np.ndarray, t: float) -> np.ndarray:
    """Normalized Boltzmann weights, shifted by the ground energy so none exceeds 1."""
    e0 = energies.min()
    if t == 0:
        w = np.where(energies - e0 <= GROUND_TOL * (1 + abs(e0)), mult, 0.0)
    else:
        w = mult * np.exp(-(energies - e0) / t)
    return w / w.sum()


def _check_t(t: float):
    if not t >= 0:
        raise BadConfigError(f"temperature must be non-negative, got {t}")


def thermal_state(h: np.ndarray, t: float, decomposition: numkit.EigenDecomposition | None = None) -> np.ndarray:
    """Gibbs state ``exp(-h/t) / Z``; ``t = 0`` gives the uniform mixture over the ground space."""
    _check_t(t)
    if decomposition is None:
        decomposition = numkit.eigh(h)
    w, v = decomposition
    p = _weights(w, np.ones_like(w), t)
    keep = p > 0
    vk = v[:, keep]
    return (vk * p[keep]) @ vk.conj().T


def thermal_energy(h, t: float) -> float:
    """Thermal expectation of the energy, computed from the spectrum alone."""
    _check_t(t)
    e, m = _spectrum(h)
    return float(np.dot(_weights(e, m, t), e))


def thermal_point(h, t: float, bound: float) -> ThermalPoint:
    return ThermalPoint(t, thermal_energy(h, t), bound)


def temperature_bound(h, e_sep: float) -> float:
    """Temperature below which the Gibbs energy lies under ``e_sep``.

    Returns 0 when even the ground energy reaches ``e_sep`` and ``inf`` when
    the infinite-temperature energy is still below it.
    """
    e, m = _spectrum(h)
    return _temperature_bound(lambda t: float(np.dot(_weights(e, m, t), e)), float(e.min()), e_sep)


def _temperature_bound(energy_at, ground: float, e_sep: float) -> float:
    if ground >= e_sep - GROUND_TOL * (1 + abs(e_sep)):
        return 0.0
    g = lambda t: energy_at(t) - e_sep
    lo, hi = T_MIN, 1.0
    while g(hi) <= 0:
        lo, hi = hi, 2 * hi
        if hi > T_MAX:
            return math.inf
    if g(lo) > 0:
        return lo
    while hi - lo > T_TOL:
        mid = 0.5 * (lo + hi)
        if g(mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _check_collective_n(n: int):
    if n % 2:
        raise OddNError(f"collective model needs even n, got {n}")
    if n < 2:
        raise TooSmallError("collective model needs n >= 2")
    if n > MAX_COLLECTIVE_LEVELS:
        raise TooLargeError(f"collective level counting limited to n <= {MAX_COLLECTIVE_LEVELS}")


def collective_degeneracy(n: int, j: int) -> int:
    """Multiplicity of total-spin ``j`` among ``n`` spins: ``(2j+1)^2/(n/2+j+1) * C(n, n/2+j)``."""
    value = Fraction((2 * j + 1) ** 2, n // 2 + j + 1) * math.comb(n, n // 2 + j)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integer degeneracy for n={n}, j={j}")
    return int(value)


def collective_levels(n: int) -> LevelSet:
    """Spectrum of the collective model, with energies ``4 j (j + 1)`` for ``j = 0..n/2``."""
    _check_collective_n(n)
    js = range(n // 2 + 1)
    return LevelSet(
        tuple(float(4 * j * (j + 1)) for j in js),
        tuple(collective_degeneracy(n, j) for j in js),
    )


def collective_thermal_energy(n: int, t: float) -> float:
    return thermal_energy(collective_levels(n), t)


def collective_asymptotics(n: int, t: float) -> tuple[float, float]:
    """Large-``n`` Gaussian approximation: (energy ``3nt/(t+2n)``, temperature bound ``4n``)."""
    return 3 * n * t / (t + 2 * n), 4.0 * n


def bh_sector_spectra(n: int, j: float = 1.0, periodic: bool = True) -> list[np.ndarray]:
    """Eigenvalues of the hard-core boson chain in every particle-number sector."""
    return [
        numkit.eigvalsh(build_bh_hardcore(SectorBasis(n, nb), j, periodic))
        for nb in range(n + 1)
    ]


class GrandCanonicalBH:
    """Hard-core boson chain in the grand-canonical ensemble at mean filling ``n_b``.

    At each temperature the chemical potential is solved for so that the
    mean particle number equals ``n_b``; at half filling it vanishes by
    particle-hole symmetry.
    """

    def __init__(self, n: int, n_b: float, j: float = 1.0, periodic: bool = True):
        if not 0 <= n_b <= n:
            raise BadConfigError(f"need 0 <= n_b <= {n}, got {n_b}")
        self.n, self.n_b = n, n_b
        spectra = bh_sector_spectra(n, j, periodic)
        self.energies = np.concatenate(spectra)
        self.numbers = np.concatenate([np.full(len(s), nb, dtype=float) for nb, s in enumerate(spectra)])
        self.ground = float(self.energies.min())

    def _weights(self, t: float, mu: float) -> np.ndarray:
        x = -(self.energies - mu * self.numbers) / t
        w = np.exp(x - x.max())
        return w / w.sum()

    def chemical_potential(self, t: float) -> float:
        if self.n_b in (0, self.n):
            raise BadConfigError("empty or full lattice has no finite chemical potential")
        excess = lambda mu: float(np.dot(self._weights(t, mu), self.numbers)) - self.n_b
        span = 1.0
        while excess(-span) > 0 or excess(span) < 0:
            span *= 2
        return brentq(excess, -span, span, xtol=1e-14)

    def energy(self, t: float) -> float:
        if self.n_b in (0, self.n):
            return 0.0  # a single state without hopping freedom
        return float(np.dot(self._weights(t, self.chemical_potential(t)), self.energies))

    def temperature_bound(self, e_sep: float) -> float:
        if self.n_b in (0, self.n):
            return 0.0
        # ground state of the filling-constrained ensemble
        sector = SectorBasis(self.n, int(round(self.n_b)))
        ground = float(self.energies[self.numbers == sector.n_particles].min())
        return _temperature_bound(self.energy, ground, e_sep)
