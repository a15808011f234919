"""Energy bounds for separable states.

The minimum of a two-body spin operator over product states is the ground
energy of the classical model obtained by replacing every Pauli operator by
a component of a unit 3-vector. This module provides that classical
objective, two numerical minimizers (two-sublattice reduction and general
multi-start coordinate descent) and the closed-form bounds of the four model
families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import (
    BadConfigError,
    BadFillingError,
    NotBipartiteError,
    OddNError,
    UnsupportedError,
    ZeroCouplingError,
)
from .lattice import chain, two_color
from .models import ModelKind, SpinModel

UNIT_TOL = 1e-12
DEFAULT_RESTARTS = 32
DESCENT_TOL = 1e-12
MAX_SWEEPS = 10_000
PAIR_GRID = (16, 8)  # (azimuthal, polar) starting directions
PAIR_PATIENCE = 50


@dataclass(frozen=True)
class ClassicalSpinConfig:
    spins: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.spins, dtype=float)
        if s.ndim != 2 or s.shape[1] != 3:
            raise BadConfigError(f"spins must have shape (n, 3), got {s.shape}")
        if np.any(np.abs(np.linalg.norm(s, axis=1) - 1.0) > UNIT_TOL):
            raise BadConfigError("every classical spin must be a unit vector")
        object.__setattr__(self, "spins", s)

    @classmethod
    def normalized(cls, vectors) -> "ClassicalSpinConfig":
        v = np.asarray(vectors, dtype=float)
        return cls(v / np.linalg.norm(v, axis=1, keepdims=True))

    def __len__(self) -> int:
        return self.spins.shape[0]


@dataclass(frozen=True)
class SeparableBound:
    value: float
    source: str  # "analytic", "pairwise" or "coordinate-descent"
    config: ClassicalSpinConfig | None = None


def _site_field(model: SpinModel) -> float:
    return model.b_field * model.graph.field_multiplicity


def classical_energy(model: SpinModel, config: ClassicalSpinConfig) -> float:
    """Classical objective of ``model`` at the product configuration ``config``."""
    s = config.spins
    if len(config) != model.n_sites:
        raise BadConfigError(f"config has {len(config)} spins, model has {model.n_sites} sites")
    if model.kind is ModelKind.COLLECTIVE:
        # sigma_a^2 = 1 per site contributes 3n; distinct pairs give |sum s|^2 - n
        total = s.sum(axis=0)
        return float(2 * model.n_sites + total @ total)
    if model.kind is ModelKind.BOSE_HUBBARD:
        edges = np.array(chain(model.n_sites, model.periodic).edges)
        j = model.couplings["j"]
        xy = s[edges[:, 0], :2] * s[edges[:, 1], :2]
        return float(-0.5 * j * xy.sum())
    return float(_spin_energy(model, s[np.newaxis])[0])


def _spin_energy(model: SpinModel, spins: np.ndarray) -> np.ndarray:
    """Vectorized spin-model objective for a stack of configs of shape ``(R, n, 3)``."""
    j = np.array(model.axis_couplings)
    edges = np.array(model.graph.edges, dtype=int).reshape(-1, 2)
    bond = (spins[:, edges[:, 0], :] * spins[:, edges[:, 1], :] * j).sum(axis=(1, 2))
    return bond + _site_field(model) * spins[:, :, 2].sum(axis=1)


def _unit_or_keep(h: np.ndarray, current: np.ndarray) -> np.ndarray:
    """``-h/|h|`` row-wise; rows with zero field keep their current direction."""
    norm = np.linalg.norm(h, axis=-1, keepdims=True)
    safe = np.where(norm > 0, norm, 1.0)
    return np.where(norm > 0, -h / safe, current)


def _check_spin_kind(model: SpinModel, what: str):
    if model.kind not in (ModelKind.HEISENBERG, ModelKind.XY):
        raise UnsupportedError(f"{what} does not support the {model.kind.value} model")


def minimize_pair(model: SpinModel) -> SeparableBound:
    """Two-sublattice reduction for bipartite graphs.

    Minimizes the per-bond function ``f(sA, sB)`` by alternating exact
    single-vector updates from a grid of starting directions and replicates
    the optimum over the sublattices.
    """
    _check_spin_kind(model, "minimize_pair")
    g = model.graph
    coloring = two_color(g)
    deg = g.degrees()
    h_site = _site_field(model)
    if h_site != 0 and len(set(deg)) != 1:
        raise UnsupportedError("two-sublattice reduction with a field needs a regular graph")
    j = np.array(model.axis_couplings)
    c = h_site / deg[0] if h_site != 0 else 0.0
    zhat = np.array([0.0, 0.0, 1.0])

    def f(a, b):
        return (a * b * j).sum(axis=-1) + c * (a[..., 2] + b[..., 2])

    n_phi, n_theta = PAIR_GRID
    phi = 2 * np.pi * np.arange(n_phi) / n_phi
    # polar grid includes both poles: polarized optima are then exact fixed points
    theta = np.pi * np.arange(n_theta) / (n_theta - 1)
    pp, tt = np.meshgrid(phi, theta, indexing="ij")
    a = np.stack(
        [np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1
    ).reshape(-1, 3)
    b = _unit_or_keep(j * a + c * zhat, -a)
    value = f(a, b)
    best_value, stalled = value.min(), 0
    for _ in range(MAX_SWEEPS):
        a = _unit_or_keep(j * b + c * zhat, a)
        b = _unit_or_keep(j * a + c * zhat, b)
        new = f(a, b)
        converged = np.max(value - new) < 1e-15
        value = new
        # slow starts near a critical field may crawl; stop once the best one is settled
        stalled = stalled + 1 if best_value - value.min() < 1e-15 else 0
        best_value = min(best_value, value.min())
        if converged or stalled >= PAIR_PATIENCE:
            break
    best = int(np.argmin(value))
    spins = np.array([a[best] if col == "A" else b[best] for col in coloring])
    config = ClassicalSpinConfig.normalized(spins)
    return SeparableBound(classical_energy(model, config), "pairwise", config)


def minimize_product(
    model: SpinModel, restarts: int = DEFAULT_RESTARTS, seed: int = 0
) -> SeparableBound:
    """Multi-start coordinate descent over all product configurations.

    Each sweep visits sites in ascending order and aligns every spin against
    its effective field. Restart ``i`` draws its start from
    ``default_rng([seed, i])``, so the result depends only on ``seed``.
    """
    _check_spin_kind(model, "minimize_product")
    if restarts < 1:
        raise BadConfigError("restarts must be positive")
    n = model.n_sites
    starts = []
    for i in range(restarts):
        rng = np.random.default_rng([seed, i])
        v = rng.standard_normal((n, 3))
        starts.append(v / np.linalg.norm(v, axis=1, keepdims=True))
    spins = np.array(starts)
    j = np.array(model.axis_couplings)
    field = np.array([0.0, 0.0, _site_field(model)])
    nbrs = [np.array(x, dtype=int) for x in model.graph.neighbors()]

    energy = _spin_energy(model, spins)
    for _ in range(MAX_SWEEPS):
        for k in range(n):
            h = spins[:, nbrs[k], :].sum(axis=1) * j + field
            spins[:, k, :] = _unit_or_keep(h, spins[:, k, :])
        new = _spin_energy(model, spins)
        improvement = np.max(energy - new)
        energy = new
        if improvement < DESCENT_TOL:
            break
    best = int(np.argmin(energy))
    config = ClassicalSpinConfig.normalized(_polish(model, spins[best], j, field, nbrs))
    return SeparableBound(classical_energy(model, config), "coordinate-descent", config)


def _polish(model: SpinModel, spins: np.ndarray, j, field, nbrs) -> np.ndarray:
    """Quasi-Newton refinement of a descent result.

    Coordinate descent crawls where the optimum is degenerate to high order
    (critical fields); L-BFGS on unnormalized vectors finishes the job.
    """
    n = len(spins)

    def objective(x):
        v = x.reshape(n, 3)
        norm = np.linalg.norm(v, axis=1, keepdims=True)
        s = v / norm
        h = np.stack([s[nb].sum(axis=0) for nb in nbrs]) * j + field
        grad = (h - (h * s).sum(axis=1, keepdims=True) * s) / norm
        return float(_spin_energy(model, s[np.newaxis])[0]), grad.ravel()

    res = minimize(objective, spins.ravel(), jac=True, method="L-BFGS-B",
                   options={"gtol": 1e-13, "ftol": 1e-16, "maxiter": 5000})
    refined = res.x.reshape(n, 3)
    refined = refined / np.linalg.norm(refined, axis=1, keepdims=True)
    if _spin_energy(model, refined[np.newaxis])[0] < _spin_energy(model, spins[np.newaxis])[0]:
        return refined
    return spins


def heisenberg_bound(d: int, n: int, b: float) -> float:
    """Separable bound of the Heisenberg model on a periodic ``d``-dimensional cubic lattice."""
    if abs(b) <= 4:
        return -d * n * (b * b / 8 + 1)
    return -d * n * (abs(b) - 1)


def xy_bound(d: int, n: int, jx: float, jy: float, b: float) -> float:
    """Separable (mean-field) bound of the XY model on a periodic cubic lattice."""
    m = max(abs(jx), abs(jy))
    if m == 0:
        raise ZeroCouplingError("xy_bound needs (jx, jy) != (0, 0)")
    red = abs(b) / m
    if red <= 2:
        return -d * n * m * (1 + red * red / 4)
    return -d * n * m * red


def collective_bound(n: int) -> float:
    if n % 2:
        raise OddNError(f"collective bound needs even n, got {n}")
    return 2.0 * n


def variance_floor() -> float:
    """Minimum of ``var(sx) + var(sy) + var(sz)`` over single-qubit states."""
    return 2.0


def sample_variance_floor(samples: int = 100_000, seed: int = 0) -> float:
    """Largest deviation of the Pauli variance sum from 2 over Haar-random pure qubits."""
    rng = np.random.default_rng(seed)
    psi = rng.standard_normal((samples, 2)) + 1j * rng.standard_normal((samples, 2))
    psi /= np.linalg.norm(psi, axis=1, keepdims=True)
    a, b = psi[:, 0], psi[:, 1]
    sx = 2 * np.real(np.conj(a) * b)
    sy = 2 * np.imag(np.conj(a) * b)
    sz = np.abs(a) ** 2 - np.abs(b) ** 2
    # sigma_a^2 = 1, so each variance is 1 - <sigma_a>^2
    total = 3 - (sx**2 + sy**2 + sz**2)
    return float(np.max(np.abs(total - variance_floor())))


def _check_filling(n: int, n_b: int):
    if n < 1 or not 0 <= n_b <= n:
        raise BadFillingError(f"need 0 <= n_b <= n with n >= 1, got n={n}, n_b={n_b}")


def bh_bound(n: int, n_b: int, j: float = 1.0) -> float:
    """Separable bound of the hard-core Bose-Hubbard chain with ``n_b`` bosons on ``n`` sites."""
    _check_filling(n, n_b)
    return -2.0 * j * n_b * (1.0 - n_b / n)


def gutzwiller_min(n: int, n_b: int, j: float = 1.0, phase_steps: int = 720) -> float:
    """Minimum hopping energy over Gutzwiller product states on an ``n``-bond ring.

    Every site carries ``sqrt(1-p)|0> + sqrt(p) e^{i k phi}|1>`` with the
    filling constraint ``p = n_b / n``; the neighbour phase twist ``phi`` is
    scanned on a grid that contains ``phi = 0`` (identical site states).
    """
    _check_filling(n, n_b)
    p = n_b / n
    phi = 2 * np.pi * np.arange(phase_steps) / phase_steps
    # <a_k> = conj(alpha) beta_k on every site, alpha real
    amp = math.sqrt((1 - p) * p) * np.exp(1j * np.outer(phi, np.arange(n)))
    hop = np.conj(amp) * np.roll(amp, -1, axis=1)
    return float(np.min(-2 * j * np.real(hop).sum(axis=1)))


def antiparallel_pairs(n: int) -> ClassicalSpinConfig:
    """Alternating +z/-z configuration (zero total spin for even ``n``)."""
    spins = np.zeros((n, 3))
    spins[:, 2] = [1 if k % 2 == 0 else -1 for k in range(n)]
    return ClassicalSpinConfig(spins)


def separable_bound(
    model: SpinModel, restarts: int = DEFAULT_RESTARTS, seed: int = 0
) -> SeparableBound:
    """Best available separable bound: closed form where one applies, else numerical."""
    if model.kind is ModelKind.COLLECTIVE:
        return SeparableBound(collective_bound(model.n_sites), "analytic", antiparallel_pairs(model.n_sites))
    if model.kind is ModelKind.BOSE_HUBBARD:
        return SeparableBound(bh_bound(model.n_sites, model.n_b, model.couplings["j"]), "analytic")
    g = model.graph
    if g.cubic_dim is not None:
        if model.kind is ModelKind.HEISENBERG:
            value = heisenberg_bound(g.cubic_dim, g.n, model.b_field)
        else:
            value = xy_bound(g.cubic_dim, g.n, *model.axis_couplings[:2], model.b_field)
        return SeparableBound(value, "analytic", minimize_pair(model).config)
    try:
        return minimize_pair(model)
    except (NotBipartiteError, UnsupportedError):
        return minimize_product(model, restarts, seed)
