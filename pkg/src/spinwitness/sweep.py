"""(B, T) grids of thermal witness data and their CSV form."""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

import numpy as np

from . import numkit
from .classical import separable_bound
from .entanglement import concurrence, eof, pair_concurrence, reduced_pair
from .errors import BadConfigError, UsageError
from .models import ModelKind, SectorBasis, SpinModel, hamiltonian
from .thermal import thermal_energy, thermal_state

HEADER = ("B", "T", "energy", "e_sep", "delta_e", "concurrence", "eof", "detected")


def fmt(x: float) -> str:
    """Fixed 9-significant-digit rendering used for every CSV number."""
    return format(float(x), ".9g")


class SweepPoint(NamedTuple):
    b: float
    t: float
    energy: float
    e_sep: float
    delta_e: float
    concurrence: float
    eof: float
    detected: int


def parse_range(text: str) -> list[float]:
    """``start:stop:step`` (stop included within half a step) or a single number."""
    parts = text.split(":")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected start:stop:step or a number") from None
    if len(values) == 1:
        return values
    if len(values) != 3:
        raise UsageError(f"bad range {text!r}; expected start:stop:step")
    start, stop, step = values
    if step <= 0 or stop < start:
        raise UsageError(f"bad range {text!r}; need step > 0 and stop >= start")
    count = int(math.floor((stop - start) / step + 0.5)) + 1
    return [round(start + i * step, 12) for i in range(count)]


@dataclass(frozen=True)
class SweepGrid:
    """Complete rectangular grid of sweep points, rows ordered by (B, T)."""

    b_values: tuple[float, ...]
    t_values: tuple[float, ...]
    points: tuple[SweepPoint, ...]

    def __post_init__(self):
        expected = [(b, t) for b in self.b_values for t in self.t_values]
        got = [(p.b, p.t) for p in self.points]
        if got != expected:
            raise BadConfigError("sweep grid is incomplete or out of (B, T) order")
        for p in self.points:
            if p.detected != int(p.delta_e < 0):
                raise BadConfigError(f"detected flag inconsistent at B={p.b}, T={p.t}")

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write(",".join(HEADER) + "\n")
        for p in self.points:
            out.write(",".join([fmt(x) for x in p[:7]] + [str(p.detected)]) + "\n")
        return out.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SweepGrid":
        lines = text.splitlines()
        if not lines or tuple(lines[0].split(",")) != HEADER:
            raise BadConfigError("sweep CSV header mismatch")
        points = []
        for line in lines[1:]:
            fields = line.split(",")
            if len(fields) != len(HEADER):
                raise BadConfigError(f"bad sweep CSV row {line!r}")
            points.append(SweepPoint(*map(float, fields[:7]), int(fields[7])))
        b_values = tuple(dict.fromkeys(p.b for p in points))
        t_values = tuple(dict.fromkeys(p.t for p in points))
        return cls(b_values, t_values, tuple(points))

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(self.to_csv())

    @classmethod
    def read(cls, path) -> "SweepGrid":
        with open(path, encoding="utf-8") as fh:
            return cls.from_csv(fh.read())


def _embed_sector(model: SpinModel, vectors: np.ndarray) -> np.ndarray:
    """Lift fixed-particle-number eigenvectors into the ``2**n`` qubit space.

    An occupation pattern read as a spin-basis index has occupied sites as
    spin down, the convention of :func:`models.hardcore_spin_hamiltonian`.
    """
    basis = SectorBasis(model.n_sites, model.n_b)
    full = np.zeros((2**model.n_sites, vectors.shape[1]), dtype=vectors.dtype)
    full[list(basis.states), :] = vectors
    return full


def _nn_concurrence(model: SpinModel, rho: np.ndarray) -> float:
    if model.kind in (ModelKind.HEISENBERG, ModelKind.XY):
        return pair_concurrence(rho, model.graph)
    # all pairs are equivalent on the complete graph and on the boson ring
    return concurrence(reduced_pair(rho, 0, 1, model.n_sites))


def sweep_row(model: SpinModel, t_values: Iterable[float], restarts: int = 32, seed: int = 0) -> list[SweepPoint]:
    """All temperatures for one field value, sharing one eigendecomposition."""
    h = hamiltonian(model)
    dec = numkit.eigh(h)
    if model.kind is ModelKind.BOSE_HUBBARD:
        dec = numkit.EigenDecomposition(dec.eigenvalues, _embed_sector(model, dec.eigenvectors))
    e_sep = separable_bound(model, restarts, seed).value
    rows = []
    for t in t_values:
        rho = thermal_state(None, t, dec)
        energy = thermal_energy(dec.eigenvalues, t)
        c = min(max(_nn_concurrence(model, rho), 0.0), 1.0)
        delta = energy - e_sep
        rows.append(SweepPoint(model.b_field, t, energy, e_sep, delta, c, eof(c), int(delta < 0)))
    return rows


def run_sweep(
    make_model: Callable[[float], SpinModel],
    b_values: Iterable[float],
    t_values: Iterable[float],
    threads: int = 1,
    restarts: int = 32,
    seed: int = 0,
) -> SweepGrid:
    """Evaluate the grid; field values run in parallel, rows come back in (B, T) order."""
    b_values, t_values = tuple(b_values), tuple(t_values)
    job = lambda b: sweep_row(make_model(b), t_values, restarts, seed)
    if threads > 1 and len(b_values) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(job, b_values))
    else:
        rows = [job(b) for b in b_values]
    points = []
    for b, row in zip(b_values, rows):
        # keyed by the requested field; values quantized to their CSV form
        for p in row:
            values = [float(fmt(x)) for x in (b, *p[1:7])]
            points.append(SweepPoint(*values, p.detected))
    return SweepGrid(
        tuple(float(fmt(b)) for b in b_values),
        tuple(float(fmt(t)) for t in t_values),
        tuple(points),
    )
