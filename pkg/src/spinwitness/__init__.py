"""Entanglement detection in spin models by energy measurement.

The expectation value of a Hamiltonian built from two-body interactions is
bounded from below on separable states; an energy under that bound certifies
entanglement. The package computes such bounds, the quantum energies they are
compared with (ground and thermal states of small lattices), and two-qubit
entanglement measures for cross-checking.
"""

from .classical import (
    ClassicalSpinConfig,
    SeparableBound,
    bh_bound,
    classical_energy,
    collective_bound,
    gutzwiller_min,
    heisenberg_bound,
    minimize_pair,
    minimize_product,
    separable_bound,
    variance_floor,
    xy_bound,
)
from .entanglement import (
    collective_concurrence_from_energy,
    concurrence,
    eof,
    heisenberg_concurrence_from_energy,
    nn_correlation_average,
    reduced_pair,
    unentangled_bound,
    witness_delta,
)
from .lattice import InteractionGraph, chain, complete, cubic, hexagonal, triangular, two_color
from .models import (
    SectorBasis,
    SpinModel,
    build_bh_hardcore,
    build_collective,
    build_heisenberg,
    build_xy,
    hamiltonian,
    pauli_at,
)
from .thermal import (
    GrandCanonicalBH,
    LevelSet,
    collective_asymptotics,
    collective_levels,
    collective_thermal_energy,
    temperature_bound,
    thermal_energy,
    thermal_state,
)

__version__ = "0.1.0"
