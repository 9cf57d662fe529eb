"""Quantum invariants of closed 3-manifolds at a primitive 4r-th root of
unity: surgery invariants with spin refinements, triangulation state sums
with Z2-cohomology refinements, and the genus-g vector-space machinery
connecting them."""

from .theory import (TheoryParams, TheoryError, make_theory, quantum_int,
                     omega_sq, q_sq, omega, omega_squared, delta, delta_bar,
                     isclose)
from .recoupling import RecouplingTable, admissible

__all__ = [
    "TheoryParams", "TheoryError", "make_theory", "quantum_int",
    "omega_sq", "q_sq", "omega", "omega_squared", "delta", "delta_bar",
    "isclose", "RecouplingTable", "admissible",
]

__version__ = "0.1.0"
