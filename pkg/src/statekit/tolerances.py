"""Central numerical tolerance configuration.

Every module takes its default tolerances from the single ``TOLS`` record
below instead of scattering magic numbers. Override per call where an
operation exposes a ``tol`` parameter.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    state_norm: float = 1e-10          # unit-norm check on state vectors
    hermitian: float = 1e-12           # max |H - H^dag| entrywise
    unitary: float = 1e-10             # max |U^dag U - I| entrywise
    spectral_residual: float = 1e-9    # eigendecomposition reconstruction / orthonormality
    distribution_sum: float = 1e-10    # |sum(p) - 1| absorbed by silent renormalization
    born_roundtrip: float = 1e-12      # probability loading round trip
    decomposition: float = 1e-10       # |classical + interference - born|
    reality: float = 1e-12             # imaginary leakage of summed interference
    sign_lock_rad: float = 1e-9        # max argument spread for a phase-locked pair term
    diagonal: float = 1e-10            # off-diagonal leakage allowed in a "diagonal" operator
    fast_path: float = 1e-12           # dense vs. factorized sandwich agreement
    curvature_floor: float = 1e-12     # Trotter errors below this count as commuting
    degeneracy: float = 1e-10          # gap below this is reported as a degenerate ground space
    resonance: float = 1e-3            # default spectral-gap coincidence tolerance
    positive_orthant: float = 1e-12    # default tolerance for orthant membership
    gram_symmetry: float = 1e-12       # Gram matrix symmetry deviation
    gram_diagonal: float = 1e-10       # Gram diagonal deviation from 1
    gram_range: float = 1e-12          # Gram entries may exceed 1 by at most this


TOLS = Tolerances()
