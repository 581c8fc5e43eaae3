"""Mass-gap extraction, Zeeman stability sweeps, and gap-coincidence verdicts.

The mass gap is the difference between the two lowest eigenvalues of the
effective Hamiltonian; gaps below the degeneracy tolerance are reported as
zero and flagged. Two data points count as resonant when their gaps
coincide within a tolerance, replacing geometric state overlap as the
similarity notion.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, StatekitError
from .qift import HamiltonianSpec, build_h_data, build_h_topo
from .statevec import (
    HermitianOperator,
    StateVector,
    _freeze,
    hermitian_spectral_decomposition,
    pauli_string,
)
from .tolerances import TOLS


@dataclass(frozen=True, eq=False)
class SpectralProfile:
    """Full ascending spectrum plus the (degeneracy-aware) mass gap."""

    eigenvalues: np.ndarray
    mass_gap: float
    degeneracy_tol: float
    degenerate: bool

    def __post_init__(self):
        vals = np.ascontiguousarray(self.eigenvalues, dtype=np.float64)
        if np.any(np.diff(vals) < 0):
            raise StatekitError("eigenvalues must be ascending")
        object.__setattr__(self, "eigenvalues", _freeze(vals))


@dataclass(frozen=True, eq=False)
class ZeemanTrace:
    """Gap response to a uniform longitudinal field of strength epsilon."""

    epsilons: np.ndarray
    gaps: np.ndarray
    stability_score: float

    def __post_init__(self):
        eps = np.ascontiguousarray(self.epsilons, dtype=np.float64)
        gaps = np.ascontiguousarray(self.gaps, dtype=np.float64)
        if eps.size != gaps.size:
            raise StatekitError("epsilon and gap traces differ in length")
        object.__setattr__(self, "epsilons", _freeze(eps))
        object.__setattr__(self, "gaps", _freeze(gaps))


@dataclass(frozen=True)
class ResonanceVerdict:
    """Gap-coincidence comparison of two specs.

    ``spectrum_distance`` (max eigenvalue deviation over the whole spectrum)
    is auxiliary data only; the verdict is decided by the lowest gaps.
    """

    gap_a: float
    gap_b: float
    delta: float
    resonant: bool
    tolerance: float
    spectrum_distance: float


def effective_hamiltonian(spec: HamiltonianSpec) -> HermitianOperator:
    """H_data + H_topo for one spec."""
    return HermitianOperator(
        build_h_data(spec.fields).matrix + build_h_topo(spec.coupling, spec.mu).matrix
    )


def _profile_of(h: HermitianOperator, degeneracy_tol: float) -> SpectralProfile:
    vals = hermitian_spectral_decomposition(h).eigenvalues
    raw_gap = float(vals[1] - vals[0])
    degenerate = raw_gap < degeneracy_tol
    return SpectralProfile(
        eigenvalues=vals,
        mass_gap=0.0 if degenerate else raw_gap,
        degeneracy_tol=degeneracy_tol,
        degenerate=degenerate,
    )


def spectral_profile(spec: HamiltonianSpec, degeneracy_tol: float = TOLS.degeneracy) -> SpectralProfile:
    """Spectrum and mass gap of the effective Hamiltonian."""
    return _profile_of(effective_hamiltonian(spec), degeneracy_tol)


def zeeman_operator(n_qubits: int) -> HermitianOperator:
    """Uniform longitudinal field sum_j Z_j (diagonal)."""
    h = np.zeros((1 << n_qubits, 1 << n_qubits), dtype=np.complex128)
    for q in range(n_qubits):
        h += pauli_string(n_qubits, {q: "Z"}).matrix
    return HermitianOperator(h)


def zeeman_sweep(
    spec: HamiltonianSpec,
    epsilons: Sequence[float] | np.ndarray,
    degeneracy_tol: float = TOLS.degeneracy,
) -> ZeemanTrace:
    """Mass gap of H_eff + epsilon * sum_j Z_j across a perturbation grid.

    The grid must contain 0 (the unperturbed reference); the stability
    score is the largest absolute gap deviation from that reference.
    """
    eps = np.asarray(epsilons, dtype=np.float64).ravel()
    if eps.size == 0:
        raise StatekitError("epsilon grid is empty")
    if not np.any(eps == 0.0):
        raise StatekitError("epsilon grid must contain 0 as the reference point")
    h0 = effective_hamiltonian(spec).matrix
    zee = zeeman_operator(spec.n_qubits).matrix
    gaps = np.array(
        [_profile_of(HermitianOperator(h0 + e * zee), degeneracy_tol).mass_gap for e in eps]
    )
    ref = gaps[np.flatnonzero(eps == 0.0)[0]]
    return ZeemanTrace(epsilons=eps, gaps=gaps, stability_score=float(np.abs(gaps - ref).max()))


def spectrum_distance(spec_a: HamiltonianSpec, spec_b: HamiltonianSpec) -> float:
    """Max absolute eigenvalue deviation between two full spectra."""
    va = spectral_profile(spec_a).eigenvalues
    vb = spectral_profile(spec_b).eigenvalues
    if va.size != vb.size:
        raise DimensionMismatchError("specs act on different dimensions")
    return float(np.abs(va - vb).max())


def resonance_similarity(
    spec_a: HamiltonianSpec,
    spec_b: HamiltonianSpec,
    tolerance: float = TOLS.resonance,
) -> ResonanceVerdict:
    """Declare two specs resonant when their mass gaps coincide within tolerance."""
    if tolerance <= 0:
        raise StatekitError("tolerance must be positive")
    gap_a = spectral_profile(spec_a).mass_gap
    gap_b = spectral_profile(spec_b).mass_gap
    delta = abs(gap_a - gap_b)
    dist = (
        spectrum_distance(spec_a, spec_b)
        if spec_a.n_qubits == spec_b.n_qubits
        else float("nan")
    )
    return ResonanceVerdict(
        gap_a=gap_a,
        gap_b=gap_b,
        delta=delta,
        resonant=delta <= tolerance,
        tolerance=tolerance,
        spectrum_distance=dist,
    )


def overlap_similarity(psi_a: StateVector, psi_b: StateVector) -> float:
    """Fidelity |<a|b>|^2, the geometric-overlap baseline."""
    if psi_a.dim != psi_b.dim:
        raise DimensionMismatchError(f"state dims differ: {psi_a.dim} vs {psi_b.dim}")
    return float(np.abs(np.vdot(psi_a.amplitudes, psi_b.amplitudes)) ** 2)
