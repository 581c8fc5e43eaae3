"""Dynamical Hamiltonian encoding: data as generator of unitary evolution.

A feature vector drives the local-field term ``sum_j x_j sigma_y_j`` and a
coupling matrix drives the diagonal pairwise term
``mu * sum_{j<k} J_jk sigma_z_j sigma_z_k``. The two do not commute, so the
single symmetric product step

    exp(-i tau/2 H_data) exp(-i tau H_topo) exp(-i tau/2 H_data)

differs from the exact evolution by a third-order residual; the scan below
measures that scaling exponent directly.

Two implementations of the step coexist on purpose: a dense path through
exact eigendecomposition exponentials, and a factorized fast path (per-qubit
y-rotations and an elementwise diagonal phase). Their agreement is one of
the package's strongest self-checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import StatekitError
from .statevec import (
    DenseOperator,
    HermitianOperator,
    StateVector,
    _freeze,
    evolve,
    operator_distance,
    pauli_string,
)
from .tolerances import TOLS

DEFAULT_TAU_GRID = tuple(np.geomspace(1e-1, 1e-3, 13))


@dataclass(frozen=True, eq=False)
class HamiltonianSpec:
    """Inputs that fully determine one data-dependent Hamiltonian.

    fields   : per-qubit local field strengths (one per feature); values in
               [-pi, pi] are recommended so single-step rotations do not alias.
    coupling : symmetric n x n matrix with zero diagonal.
    mu       : global coupling strength.
    tau      : Trotter step, > 0.
    """

    fields: np.ndarray
    coupling: np.ndarray
    mu: float = 1.0
    tau: float = 0.1

    def __post_init__(self):
        x = np.ascontiguousarray(self.fields, dtype=np.float64).ravel()
        j = np.ascontiguousarray(self.coupling, dtype=np.float64)
        if x.size < 1:
            raise StatekitError("at least one field strength is required")
        if j.shape != (x.size, x.size):
            raise StatekitError(f"coupling shape {j.shape} does not match {x.size} fields")
        if not np.array_equal(j, j.T):
            raise StatekitError("coupling matrix must be exactly symmetric")
        if np.any(np.diagonal(j) != 0):
            raise StatekitError("coupling matrix must have zero diagonal")
        if not self.tau > 0:
            raise StatekitError(f"tau must be > 0, got {self.tau}")
        object.__setattr__(self, "fields", _freeze(x))
        object.__setattr__(self, "coupling", _freeze(j))
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "tau", float(self.tau))

    @property
    def n_qubits(self) -> int:
        return self.fields.size

    @property
    def dim(self) -> int:
        return 1 << self.fields.size


@dataclass(frozen=True, eq=False)
class CurvatureScan:
    """Trotter-step errors over a tau grid and their log-log scaling fit.

    ``commuting`` is set when every error sits below the floating-point
    floor (the factorization is exact); the slope is then undefined and
    left as None rather than fitted to noise.
    """

    taus: np.ndarray
    errors: np.ndarray
    fitted_slope: float | None
    fit_residual: float | None
    commuting: bool
    commutator_norm: float

    def __post_init__(self):
        taus = np.ascontiguousarray(self.taus, dtype=np.float64)
        errors = np.ascontiguousarray(self.errors, dtype=np.float64)
        d = np.diff(taus)
        if not (np.all(d > 0) or np.all(d < 0)):
            raise StatekitError("tau grid must be strictly monotone")
        if np.any(errors < 0):
            raise StatekitError("errors must be non-negative")
        object.__setattr__(self, "taus", _freeze(taus))
        object.__setattr__(self, "errors", _freeze(errors))


def ring_coupling(n: int) -> np.ndarray:
    """Nearest-neighbour ring: J_{j,j+1 mod n} = 1."""
    j = np.zeros((n, n))
    for a in range(n):
        b = (a + 1) % n
        if b != a:
            j[a, b] = j[b, a] = 1.0
    return j


def complete_coupling(n: int) -> np.ndarray:
    """All-to-all coupling: every off-diagonal entry 1."""
    return np.ones((n, n)) - np.eye(n)


def coupling_preset(name: str, n: int) -> np.ndarray:
    if name == "ring":
        return ring_coupling(n)
    if name == "complete":
        return complete_coupling(n)
    raise StatekitError(f"unknown coupling preset {name!r} (expected 'ring' or 'complete')")


def build_h_data(fields: Sequence[float] | np.ndarray) -> HermitianOperator:
    """Local-field term sum_j x_j sigma_y_j (traceless, Hermitian)."""
    x = np.asarray(fields, dtype=np.float64).ravel()
    if x.size < 1:
        raise StatekitError("at least one field strength is required")
    n = x.size
    h = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    for q in range(n):
        if x[q] != 0.0:
            h += x[q] * pauli_string(n, {q: "Y"}).matrix
    return HermitianOperator(h)


def build_h_topo(coupling: np.ndarray, mu: float) -> HermitianOperator:
    """Pairwise coupling term mu * sum_{j<k} J_jk Z_j Z_k (diagonal).

    Uses the diagonal fast path; ``build_h_topo_dense`` is the brute-force
    Pauli-string oracle for cross-checks.
    """
    j = np.asarray(coupling, dtype=np.float64)
    if j.ndim != 2 or j.shape[0] != j.shape[1]:
        raise StatekitError(f"coupling must be square, got shape {j.shape}")
    if not np.array_equal(j, j.T):
        raise StatekitError("coupling matrix must be exactly symmetric")
    if np.any(np.diagonal(j) != 0):
        raise StatekitError("coupling matrix must have zero diagonal")
    diag = mu * _kernels.zz_diagonal(j)
    return HermitianOperator(np.diag(diag.astype(np.complex128)))


def build_h_topo_dense(coupling: np.ndarray, mu: float) -> HermitianOperator:
    """Same operator as ``build_h_topo`` via explicit Pauli-string sums."""
    j = np.asarray(coupling, dtype=np.float64)
    n = j.shape[0]
    h = np.zeros((1 << n, 1 << n), dtype=np.complex128)
    for a in range(n):
        for b in range(a + 1, n):
            if j[a, b] != 0.0:
                h += mu * j[a, b] * pauli_string(n, {a: "Z", b: "Z"}).matrix
    return HermitianOperator(h)


def _rotation_layer_matrix(half_angles: np.ndarray) -> np.ndarray:
    """Kronecker product of per-qubit rotations exp(-i a_q sigma_y)."""
    rot = np.ones((1, 1))
    for a in half_angles:
        c, s = math.cos(a), math.sin(a)
        rot = np.kron(rot, np.array([[c, -s], [s, c]]))
    return rot.astype(np.complex128)


def sandwich_unitary(spec: HamiltonianSpec, steps: int = 1, method: str = "factorized") -> DenseOperator:
    """Symmetric product step exp(-i tau/2 A) exp(-i tau B) exp(-i tau/2 A).

    ``steps=r`` applies the step r times at tau/r each. ``method`` selects
    the factorized fast path (default) or the dense eigendecomposition
    path; the two agree within ``TOLS.fast_path``.
    """
    if steps < 1:
        raise StatekitError("steps must be >= 1")
    tau_s = spec.tau / steps
    if method == "factorized":
        rot = _rotation_layer_matrix((tau_s / 2.0) * spec.fields)
        dphase = np.exp(-1j * tau_s * spec.mu * _kernels.zz_diagonal(spec.coupling))
        step = rot @ (dphase[:, None] * rot)
    elif method == "dense":
        half = evolve(build_h_data(spec.fields), tau_s / 2.0).matrix
        mid = evolve(build_h_topo(spec.coupling, spec.mu), tau_s).matrix
        step = half @ mid @ half
    else:
        raise StatekitError(f"unknown method {method!r} (expected 'factorized' or 'dense')")
    u = step
    for _ in range(steps - 1):
        u = u @ step
    return DenseOperator(u)


def exact_unitary(spec: HamiltonianSpec) -> DenseOperator:
    """Reference evolution exp(-i tau (H_data + H_topo))."""
    h = HermitianOperator(
        build_h_data(spec.fields).matrix + build_h_topo(spec.coupling, spec.mu).matrix
    )
    return evolve(h, spec.tau)


def commutator_norm(spec: HamiltonianSpec) -> float:
    """Spectral norm of [H_data, H_topo]; zero iff the two terms commute."""
    a = build_h_data(spec.fields).matrix
    b = build_h_topo(spec.coupling, spec.mu).matrix
    return float(np.linalg.norm(a @ b - b @ a, 2))


def information_curvature(
    spec_base: HamiltonianSpec,
    taus: Sequence[float] | np.ndarray | None = None,
) -> CurvatureScan:
    """Scan the sandwich-vs-exact spectral distance over a tau grid.

    Requires at least 5 grid points spanning at least 1.5 decades. For a
    non-commuting spec the fitted log-log slope sits in the third-order
    window; a commuting spec is flagged instead of fitted.
    """
    grid = np.asarray(DEFAULT_TAU_GRID if taus is None else taus, dtype=np.float64)
    if grid.size < 5:
        raise StatekitError("tau grid needs at least 5 points")
    if np.any(grid <= 0):
        raise StatekitError("tau grid must be positive")
    d = np.diff(grid)
    if not (np.all(d > 0) or np.all(d < 0)):
        raise StatekitError("tau grid must be strictly monotone")
    if math.log10(grid.max() / grid.min()) < 1.5:
        raise StatekitError("tau grid must span at least 1.5 decades")

    comm = commutator_norm(spec_base)
    errors = []
    for t in grid:
        scan_spec = replace(spec_base, tau=float(t))
        errors.append(
            operator_distance(sandwich_unitary(scan_spec), exact_unitary(scan_spec), "spectral")
        )
    errors = np.array(errors)
    commuting = bool(errors.max() < TOLS.curvature_floor)
    slope = resid = None
    mask = errors > TOLS.curvature_floor
    if not commuting and mask.sum() >= 2:
        # points at the floating-point floor would contaminate the fit
        logt = np.log(grid[mask])
        loge = np.log(errors[mask])
        coeffs = np.polyfit(logt, loge, 1)
        slope = float(coeffs[0])
        resid = float(np.sqrt(np.mean((loge - np.polyval(coeffs, logt)) ** 2)))
    return CurvatureScan(
        taus=grid,
        errors=errors,
        fitted_slope=slope,
        fit_residual=resid,
        commuting=commuting,
        commutator_norm=comm,
    )


def evolve_vacuum(spec: HamiltonianSpec, steps: int = 1) -> StateVector:
    """Apply the sandwich step to the all-zeros vacuum state.

    Runs through the state-level kernels (rotation layer, diagonal phase,
    rotation layer) without materializing the dense operator; this is the
    hot path when encoding whole datasets.
    """
    if steps < 1:
        raise StatekitError("steps must be >= 1")
    tau_s = spec.tau / steps
    amps = np.zeros(spec.dim, dtype=np.complex128)
    amps[0] = 1.0
    half_angles = (tau_s / 2.0) * spec.fields
    dphase = np.exp(-1j * tau_s * spec.mu * _kernels.zz_diagonal(spec.coupling))
    for _ in range(steps):
        amps = _kernels.ry_layer(amps, half_angles)
        amps = amps * dphase
        amps = _kernels.ry_layer(amps, half_angles)
    return StateVector(amps)
