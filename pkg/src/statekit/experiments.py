"""Seeded experiments: datasets, fidelity kernels, classification, reports.

Every experiment is a pure function of (config, seed): repeated runs emit
byte-identical CSV tables. Four experiments are wired up:

    parity              encoder contrast on the sign-vector parity task
    curvature-scan      Trotter-error scaling of the sandwich step
    resonance           pairwise gap-coincidence verdicts on seeded specs
    interference-audit  decomposition and diagonal-trap residuals at scale

Configs arrive as strict JSON (unknown keys are rejected); reports carry a
full config echo plus tool version and seed for provenance.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from ._version import __version__
from .encoders import amplitude_encoding, phase_encoding, probability_loading
from .errors import ConfigError, DimensionMismatchError, StatekitError
from .interference import diagonal_trap_residual, interference_decomposition
from .qift import HamiltonianSpec, coupling_preset, evolve_vacuum, information_curvature
from .spectral import resonance_similarity, spectral_profile
from .statevec import (
    DenseOperator,
    Distribution,
    StateVector,
    _freeze,
    _is_pow2,
    as_rng,
    haar_random_unitary,
)
from .tolerances import TOLS

ENCODER_IDS = ("probability_loading", "amplitude", "phase", "qift")
EXPERIMENT_IDS = ("parity", "curvature-scan", "resonance", "interference-audit")
TOPOLOGY_PRESETS = ("ring", "complete")


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Real feature rows with binary labels in {-1, +1}."""

    vectors: np.ndarray
    labels: np.ndarray
    seed: int

    def __post_init__(self):
        v = np.ascontiguousarray(self.vectors, dtype=np.float64)
        l = np.ascontiguousarray(self.labels, dtype=np.int64).ravel()
        if v.ndim != 2 or v.shape[0] != l.size:
            raise StatekitError("vectors and labels must have matching first dimension")
        if not np.all(np.isin(l, (-1, 1))):
            raise StatekitError("labels must be +1 or -1")
        object.__setattr__(self, "vectors", _freeze(v))
        object.__setattr__(self, "labels", _freeze(l))

    def __len__(self) -> int:
        return self.labels.size


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Pairwise state fidelities |<a|b>|^2 for one encoder."""

    entries: np.ndarray
    encoder_id: str = "custom"

    def __post_init__(self):
        k = np.ascontiguousarray(self.entries, dtype=np.float64)
        if k.ndim != 2 or k.shape[0] != k.shape[1]:
            raise StatekitError(f"Gram matrix must be square, got {k.shape}")
        if np.abs(k - k.T).max() > TOLS.gram_symmetry:
            raise StatekitError(f"Gram matrix is not symmetric within {TOLS.gram_symmetry}")
        if np.abs(np.diagonal(k) - 1.0).max() > TOLS.gram_diagonal:
            raise StatekitError(f"Gram diagonal deviates from 1 beyond {TOLS.gram_diagonal}")
        if k.min() < 0 or k.max() > 1 + TOLS.gram_range:
            raise StatekitError("Gram entries leave [0, 1] beyond tolerance")
        object.__setattr__(self, "entries", _freeze(k))

    @property
    def n_samples(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class QiftParams:
    """Hamiltonian-encoder hyperparameters: coupling strength, step, topology."""

    mu: float = 1.0
    tau: float = 0.1
    topology: Union[str, np.ndarray] = "ring"

    def coupling_for(self, n: int) -> np.ndarray:
        if isinstance(self.topology, str):
            return coupling_preset(self.topology, n)
        j = np.asarray(self.topology, dtype=np.float64)
        if j.shape != (n, n):
            raise ConfigError(f"explicit coupling matrix has shape {j.shape}, expected ({n}, {n})")
        return j

    def topology_jsonable(self):
        if isinstance(self.topology, str):
            return self.topology
        return np.asarray(self.topology).tolist()


@dataclass(frozen=True)
class Table:
    """One CSV-bound result table: header plus homogeneous rows."""

    name: str
    header: tuple[str, ...]
    rows: tuple[tuple, ...]


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    """Validated run description; build from JSON via ``from_dict``."""

    experiment: str
    n_features: int
    count: Union[int, str]
    seed: int
    output_dir: str
    encoders: tuple[str, ...] = ()
    qift: QiftParams | None = None

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        known = {"experiment", "n_features", "count", "seed", "encoders", "qift", "output_dir"}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        missing = {"experiment", "n_features", "count", "seed", "output_dir"} - set(raw)
        if missing:
            raise ConfigError(f"missing config keys: {sorted(missing)}")

        experiment = raw["experiment"]
        if experiment not in EXPERIMENT_IDS:
            raise ConfigError(f"unknown experiment {experiment!r}; expected one of {EXPERIMENT_IDS}")
        n_features = _require_int(raw["n_features"], "n_features", minimum=1)
        count = raw["count"]
        if count != "all":
            count = _require_int(count, "count", minimum=1)
        seed = _require_int(raw["seed"], "seed", minimum=0)
        output_dir = raw["output_dir"]
        if not isinstance(output_dir, str) or not output_dir:
            raise ConfigError("output_dir must be a non-empty string")

        encoders_raw = raw.get("encoders", [])
        if not isinstance(encoders_raw, list):
            raise ConfigError("encoders must be a list")
        for enc in encoders_raw:
            if enc not in ENCODER_IDS:
                raise ConfigError(f"unknown encoder {enc!r}; expected one of {ENCODER_IDS}")

        qift = None
        if "qift" in raw and raw["qift"] is not None:
            qift = _parse_qift_block(raw["qift"])

        cfg = cls(
            experiment=experiment,
            n_features=n_features,
            count=count,
            seed=seed,
            output_dir=output_dir,
            encoders=tuple(encoders_raw),
            qift=qift,
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.experiment == "parity":
            if not self.encoders:
                raise ConfigError("parity experiment requires a non-empty encoders list")
            if not _is_pow2(self.n_features) or self.n_features < 2:
                raise ConfigError("parity experiment requires n_features to be a power of 2 (>= 2)")
        else:
            # n_features counts qubits here; the toolkit is dense-only
            if self.n_features > 14:
                raise ConfigError(f"{self.experiment} supports at most 14 qubits, got {self.n_features}")
        if self.experiment == "resonance":
            if self.count == "all" or int(self.count) < 2:
                raise ConfigError("resonance experiment requires an integer count >= 2")
        if self.experiment in ("curvature-scan", "interference-audit") and self.count == "all":
            raise ConfigError(f"{self.experiment} requires an integer count")

    def qift_params(self) -> QiftParams:
        return self.qift if self.qift is not None else QiftParams()

    def to_jsonable(self) -> dict:
        out = {
            "experiment": self.experiment,
            "n_features": self.n_features,
            "count": self.count,
            "seed": self.seed,
            "encoders": list(self.encoders),
            "output_dir": self.output_dir,
        }
        if self.qift is not None:
            out["qift"] = {
                "mu": self.qift.mu,
                "tau": self.qift.tau,
                "topology": self.qift.topology_jsonable(),
            }
        return out


@dataclass(frozen=True, eq=False)
class ExperimentReport:
    """Results plus provenance; every number reproducible from (config, seed)."""

    config: dict
    results: dict
    provenance: dict
    tables: tuple[Table, ...]
    written: tuple[str, ...] = ()

    def to_jsonable(self) -> dict:
        return {"config": self.config, "results": self.results, "provenance": self.provenance}


def _require_int(value, name: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer")
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}")
    return value


def _parse_qift_block(raw: dict) -> QiftParams:
    if not isinstance(raw, dict):
        raise ConfigError("qift block must be a JSON object")
    unknown = set(raw) - {"mu", "tau", "topology"}
    if unknown:
        raise ConfigError(f"unknown qift keys: {sorted(unknown)}")
    mu = raw.get("mu", 1.0)
    tau = raw.get("tau", 0.1)
    if isinstance(mu, bool) or not isinstance(mu, (int, float)):
        raise ConfigError("qift.mu must be a number")
    if isinstance(tau, bool) or not isinstance(tau, (int, float)) or not tau > 0:
        raise ConfigError("qift.tau must be a positive number")
    topology = raw.get("topology", "ring")
    if isinstance(topology, str):
        if topology not in TOPOLOGY_PRESETS:
            raise ConfigError(
                f"unknown topology preset {topology!r}; expected one of {TOPOLOGY_PRESETS}"
            )
    elif isinstance(topology, list):
        topology = np.asarray(topology, dtype=np.float64)
        if topology.ndim != 2 or topology.shape[0] != topology.shape[1]:
            raise ConfigError("explicit topology must be a square matrix")
    else:
        raise ConfigError("topology must be a preset name or a square matrix")
    return QiftParams(mu=float(mu), tau=float(tau), topology=topology)


# ---------------------------------------------------------------------------
# datasets and kernels
# ---------------------------------------------------------------------------

def gen_parity_dataset(
    n_components: int,
    count: Union[int, str] = "all",
    seed: int = 0,
) -> LabeledDataset:
    """Sign vectors in {-1,+1}^N labeled by the product of their entries.

    Component j of enumeration index i is +1 when bit j of i (least
    significant first) is 0. ``count="all"`` enumerates all 2^N vectors in
    index order; an integer count samples that many without replacement.
    """
    if not _is_pow2(n_components) or n_components < 2:
        raise StatekitError("n_components must be a power of 2 (>= 2)")
    total = 1 << n_components
    if count == "all":
        indices = np.arange(total)
    else:
        if isinstance(count, bool) or not isinstance(count, int) or count < 1:
            raise StatekitError("count must be a positive integer or 'all'")
        if count > total:
            raise StatekitError(f"count {count} exceeds the {total} distinct sign vectors")
        indices = as_rng(seed).choice(total, size=count, replace=False)
    bits = (indices[:, None] >> np.arange(n_components)[None, :]) & 1
    vectors = 1.0 - 2.0 * bits
    labels = np.prod(vectors, axis=1).astype(np.int64)
    return LabeledDataset(vectors=vectors, labels=labels, seed=seed)


def encode_dataset(
    ds: LabeledDataset,
    encoder_id: str,
    qift_params: QiftParams | None = None,
) -> list[StateVector]:
    """Encode every dataset row into a state with one named encoder.

    probability_loading  row v induces p_i = v_i^2 / |v|^2
    amplitude            row normalized directly, signs kept
    phase                uniform distribution dressed with phases phi_i = v_i
    qift                 row feeds the local fields of a Hamiltonian spec;
                         the state is the evolved vacuum (needs qift_params)
    """
    if encoder_id not in ENCODER_IDS:
        raise StatekitError(f"unknown encoder {encoder_id!r}; expected one of {ENCODER_IDS}")
    if encoder_id != "qift" and qift_params is not None:
        raise StatekitError(f"qift parameters are not valid for encoder {encoder_id!r}")
    rows = ds.vectors
    if encoder_id == "probability_loading":
        return [probability_loading(row**2 / np.sum(row**2)) for row in rows]
    if encoder_id == "amplitude":
        return [amplitude_encoding(row) for row in rows]
    if encoder_id == "phase":
        uniform = np.full(rows.shape[1], 1.0 / rows.shape[1])
        return [phase_encoding(uniform, row) for row in rows]
    params = qift_params if qift_params is not None else QiftParams()
    n = rows.shape[1]
    coupling = params.coupling_for(n)
    return [
        evolve_vacuum(HamiltonianSpec(row, coupling, mu=params.mu, tau=params.tau))
        for row in rows
    ]


def fidelity_gram(states: Sequence[StateVector], encoder_id: str = "custom") -> GramMatrix:
    """All pairwise fidelities |<a|b>|^2, symmetrized."""
    if not states:
        raise StatekitError("at least one state is required")
    dim = states[0].dim
    if any(s.dim != dim for s in states):
        raise DimensionMismatchError("states have mixed dimensions")
    stack = np.vstack([s.amplitudes for s in states])
    k = np.abs(stack.conj() @ stack.T) ** 2
    return GramMatrix(entries=0.5 * (k + k.T), encoder_id=encoder_id)


def nn_classify_loo(gram: Union[GramMatrix, np.ndarray], labels: Sequence[int]) -> float:
    """Leave-one-out 1-nearest-neighbour accuracy under a similarity matrix.

    Ties go to the lowest tied sample index. A fully degenerate row (every
    candidate equally similar) carries no neighbour information; by
    convention it predicts the label of the dataset's first sample, keeping
    the output deterministic.
    """
    k = gram.entries if isinstance(gram, GramMatrix) else np.asarray(gram, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64).ravel()
    m = labels.size
    if k.shape != (m, m):
        raise DimensionMismatchError(f"Gram shape {k.shape} does not match {m} labels")
    if m < 2:
        raise StatekitError("need at least 2 samples for leave-one-out classification")
    if np.unique(labels).size < 2:
        raise StatekitError("degenerate single-class input: both classes are required")
    correct = 0
    for i in range(m):
        row = k[i]
        best = -np.inf
        for j in range(m):
            if j != i and row[j] > best:
                best = row[j]
        tied = [j for j in range(m) if j != i and row[j] == best]
        if len(tied) > 1 and len(tied) == m - 1:
            pred = labels[0]
        else:
            pred = labels[tied[0]]
        correct += int(pred == labels[i])
    return correct / m


def distinguishability(states: Sequence[StateVector], labels: Sequence[int]) -> float:
    """Minimum cross-class fidelity distance sqrt(1 - |<a|b>|^2).

    Zero means some pair with opposite labels is indistinguishable by any
    measurement on these states.
    """
    labels = np.asarray(labels, dtype=np.int64).ravel()
    gram = fidelity_gram(states)
    return _distinguishability_from_gram(gram, labels)


def _distinguishability_from_gram(gram: GramMatrix, labels: np.ndarray) -> float:
    pos = np.flatnonzero(labels == 1)
    neg = np.flatnonzero(labels == -1)
    if pos.size == 0 or neg.size == 0:
        raise StatekitError("both classes must be nonempty")
    cross = gram.entries[np.ix_(pos, neg)]
    return float(np.sqrt(np.maximum(0.0, 1.0 - cross)).min())


# ---------------------------------------------------------------------------
# experiment runners
# ---------------------------------------------------------------------------

def _run_parity(config: ExperimentConfig) -> tuple[dict, list[Table]]:
    ds = gen_parity_dataset(config.n_features, config.count, config.seed)
    per_encoder = {}
    rows = []
    for enc in config.encoders:
        params = config.qift_params() if enc == "qift" else None
        states = encode_dataset(ds, enc, params)
        gram = fidelity_gram(states, enc)
        acc = nn_classify_loo(gram, ds.labels)
        dist = _distinguishability_from_gram(gram, ds.labels)
        per_encoder[enc] = {"accuracy": acc, "distinguishability": dist}
        rows.append((enc, acc, dist))
    results = {"n_samples": len(ds), "per_encoder": per_encoder}
    table = Table(
        name="parity_results",
        header=("encoder", "accuracy", "distinguishability"),
        rows=tuple(rows),
    )
    return results, [table]


def _run_curvature(config: ExperimentConfig) -> tuple[dict, list[Table]]:
    params = config.qift_params()
    n = config.n_features
    rng = as_rng(config.seed)
    x = rng.uniform(-math.pi, math.pi, n)
    spec = HamiltonianSpec(x, params.coupling_for(n), mu=params.mu, tau=params.tau)
    scan = information_curvature(spec)
    results = {
        "fitted_slope": scan.fitted_slope,
        "fit_residual": scan.fit_residual,
        "commuting": scan.commuting,
        "commutator_norm": scan.commutator_norm,
        "fields": x.tolist(),
    }
    table = Table(
        name="curvature_scan",
        header=("tau", "error"),
        rows=tuple(zip(scan.taus.tolist(), scan.errors.tolist())),
    )
    return results, [table]


def _run_resonance(config: ExperimentConfig, tolerance: float) -> tuple[dict, list[Table]]:
    params = config.qift_params()
    n = config.n_features
    rng = as_rng(config.seed)
    coupling = params.coupling_for(n)
    specs = [
        HamiltonianSpec(rng.uniform(-math.pi, math.pi, n), coupling, mu=params.mu, tau=params.tau)
        for _ in range(int(config.count))
    ]
    gaps = [spectral_profile(s).mass_gap for s in specs]
    rows = []
    n_resonant = 0
    for a in range(len(specs)):
        for b in range(a + 1, len(specs)):
            verdict = resonance_similarity(specs[a], specs[b], tolerance)
            n_resonant += int(verdict.resonant)
            rows.append((a, b, verdict.gap_a, verdict.gap_b, verdict.delta, verdict.resonant))
    results = {
        "tolerance": tolerance,
        "n_specs": len(specs),
        "n_pairs": len(rows),
        "n_resonant": n_resonant,
        "gaps": gaps,
    }
    table = Table(
        name="resonance_pairs",
        header=("spec_a", "spec_b", "gap_a", "gap_b", "delta", "resonant"),
        rows=tuple(rows),
    )
    return results, [table]


def _run_interference_audit(config: ExperimentConfig) -> tuple[dict, list[Table]]:
    n = config.n_features
    dim = 1 << n
    rng = as_rng(config.seed)
    rows = []
    for case in range(int(config.count)):
        u = haar_random_unitary(dim, rng)
        p = Distribution(rng.dirichlet(np.ones(dim)))
        phased = case % 2 == 1
        phi = rng.uniform(0.0, 2.0 * math.pi, dim) if phased else None
        decomp_resid = max(
            interference_decomposition(u, p, phi, y).residual for y in range(dim)
        )
        d = DenseOperator(np.diag(np.exp(1j * rng.uniform(0.0, 2.0 * math.pi, dim))))
        trap_resid = diagonal_trap_residual(p, d)
        rows.append((case, phased, decomp_resid, trap_resid))
    decomp = max(r[2] for r in rows)
    trap = max(r[3] for r in rows)
    results = {
        "cases": len(rows),
        "max_decomposition_residual": decomp,
        "max_trap_residual": trap,
    }
    table = Table(
        name="interference_audit",
        header=("case", "phased", "decomposition_residual", "trap_residual"),
        rows=tuple(rows),
    )
    return results, [table]


def compute_experiment(
    config: ExperimentConfig,
    resonance_tolerance: float | None = None,
) -> tuple[dict, list[Table]]:
    """Run the configured experiment in memory; no files touched."""
    config.validate()
    if config.experiment == "parity":
        return _run_parity(config)
    if config.experiment == "curvature-scan":
        return _run_curvature(config)
    if config.experiment == "resonance":
        tol = TOLS.resonance if resonance_tolerance is None else resonance_tolerance
        return _run_resonance(config, tol)
    return _run_interference_audit(config)


def run_experiment(
    config: ExperimentConfig,
    resonance_tolerance: float | None = None,
) -> ExperimentReport:
    """Execute an experiment and write its report JSON plus CSV tables.

    All computation happens before the first file is created, so a failing
    run leaves no partial output behind.
    """
    results, tables = compute_experiment(config, resonance_tolerance)
    provenance = {
        "version": __version__,
        "seed": config.seed,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    outdir = Path(config.output_dir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise ConfigError(f"cannot create output directory {outdir}: {exc}") from exc
    written = []
    report = ExperimentReport(
        config=config.to_jsonable(),
        results=results,
        provenance=provenance,
        tables=tuple(tables),
    )
    try:
        for table in tables:
            path = outdir / f"{table.name}.csv"
            write_csv(table, path)
            written.append(str(path))
        report_path = outdir / "report.json"
        with open(report_path, "w", encoding="utf-8") as fh:
            json.dump(report.to_jsonable(), fh, indent=2)
            fh.write("\n")
        written.append(str(report_path))
    except OSError as exc:
        raise ConfigError(f"cannot write into {outdir}: {exc}") from exc
    return ExperimentReport(
        config=report.config,
        results=report.results,
        provenance=report.provenance,
        tables=report.tables,
        written=tuple(written),
    )


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------

def format_cell(value) -> str:
    """Canonical cell text: 17 significant digits for floats (round-trip exact)."""
    if isinstance(value, bool) or isinstance(value, np.bool_):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def write_csv(table: Table, path: Union[str, Path]) -> None:
    """RFC-4180-style CSV: header row, CRLF line endings, '.' decimals."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(table.header)
        for row in table.rows:
            writer.writerow([format_cell(v) for v in row])


def render_csv(table: Table) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([format_cell(v) for v in row])
    return buf.getvalue()
