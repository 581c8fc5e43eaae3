"""Command-line interface.

Subcommands: encode, interfere, trotter-scan, spectrum, resonance,
parity-exp, and run (config-driven). Results print to stdout as CSV or
JSON; with ``--out DIR`` they are also written as files (CSV tables plus a
summary/report JSON).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from ._version import __version__
from .encoders import amplitude_encoding, in_positive_orthant, phase_encoding, probability_loading
from .errors import ConfigError, StatekitError
from .experiments import (
    ENCODER_IDS,
    ExperimentConfig,
    QiftParams,
    Table,
    compute_experiment,
    render_csv,
    run_experiment,
    write_csv,
)
from .interference import interference_decomposition
from .qift import (
    HamiltonianSpec,
    coupling_preset,
    evolve_vacuum,
    information_curvature,
)
from .spectral import resonance_similarity, spectral_profile, zeeman_sweep
from .statevec import DenseOperator, Distribution, as_rng, haar_random_unitary
from .tolerances import TOLS


def _parse_floats(text: str, name: str) -> np.ndarray:
    try:
        values = np.array([float(v) for v in text.split(",") if v.strip() != ""])
    except ValueError as exc:
        raise ConfigError(f"cannot parse {name}: {exc}") from exc
    if values.size == 0:
        raise ConfigError(f"{name} must contain at least one number")
    return values


def _parse_grid(text: str, name: str) -> np.ndarray:
    """Parse 'start:stop:points' into a linear grid."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{name} must look like start:stop:points")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"cannot parse {name}: {exc}") from exc
    if points < 1:
        raise ConfigError(f"{name} needs at least one point")
    return np.linspace(start, stop, points)


def _count_arg(text: str):
    if text == "all":
        return "all"
    try:
        return int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError("count must be an integer or 'all'") from exc


def _hadamard_layer(dim: int) -> np.ndarray:
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    u = np.ones((1, 1))
    while u.shape[0] < dim:
        u = np.kron(u, h)
    if u.shape[0] != dim:
        raise ConfigError(f"dimension {dim} is not a power of 2")
    return u.astype(np.complex128)


def _jsonify(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"not JSON serializable: {type(value)}")


def _emit(args, summary: dict, tables: list[Table]) -> None:
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        written = []
        for table in tables:
            path = outdir / f"{table.name}.csv"
            write_csv(table, path)
            written.append(str(path))
        spath = outdir / "summary.json"
        with open(spath, "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=2, default=_jsonify)
            fh.write("\n")
        written.append(str(spath))
        for path in written:
            print(path)
        return
    if args.format == "json":
        payload = {
            "summary": summary,
            "tables": {t.name: {"header": list(t.header), "rows": [list(r) for r in t.rows]} for t in tables},
        }
        print(json.dumps(payload, indent=2, default=_jsonify))
        return
    for key, value in summary.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, default=_jsonify)
        print(f"# {key}: {value}")
    for table in tables:
        sys.stdout.write(render_csv(table))


def _qift_params(args, n: int) -> QiftParams:
    topology = getattr(args, "topology", "ring")
    params = QiftParams(mu=args.mu, tau=args.tau, topology=topology)
    params.coupling_for(n)  # validate early
    return params


def _seed(args) -> int:
    return 0 if args.seed is None else args.seed


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def _cmd_encode(args) -> int:
    if args.values is not None:
        row = _parse_floats(args.values, "--values")
    else:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                row = np.asarray(json.load(fh), dtype=np.float64).ravel()
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read input vector: {exc}") from exc
    if args.encoder == "probability_loading":
        state = probability_loading(row**2 / np.sum(row**2))
    elif args.encoder == "amplitude":
        state = amplitude_encoding(row)
    elif args.encoder == "phase":
        dim = 1 << max(1, (row.size - 1).bit_length())
        padded = np.concatenate([row, np.zeros(dim - row.size)])
        state = phase_encoding(np.full(dim, 1.0 / dim), padded)
    else:
        params = _qift_params(args, row.size)
        state = evolve_vacuum(
            HamiltonianSpec(row, params.coupling_for(row.size), mu=params.mu, tau=params.tau)
        )
    amps = state.amplitudes
    rows = [
        (i, amps[i].real, amps[i].imag, float(np.abs(amps[i]) ** 2))
        for i in range(state.dim)
    ]
    tol = args.tol if args.tol is not None else TOLS.positive_orthant
    summary = {
        "encoder": args.encoder,
        "n_qubits": state.n_qubits,
        "padded_from": state.padded_from,
        "positive_orthant": in_positive_orthant(state, tol),
    }
    _emit(args, summary, [Table("state", ("index", "real", "imag", "probability"), tuple(rows))])
    return 0


def _cmd_interfere(args) -> int:
    rng = as_rng(_seed(args))
    if args.probs is not None:
        dist = Distribution(_parse_floats(args.probs, "--probs"))
    else:
        dist = Distribution(rng.dirichlet(np.ones(args.dim)))
    dim = dist.dim
    if args.unitary == "hadamard":
        u = DenseOperator(_hadamard_layer(dim))
    else:
        u = haar_random_unitary(dim, rng)
    phases = _parse_floats(args.phases, "--phases") if args.phases else None
    outcomes = range(dim) if args.outcome is None else [args.outcome]
    rows = []
    for y in outcomes:
        rep = interference_decomposition(u, dist, phases, y)
        rows.append(
            (y, rep.classical_term, rep.interference_term, rep.total, rep.born_probability, rep.residual)
        )
    summary = {
        "unitary": args.unitary,
        "dim": dim,
        "phase_locked": phases is None,
        "max_residual": max(r[5] for r in rows),
    }
    table = Table(
        "interference",
        ("outcome", "classical", "interference", "total", "born", "residual"),
        tuple(rows),
    )
    _emit(args, summary, [table])
    return 0


def _cmd_trotter_scan(args) -> int:
    if args.x is not None:
        x = _parse_floats(args.x, "--x")
        if x.size != args.n:
            raise ConfigError(f"--x has {x.size} entries but --n is {args.n}")
    else:
        x = as_rng(_seed(args)).uniform(-math.pi, math.pi, args.n)
    coupling = coupling_preset(args.topology, args.n)
    spec = HamiltonianSpec(x, coupling, mu=args.mu, tau=args.tau_max)
    taus = np.geomspace(args.tau_max, args.tau_min, args.points)
    scan = information_curvature(spec, taus)
    summary = {
        "n": args.n,
        "topology": args.topology,
        "mu": args.mu,
        "fitted_slope": scan.fitted_slope,
        "fit_residual": scan.fit_residual,
        "commuting": scan.commuting,
        "commutator_norm": scan.commutator_norm,
    }
    if scan.commuting:
        summary["note"] = "commuting: no curvature"
    table = Table(
        "curvature_scan",
        ("tau", "error"),
        tuple(zip(scan.taus.tolist(), scan.errors.tolist())),
    )
    _emit(args, summary, [table])
    return 0


def _cmd_spectrum(args) -> int:
    x = _parse_floats(args.x, "--x")
    coupling = coupling_preset(args.topology, x.size)
    spec = HamiltonianSpec(x, coupling, mu=args.mu, tau=args.tau)
    profile = spectral_profile(spec)
    tables = [
        Table(
            "spectrum",
            ("index", "eigenvalue"),
            tuple(enumerate(profile.eigenvalues.tolist())),
        )
    ]
    summary = {
        "n": x.size,
        "mass_gap": profile.mass_gap,
        "degenerate": profile.degenerate,
    }
    if args.zeeman:
        trace = zeeman_sweep(spec, _parse_grid(args.zeeman, "--zeeman"))
        summary["stability_score"] = trace.stability_score
        tables.append(
            Table(
                "zeeman_trace",
                ("epsilon", "gap"),
                tuple(zip(trace.epsilons.tolist(), trace.gaps.tolist())),
            )
        )
    _emit(args, summary, tables)
    return 0


def _cmd_resonance(args) -> int:
    xa = _parse_floats(args.x_a, "--x-a")
    xb = _parse_floats(args.x_b, "--x-b")
    spec_a = HamiltonianSpec(xa, coupling_preset(args.topology, xa.size), mu=args.mu, tau=args.tau)
    spec_b = HamiltonianSpec(xb, coupling_preset(args.topology, xb.size), mu=args.mu, tau=args.tau)
    tol = args.tol if args.tol is not None else TOLS.resonance
    verdict = resonance_similarity(spec_a, spec_b, tol)
    summary = {
        "gap_a": verdict.gap_a,
        "gap_b": verdict.gap_b,
        "delta": verdict.delta,
        "resonant": verdict.resonant,
        "tolerance": verdict.tolerance,
        "spectrum_distance": verdict.spectrum_distance,
    }
    table = Table(
        "resonance",
        ("gap_a", "gap_b", "delta", "resonant", "tolerance"),
        ((verdict.gap_a, verdict.gap_b, verdict.delta, verdict.resonant, verdict.tolerance),),
    )
    _emit(args, summary, [table])
    return 0


def _build_parity_config(args, output_dir: str) -> ExperimentConfig:
    raw = {
        "experiment": "parity",
        "n_features": args.n_components,
        "count": args.count,
        "seed": _seed(args),
        "encoders": [e.strip() for e in args.encoders.split(",") if e.strip()],
        "output_dir": output_dir,
    }
    if "qift" in raw["encoders"]:
        raw["qift"] = {"mu": args.mu, "tau": args.tau, "topology": args.topology}
    return ExperimentConfig.from_dict(raw)


def _cmd_parity_exp(args) -> int:
    config = _build_parity_config(args, args.out or ".")
    if args.out:
        report = run_experiment(config)
        for path in report.written:
            print(path)
        return 0
    results, tables = compute_experiment(config)
    _emit(args, {"experiment": "parity", **results}, tables)
    return 0


def _cmd_run(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if args.seed is not None:
        raw["seed"] = args.seed
    if args.out is not None:
        raw["output_dir"] = args.out
    config = ExperimentConfig.from_dict(raw)
    report = run_experiment(config, resonance_tolerance=args.tol)
    print(json.dumps({"results": report.results, "written": list(report.written)}, indent=2, default=_jsonify))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default 0)")
    common.add_argument("--out", type=str, default=None, help="directory to write CSV/JSON files")
    common.add_argument("--format", choices=("csv", "json"), default="csv", help="stdout format")
    common.add_argument("--tol", type=float, default=None, help="tolerance where applicable")

    qift_opts = argparse.ArgumentParser(add_help=False)
    qift_opts.add_argument("--mu", type=float, default=1.0, help="global coupling strength")
    qift_opts.add_argument("--tau", type=float, default=0.1, help="Trotter step")
    qift_opts.add_argument("--topology", default="ring", help="coupling preset: ring or complete")

    parser = argparse.ArgumentParser(
        prog="statekit",
        description="Desk-scale quantum state-vector toolkit",
    )
    parser.add_argument("--version", action="version", version=f"statekit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", parents=[common, qift_opts], help="encode a feature vector")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--values", help="comma-separated feature values")
    group.add_argument("--input", help="JSON file containing a feature array")
    p.add_argument("--encoder", choices=ENCODER_IDS, required=True)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("interfere", parents=[common], help="Born-probability decomposition")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--probs", help="comma-separated probabilities")
    group.add_argument("--dim", type=int, help="draw a seeded Dirichlet distribution of this size")
    p.add_argument("--unitary", choices=("hadamard", "haar"), default="hadamard")
    p.add_argument("--phases", help="comma-separated phases (radians); absent = phase-locked")
    p.add_argument("--outcome", type=int, default=None, help="single outcome (default: all)")
    p.set_defaults(func=_cmd_interfere)

    p = sub.add_parser("trotter-scan", parents=[common, qift_opts], help="Trotter error scaling scan")
    p.add_argument("--n", type=int, required=True, help="number of qubits")
    p.add_argument("--x", help="comma-separated field strengths (default: seeded uniform)")
    p.add_argument("--tau-min", type=float, default=1e-3)
    p.add_argument("--tau-max", type=float, default=1e-1)
    p.add_argument("--points", type=int, default=13)
    p.set_defaults(func=_cmd_trotter_scan)

    p = sub.add_parser("spectrum", parents=[common, qift_opts], help="spectrum and mass gap")
    p.add_argument("--x", required=True, help="comma-separated field strengths")
    p.add_argument("--zeeman", help="perturbation grid start:stop:points (must include 0)")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("resonance", parents=[common, qift_opts], help="gap-coincidence verdict")
    p.add_argument("--x-a", required=True, help="fields of the first spec")
    p.add_argument("--x-b", required=True, help="fields of the second spec")
    p.set_defaults(func=_cmd_resonance)

    p = sub.add_parser("parity-exp", parents=[common, qift_opts], help="parity separability contrast")
    p.add_argument("--n-components", type=int, default=4)
    p.add_argument("--count", type=_count_arg, default="all")
    p.add_argument("--encoders", default="probability_loading,amplitude")
    p.set_defaults(func=_cmd_parity_exp)

    p = sub.add_parser("run", parents=[common], help="run an experiment from a JSON config")
    p.add_argument("config", help="path to the config JSON file")
    p.set_defaults(func=_cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StatekitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
