"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""
import time

import numpy as np
import pytest

import statekit as sk
from statekit.experiments import ENCODER_IDS


def report(number, name, ok, detail):
    print(f"criterion {number} ({name}): {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {number} ({name}) failed: {detail}"


def hadamard_layer(n):
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    u = np.ones((1, 1))
    for _ in range(n):
        u = np.kron(u, h)
    return sk.DenseOperator(u.astype(complex))


def test_criterion_1_decomposition_identity():
    rng = np.random.default_rng(101)
    n, dim = 3, 8
    worst = 0.0
    for case in range(100):
        u = sk.haar_random_unitary(dim, rng)
        p = rng.dirichlet(np.ones(dim))
        phi = rng.uniform(0, 2 * np.pi, dim) if case % 2 else None
        for y in range(dim):
            rep = sk.interference_decomposition(u, p, phi, y)
            worst = max(worst, rep.residual)
    report(1, "decomposition identity", worst < 1e-10, f"max residual {worst:.3e} over 100 cases x 8 outcomes")


def test_criterion_2_diagonal_trap():
    rng = np.random.default_rng(102)
    worst = 0.0
    for _ in range(100):
        p = rng.dirichlet(np.ones(8))
        d = sk.DenseOperator(np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, 8))))
        worst = max(worst, sk.diagonal_trap_residual(p, d))
    report(2, "diagonal trap", worst < 1e-12, f"max residual {worst:.3e} over 100 seeded pairs")


def test_criterion_3_sign_lock():
    rng = np.random.default_rng(103)
    u = hadamard_layer(2)
    dists = [rng.dirichlet(np.ones(4)) for _ in range(50)]
    locked_spread = 0.0
    for y in range(4):
        for x in range(4):
            for xp in range(x + 1, 4):
                rep = sk.sign_lock_check(u, y, (x, xp), dists)
                locked_spread = max(locked_spread, rep.max_spread)
    phases = [rng.uniform(0, 2 * np.pi, 4) for _ in range(50)]
    uniform = [np.full(4, 0.25) for _ in range(50)]
    moved = max(
        sk.sign_lock_check(u, 0, (x, xp), uniform, phases).max_spread
        for x in range(4)
        for xp in range(x + 1, 4)
    )
    ok = locked_spread < 1e-9 and moved > 0.1
    report(3, "sign lock", ok, f"locked spread {locked_spread:.2e} rad; phase-driven spread {moved:.2f} rad")


def test_criterion_4_abelianization():
    rng = np.random.default_rng(104)
    worst = 0.0
    for _ in range(50):
        dim = 8
        a = sk.DenseOperator(np.diag(rng.standard_normal(dim)))
        b = sk.DenseOperator(np.diag(rng.standard_normal(dim)))
        worst = max(worst, float(np.linalg.norm(sk.commutator(a, b).matrix, 2)))
    witness = sk.commutator_norm(sk.HamiltonianSpec([1.0, 1.0], sk.ring_coupling(2), mu=1.0))
    ok = worst < 1e-14 and witness > 0.1
    report(4, "abelianization", ok, f"diagonal pairs commute to {worst:.1e}; witness norm {witness:.2f}")


def test_criterion_5_information_curvature():
    rng = np.random.default_rng(105)
    start = time.perf_counter()
    x = rng.uniform(-np.pi, np.pi, 4)
    spec = sk.HamiltonianSpec(x, sk.ring_coupling(4), mu=1.0, tau=0.1)
    scan = sk.information_curvature(spec)  # default 13-point grid in [1e-3, 1e-1]
    flat = sk.information_curvature(sk.HamiltonianSpec(x, np.zeros((4, 4)), mu=1.0, tau=0.1))
    elapsed = time.perf_counter() - start
    ok = (
        scan.fitted_slope is not None
        and 2.8 <= scan.fitted_slope <= 3.2
        and flat.commuting
        and flat.errors.max() < 1e-12
        and elapsed < 10.0
    )
    report(
        5, "information curvature", ok,
        f"slope {scan.fitted_slope:.3f}; commuting scan max error {flat.errors.max():.1e}; {elapsed:.2f}s",
    )


def test_criterion_6_fast_path_equivalence():
    rng = np.random.default_rng(106)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 7))
        x = rng.uniform(-np.pi, np.pi, n)
        j = np.zeros((n, n))
        for a in range(n):
            for b in range(a + 1, n):
                j[a, b] = j[b, a] = rng.uniform(-1.0, 1.0)
        spec = sk.HamiltonianSpec(x, j, mu=rng.uniform(0.5, 1.5), tau=rng.uniform(0.02, 0.3))
        dist = sk.operator_distance(
            sk.sandwich_unitary(spec, method="factorized"),
            sk.sandwich_unitary(spec, method="dense"),
        )
        worst = max(worst, dist)
    report(6, "fast-path equivalence", worst < 1e-12, f"max spectral distance {worst:.3e} over 50 specs")


def test_criterion_7_spectral_analytics():
    rng = np.random.default_rng(107)
    gap_dev = 0.0
    for _ in range(10):
        a = rng.uniform(0.2, 3.0) * rng.choice([-1.0, 1.0])
        spec = sk.HamiltonianSpec([a], np.zeros((1, 1)))
        gap_dev = max(gap_dev, abs(sk.spectral_profile(spec).mass_gap - 2 * abs(a)))
    sym_ok = True
    for _ in range(20):
        sa = sk.HamiltonianSpec(rng.uniform(-2, 2, 2), sk.ring_coupling(2))
        sb = sk.HamiltonianSpec(rng.uniform(-2, 2, 2), sk.ring_coupling(2))
        vaa = sk.resonance_similarity(sa, sa, 1e-3)
        vab = sk.resonance_similarity(sa, sb, 1e-3)
        vba = sk.resonance_similarity(sb, sa, 1e-3)
        sym_ok = sym_ok and vaa.resonant and vab.resonant == vba.resonant and vab.delta == vba.delta
    tol = 1e-3
    triple = [sk.HamiltonianSpec([(1.0 + k * 0.9 * tol) / 2], np.zeros((1, 1))) for k in range(3)]
    ab = sk.resonance_similarity(triple[0], triple[1], tol).resonant
    bc = sk.resonance_similarity(triple[1], triple[2], tol).resonant
    ac = sk.resonance_similarity(triple[0], triple[2], tol).resonant
    ok = gap_dev < 1e-12 and sym_ok and ab and bc and not ac
    report(
        7, "spectral analytics", ok,
        f"gap deviation {gap_dev:.1e}; reflexive+symmetric over 20 pairs; non-transitive triple holds",
    )


def test_criterion_8_parity_contrast():
    ds = sk.gen_parity_dataset(4, "all", 0)
    loading = sk.encode_dataset(ds, "probability_loading")
    amp = sk.encode_dataset(ds, "amplitude")
    acc_load = sk.nn_classify_loo(sk.fidelity_gram(loading), ds.labels)
    dist_load = sk.distinguishability(loading, ds.labels)
    acc_amp = sk.nn_classify_loo(sk.fidelity_gram(amp), ds.labels)
    ok = acc_load == 0.5 and abs(dist_load) < 1e-12 and acc_amp == 1.0
    report(
        8, "parity contrast", ok,
        f"loading: acc {acc_load}, distinguishability {dist_load}; amplitude: acc {acc_amp}",
    )


def test_criterion_9_determinism(tmp_path):
    raw = {
        "experiment": "parity",
        "n_features": 4,
        "count": "all",
        "seed": 42,
        "encoders": list(ENCODER_IDS),
        "qift": {"mu": 1.0, "tau": 0.1, "topology": "ring"},
        "output_dir": "",
    }
    outputs = []
    for run in ("a", "b"):
        cfg = sk.ExperimentConfig.from_dict({**raw, "output_dir": str(tmp_path / run)})
        rep = sk.run_experiment(cfg)
        outputs.append((tmp_path / run / "parity_results.csv").read_bytes())
    ok = outputs[0] == outputs[1] and len(outputs[0]) > 0
    report(9, "determinism", ok, f"two runs, {len(outputs[0])} identical CSV bytes")
