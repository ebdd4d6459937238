"""Acceptance gate: one test per criterion, each with its tolerance and time budget.

A one-line PASS/FAIL summary per criterion is printed at the end of the run.
Time budgets exclude the one-off numba compilation (see ``warm_kernels``).
"""

import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

from mixer.cli import main as cli_main
from mixer.compress import FUNCTIONS
from mixer.dataset_io import scan_dataset
from mixer.evaluate import RANK_TOL, lda_fit, lda_predict, loo_accuracy
from mixer.learner import direct_branch, mixed_branch, mixed_embedding, ridge_solve
from mixer.lcg import lcg_sequence, projection_weights, standardized_tensor
from mixer.pipeline import PipelineConfig, describe, embed_image, describe_corpus
from mixer.projector import encode

ROOT = Path(__file__).resolve().parents[1]


@contextmanager
def criterion(report, name, budget):
    """Time the body, record a summary line and enforce the time budget."""
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        report.append(f"FAIL {name} ({time.perf_counter() - t0:.2f}s, budget {budget:g}s)")
        raise
    dt = time.perf_counter() - t0
    ok = dt < budget
    report.append(f"{'PASS' if ok else 'FAIL'} {name} ({dt:.2f}s, budget {budget:g}s)")
    assert ok, f"{name} took {dt:.2f}s, budget {budget:g}s"


def _rel_fro(a, b):
    return np.linalg.norm(a - b) / max(np.linalg.norm(b), 1e-300)


def _dense_ridge(Y, B, gamma):
    return Y @ B.T @ np.linalg.inv(B @ B.T + gamma * np.eye(B.shape[0]))


def _random_instance(rng, max_omega=32, max_hw=500):
    J = 3  # J*J <= 9 with the smallest admissible odd side
    omega = int(rng.integers(1, max_omega + 1))
    C = int(rng.integers(1, 4))
    while True:
        H, W = (int(v) for v in rng.integers(2, 30, size=2))
        if H * W <= max_hw:
            break
    image = rng.uniform(0, 1, size=(C, H, W))
    patches, embeddings = embed_image(image, omega, J)
    return patches, embeddings


# C1 ------------------------------------------------------------------------

def test_c1_descriptor_length(acceptance_report, rng):
    with criterion(acceptance_report, "C1 descriptor length 600 / 240", 1.0):
        for shape in [(3, 16, 16), (3, 20, 13)]:
            image = rng.uniform(0, 255, size=shape)
            assert len(describe(image, PipelineConfig(embedding_sizes=(39, 109)))) == 600
            assert len(describe(image, PipelineConfig(embedding_sizes=(59,)))) == 240


# C2 ------------------------------------------------------------------------

def _bigint_lcg(L):
    a, b, c = L + 2, L + 3, L * L
    v, out = L + 1, []
    for _ in range(L):
        out.append(v)
        v = (a * v + b) % c
    return out


def test_c2_lcg_golden(acceptance_report):
    with criterion(acceptance_report, "C2 LCG golden vectors and moments", 1.0):
        for L in (6, 100, 10_000):
            got = lcg_sequence(L)
            assert [int(v) for v in got] == _bigint_lcg(L)
            t = standardized_tensor((L,))
            assert abs(t.mean()) < 1e-9
            assert abs(t.std(ddof=1) - 1.0) < 1e-9


# C3 ------------------------------------------------------------------------

def test_c3_hypersphere(acceptance_report, rng):
    with criterion(acceptance_report, "C3 embedded columns on the unit sphere", 5.0):
        for _ in range(100):
            J = int(rng.choice([3, 5, 7]))
            omega = int(rng.integers(1, 64))
            hw = int(rng.integers(2, 400))
            X = rng.normal(size=(J * J, hw)) * rng.uniform(0.01, 100)
            psi = projection_weights(1, omega, J)[0]
            Z = encode(X, psi)
            norms = np.linalg.norm(Z[1:], axis=0)
            assert np.all((np.abs(norms - 1) < 1e-9) | (norms == 0))


# C4 ------------------------------------------------------------------------

def test_c4_ridge_oracle(acceptance_report, rng):
    with criterion(acceptance_report, "C4 ridge solvers vs dense inverse", 10.0):
        for _ in range(50):
            patches, embeddings = _random_instance(rng)
            gamma = 10.0 ** rng.uniform(-3, 3)
            for X, Z, W in zip(patches, embeddings, direct_branch(patches, embeddings, gamma)):
                assert _rel_fro(W, _dense_ridge(X, Z, gamma)) < 1e-8
            S = mixed_embedding(embeddings)
            for X, W in zip(patches, mixed_branch(patches, embeddings, gamma)):
                assert _rel_fro(W, _dense_ridge(X, S, gamma)) < 1e-8
            X, Z = patches[0], embeddings[0]
            assert _rel_fro(ridge_solve(X, Z, gamma), _dense_ridge(X, Z, gamma)) < 1e-8


# C5 ------------------------------------------------------------------------

def _objective(X, W, B, gamma):
    return np.sum((X - W @ B) ** 2) + gamma * np.sum(W ** 2)


def test_c5_minimizer(acceptance_report, rng):
    with criterion(acceptance_report, "C5 closed form beats 100 perturbations", 10.0):
        for _ in range(5):
            patches, embeddings = _random_instance(rng)
            gamma = 10.0 ** rng.uniform(-2, 2)
            S = mixed_embedding(embeddings)
            cases = [(X, W, Z) for X, Z, W in
                     zip(patches, embeddings, direct_branch(patches, embeddings, gamma))]
            cases += [(X, W, S) for X, W in zip(patches, mixed_branch(patches, embeddings, gamma))]
            for X, W, B in cases:
                best = _objective(X, W, B, gamma)
                for _ in range(100):
                    d = rng.normal(size=W.shape)
                    d *= 1e-3 / np.linalg.norm(d)
                    assert _objective(X, W + d, B, gamma) >= best


# C6 ------------------------------------------------------------------------

def test_c6_single_channel(acceptance_report, rng):
    with criterion(acceptance_report, "C6 single-channel Direct == Mixed", 5.0):
        for _ in range(10):
            image = rng.uniform(0, 1, size=(1, 24, 24))
            gamma = 10.0 ** rng.uniform(-2, 2)
            patches, embeddings = embed_image(image, 19)
            Wd = direct_branch(patches, embeddings, gamma)[0]
            Wm = mixed_branch(patches, embeddings, gamma)[0]
            assert np.max(np.abs(Wd - Wm)) < 1e-10
            cfg = dict(embedding_sizes=(9, 19), gamma_direct=gamma, gamma_mixed=gamma)
            both = describe(image, PipelineConfig(branches="both", **cfg)).values
            direct = describe(image, PipelineConfig(branches="direct", **cfg)).values
            assert np.max(np.abs(both - direct)) < 1e-10


# C7 ------------------------------------------------------------------------

def test_c7_scale_equivariance(acceptance_report, rng):
    with criterion(acceptance_report, "C7 intensity scale equivariance", 5.0):
        config = PipelineConfig(embedding_sizes=(9, 19))
        for _ in range(3):
            image = rng.uniform(0, 1, size=(3, 20, 20))
            ref = describe(image, config)
            for c in (0.5, 2.0):
                out = describe(c * image, config)
                for w in config.embedding_sizes:
                    mask = ref.block(w, "std") ** 2 > 1e-12
                    for fn in FUNCTIONS:
                        expect = ref.block(w, fn) * (c if fn in ("mean", "std") else 1.0)
                        got = out.block(w, fn)
                        assert np.max(np.abs(got - expect)[mask], initial=0.0) < 1e-6


# C8 ------------------------------------------------------------------------

def test_c8_determinism(acceptance_report, synth_corpus, tmp_path, capsys):
    with criterion(acceptance_report, "C8 --jobs 1 and --jobs 8 bit-identical", 30.0):
        outs = []
        for jobs in (1, 8):
            out = tmp_path / f"feat_{jobs}.mixf"
            code = cli_main(["extract", "--dataset", str(synth_corpus), "--omegas", "9,19",
                             "--jobs", str(jobs), "--out", str(out)])
            assert code == 0
            outs.append(out)
        assert outs[0].read_bytes() == outs[1].read_bytes()
        assert Path(f"{outs[0]}.json").read_bytes() == Path(f"{outs[1]}.json").read_bytes()


# C9 ------------------------------------------------------------------------

def _nearest_centroid_loo(X, y):
    X = (X - X.mean(0)) / np.where(X.std(0) > 0, X.std(0), 1.0)
    correct = 0
    for i in range(len(y)):
        keep = np.arange(len(y)) != i
        classes = np.unique(y[keep])
        cents = np.stack([X[keep][y[keep] == k].mean(0) for k in classes])
        correct += classes[np.argmin(np.sum((cents - X[i]) ** 2, axis=1))] == y[i]
    return correct / len(y)


def test_c9_synthetic_accuracy(acceptance_report, synth_corpus):
    with criterion(acceptance_report, "C9 synthetic LOO+LDA accuracy >= 95%", 120.0):
        manifest = scan_dataset(synth_corpus)
        assert list(manifest.counts) == [20] * 4
        table = describe_corpus(manifest, PipelineConfig(embedding_sizes=(9, 19)))
        baseline = _nearest_centroid_loo(table.features, table.labels)
        assert baseline > 0.90, f"corpus not near-separable: nearest centroid {baseline:.3f}"
        acc = loo_accuracy(table.features, table.labels)
        assert acc >= 0.95, f"LOO accuracy {acc:.3f}"


# C10 -----------------------------------------------------------------------

def _mahalanobis_oracle(X, y, Xq):
    classes = np.unique(y)
    means = np.stack([X[y == k].mean(0) for k in classes])
    Xc = X - means[np.searchsorted(classes, y)]
    P = np.linalg.pinv(Xc.T @ Xc / (len(y) - len(classes)))
    d = np.stack([np.einsum("ni,ij,nj->n", Xq - mu, P, Xq - mu) for mu in means], axis=1)
    return classes, d


def test_c10_lda_oracle(acceptance_report, rng):
    with criterion(acceptance_report, "C10 LDA vs pseudoinverse Mahalanobis", 10.0):
        mismatches = checked = 0
        for _ in range(100):
            K = int(rng.integers(2, 5))
            m = int(rng.integers(1, 11))
            per = int(rng.integers(max(2, (m + K) // K + 1), 60 // K + 1))
            y = np.repeat(np.arange(K), per)
            centers = rng.normal(scale=2.0, size=(K, m))
            X = centers[y] + rng.normal(size=(len(y), m)) * rng.uniform(0.5, 2, size=m)
            Xq = centers[rng.integers(0, K, size=20)] + rng.normal(size=(20, m))
            model = lda_fit(X, y)
            # rank truncation makes the whitened metric differ from the oracle
            if model.rank < m:
                continue
            classes, d = _mahalanobis_oracle(X, y, Xq)
            ds = np.sort(d, axis=1)
            clear = ds[:, 1] - ds[:, 0] > 1e-8 * np.maximum(ds[:, 1], 1.0)
            pred = lda_predict(model, Xq)
            oracle = classes[np.argmin(d, axis=1)]
            mismatches += int(np.sum((pred != oracle) & clear))
            checked += int(np.sum(clear))
        assert checked > 1000
        assert mismatches == 0
        assert RANK_TOL == 1e-4


# C11 -----------------------------------------------------------------------

def test_c11_reference_script(acceptance_report):
    with criterion(acceptance_report, "C11 reference benchmark script (informational)", 30.0):
        script = ROOT / "scripts" / "reference_benchmarks.py"
        assert script.exists()
        out = subprocess.run([sys.executable, str(script), "--list"], check=True,
                             capture_output=True, text=True).stdout
        for name, gd, gm in [("outex", "10000", "100000"), ("curet", "10000", "100000"),
                             ("usptex", "1", "1"), ("mbt", "1", "1")]:
            line = next(l for l in out.splitlines() if l.startswith(name))
            assert f"gamma_d={gd} " in line and f"gamma_m={gm} " in line
            assert "W=(39, 109)" in line


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
