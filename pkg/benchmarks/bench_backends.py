"""Compare the numba and pure-numpy kernel backends.

Kernel timings import both backend modules directly. The end-to-end timing
runs ``describe`` in a subprocess per backend, selected via ``MIXER_BACKEND``.

    python benchmarks/bench_backends.py [--repeat 5]
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from mixer import _kernels_numba as nb
from mixer import _kernels_numpy as npk

E2E = """
import time, numpy as np
from mixer.pipeline import PipelineConfig, describe
from mixer import kernels
img = np.random.default_rng(0).uniform(0, 255, size=(3, 128, 128))
cfg = PipelineConfig(embedding_sizes=(39, 109))
describe(img[:, :8, :8], cfg)
t0 = time.perf_counter()
for _ in range({repeat}):
    describe(img, cfg)
print(kernels.BACKEND, (time.perf_counter() - t0) / {repeat})
"""


def kernel_cases(rng):
    image = rng.uniform(0, 255, size=(256, 256))
    P = rng.normal(size=(110, 256 * 256))
    F = rng.normal(size=(54, 110))
    X = rng.normal(size=(9, 256 * 256))
    return {
        "lcg_int64(L=10900)": lambda k: k.lcg_int64(10900),
        "im2col_replicate(256x256, J=3)": lambda k: k.im2col_replicate(image, 3),
        "standardize_rows(9 x 65536)": lambda k: k.standardize_rows(X, 1e-10),
        "sigmoid_unit_columns(110 x 65536)": lambda k: k.sigmoid_unit_columns(P, 1e-10),
        "column_moments(54 x 110)": lambda k: k.column_moments(F),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(0)
    print(f"{'kernel':36s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for name, fn in kernel_cases(rng).items():
        fn(nb)  # compile
        t_nb = min(timeit.repeat(lambda: fn(nb), number=1, repeat=args.repeat))
        t_np = min(timeit.repeat(lambda: fn(npk), number=1, repeat=args.repeat))
        print(f"{name:36s} {1e3 * t_nb:10.2f} {1e3 * t_np:10.2f} {t_np / t_nb:7.1f}x")

    print("\nend-to-end describe, RGB 128x128, W=(39,109)")
    for backend in ("numba", "numpy"):
        env = dict(os.environ, MIXER_BACKEND=backend)
        out = subprocess.run([sys.executable, "-c", E2E.format(repeat=args.repeat)],
                             env=env, check=True, capture_output=True, text=True).stdout
        name, sec = out.split()
        print(f"  {name:6s} {1e3 * float(sec):9.1f} ms/image")


if __name__ == "__main__":
    main()
