#!/usr/bin/env python3
"""Benchmark-scale accuracy check against reference LOO figures.

Runs W = {39, 109}, both branches, with the regularisation preset of each
dataset pair, then leave-one-out LDA. The corpora are not shipped; pass the
roots of locally prepared copies laid out as ``root/<class>/<image>``::

    python scripts/reference_benchmarks.py --outex /data/outex13 --mbt /data/mbt --jobs 8

Deviations from the reference numbers are printed, never asserted.
"""

import argparse
import sys
import time

from mixer.dataset_io import scan_dataset
from mixer.evaluate import loo_accuracy
from mixer.pipeline import PRESETS, PipelineConfig, describe_corpus

# dataset -> (preset, reported LOO accuracy in %)
REPORTED = {
    "outex": ("outex-curet", 97.8),
    "curet": ("outex-curet", 99.5),
    "usptex": ("usptex-mbt", 99.7),
    "mbt": ("usptex-mbt", 99.7),
}
EMBEDDING_SIZES = (39, 109)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name in REPORTED:
        parser.add_argument(f"--{name}", metavar="ROOT", help=f"{name} corpus root")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--list", action="store_true", help="print the plan and exit")
    args = parser.parse_args(argv)

    plan = [(name, getattr(args, name)) for name in REPORTED]
    if args.list or not any(root for _, root in plan):
        for name, root in plan:
            preset, acc = REPORTED[name]
            gd, gm = PRESETS[preset]
            print(f"{name:7s} gamma_d={gd:g} gamma_m={gm:g} W={EMBEDDING_SIZES} "
                  f"reference={acc:.1f}% root={root or '-'}")
        return 0

    print(f"{'dataset':8s} {'n':>6s} {'ours':>7s} {'reference':>9s} {'delta':>7s} {'time':>8s}")
    for name, root in plan:
        if not root:
            continue
        preset, reported = REPORTED[name]
        gd, gm = PRESETS[preset]
        config = PipelineConfig(embedding_sizes=EMBEDDING_SIZES, gamma_direct=gd, gamma_mixed=gm)
        t0 = time.perf_counter()
        manifest = scan_dataset(root)
        table = describe_corpus(manifest, config, jobs=args.jobs, dataset_name=name)
        acc = 100 * loo_accuracy(table.features, table.labels, jobs=args.jobs)
        print(f"{name:8s} {table.shape[0]:6d} {acc:6.1f}% {reported:8.1f}% {acc - reported:+6.1f} "
              f"{time.perf_counter() - t0:7.0f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
