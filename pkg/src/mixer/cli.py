"""Command-line interface: ``mixer {synth,extract,evaluate,sweep-reg,sweep-embed}``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical degeneracy.
"""

import argparse
import csv
import os
import sys
from pathlib import Path

import numpy as np

from .dataset_io import read_features, scan_dataset, write_features
from .errors import DataError, DegeneracyError, MixerError
from .evaluate import loo_predictions
from .pipeline import PRESETS, PipelineConfig, describe_corpus
from .synth import KINDS, SynthSpec, generate_corpus
from .sweeps import (
    DEFAULT_SWEEP_SIZES,
    argmax_cell,
    embedding_sweep,
    gamma_grid,
    heatmap_svg,
    regularization_sweep,
)

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _default_jobs():
    env = os.environ.get("MIXER_JOBS")
    if env is None:
        return 1
    try:
        return max(1, int(env))
    except ValueError:
        raise UsageError(f"MIXER_JOBS must be an integer, got {env!r}") from None


def _add_pipeline_args(p, omegas="39,109"):
    p.add_argument("--dataset", required=True, type=Path, help="root/<class>/<image> corpus")
    p.add_argument("--patch-side", type=int, default=3)
    p.add_argument("--omegas", type=_int_list, default=_int_list(omegas),
                   help="comma separated embedding sizes")
    p.add_argument("--gamma-d", type=float, default=None)
    p.add_argument("--gamma-m", type=float, default=None)
    p.add_argument("--preset", choices=sorted(PRESETS),
                   help="(gamma_d, gamma_m) preset; explicit --gamma-* flags win")
    p.add_argument("--branches", choices=("direct", "mixed", "both"), default="both")
    p.add_argument("--jobs", type=int, default=None, help="worker threads (default $MIXER_JOBS or 1)")


def _config(args, omegas=None):
    gd, gm = PRESETS.get(args.preset, (1.0, 1.0))
    if args.gamma_d is not None:
        gd = args.gamma_d
    if args.gamma_m is not None:
        gm = args.gamma_m
    return PipelineConfig(
        patch_side=args.patch_side,
        embedding_sizes=tuple(sorted(omegas if omegas is not None else args.omegas)),
        gamma_direct=gd,
        gamma_mixed=gm,
        branches=args.branches,
    )


def _jobs(args):
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    if jobs < 1:
        raise UsageError("--jobs must be >= 1")
    return jobs


def _config_label(meta):
    cfg = meta.get("config", {})
    if not cfg:
        return ""
    return (f"J={cfg['patch_side']};W={'+'.join(str(w) for w in cfg['embedding_sizes'])};"
            f"gamma_d={cfg['gamma_direct']:g};gamma_m={cfg['gamma_mixed']:g};"
            f"branches={cfg['branches']}")


def cmd_synth(args):
    spec = SynthSpec(kinds=tuple(args.kinds), samples_per_class=args.samples, size=args.size,
                     noise=args.noise, seed=args.seed, channels=args.channels)
    paths = generate_corpus(spec, args.out)
    print(f"wrote {len(paths)} images in {len(spec.kinds)} classes to {args.out}")


def cmd_extract(args):
    config = _config(args)
    manifest = scan_dataset(args.dataset)
    table = describe_corpus(manifest, config, jobs=_jobs(args),
                            dataset_name=Path(args.dataset).resolve().name)
    write_features(table, args.out)
    rows, cols = table.shape
    print(f"rows={rows} cols={cols} -> {args.out}")


def cmd_evaluate(args):
    table = read_features(args.features)
    n = table.shape[0]
    if n == 0:
        raise DataError(f"{args.features}: feature file has no samples")
    pred = loo_predictions(table.features, table.labels, jobs=_jobs(args))
    correct = int(np.sum(pred == table.labels))
    acc = correct / n
    print(f"LOO accuracy: {100 * acc:.1f}% ({correct}/{n})")
    if args.out:
        new = not Path(args.out).exists()
        with open(args.out, "a", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            if new:
                w.writerow(["dataset", "config", "accuracy"])
            w.writerow([table.meta.get("dataset", Path(args.features).stem),
                        _config_label(table.meta), repr(acc)])


def cmd_sweep_reg(args):
    config = _config(args)
    gammas = gamma_grid(args.k_min, args.k_max)
    manifest = scan_dataset(args.dataset)
    out = Path(args.out)
    rows = []
    with open(out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["gamma_d", "gamma_m", "accuracy"])
        fh.flush()
        for gd, gm, acc in regularization_sweep(manifest, config, gammas, gammas, _jobs(args)):
            rows.append((gd, gm, acc))
            w.writerow([repr(gd), repr(gm), repr(acc)])
            fh.flush()
            print(f"gamma_d={gd:g} gamma_m={gm:g} accuracy={100 * acc:.1f}%")
    svg = Path(args.svg) if args.svg else out.with_suffix(".svg")
    svg.write_text(heatmap_svg(rows, gammas, gammas))
    gd, gm, acc = rows[argmax_cell(rows)]
    print(f"best: gamma_d={gd:g} gamma_m={gm:g} accuracy={100 * acc:.1f}% -> {out}, {svg}")


def cmd_sweep_embed(args):
    config = _config(args, omegas=[min(args.omegas)])
    manifest = scan_dataset(args.dataset)
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["omega1", "omega2", "accuracy", "feature_count"])
        for w1, w2, acc, count in embedding_sweep(manifest, config, args.omegas, _jobs(args)):
            w.writerow([w1, "" if w2 is None else w2, repr(acc), count])
            fh.flush()
            label = f"{w1}" if w2 is None else f"{w1},{w2}"
            print(f"W={{{label}}} features={count} accuracy={100 * acc:.1f}%")


def build_parser():
    parser = _Parser(prog="mixer", description="Randomized-network texture descriptors")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("synth", help="generate a synthetic texture corpus")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--kinds", type=lambda s: s.split(","), default=list(KINDS))
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--size", type=int, default=32)
    p.add_argument("--noise", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--channels", type=int, choices=(1, 3), default=3)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("extract", help="describe every image of a corpus into a MIXF file")
    _add_pipeline_args(p)
    p.add_argument("--out", required=True, type=Path)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("evaluate", help="leave-one-out LDA accuracy of a MIXF file")
    p.add_argument("features", type=Path)
    p.add_argument("--out", type=Path, help="append a CSV row (dataset, config, accuracy)")
    p.add_argument("--jobs", type=int, default=None)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep-reg", help="accuracy over a (gamma_d, gamma_m) grid")
    _add_pipeline_args(p, omegas="59")
    p.add_argument("--k-min", type=int, default=-5, help="smallest exponent of 10")
    p.add_argument("--k-max", type=int, default=5, help="largest exponent of 10")
    p.add_argument("--out", required=True, type=Path, help="CSV path")
    p.add_argument("--svg", type=Path, help="heatmap path (default: CSV path with .svg)")
    p.set_defaults(func=cmd_sweep_reg)

    p = sub.add_parser("sweep-embed", help="accuracy over single sizes and size pairs")
    _add_pipeline_args(p, omegas=",".join(str(w) for w in DEFAULT_SWEEP_SIZES))
    p.add_argument("--out", required=True, type=Path, help="CSV path")
    p.set_defaults(func=cmd_sweep_embed)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UsageError as exc:
        print(f"mixer: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegeneracyError as exc:
        print(f"mixer: numerical degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (MixerError, OSError) as exc:
        print(f"mixer: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
