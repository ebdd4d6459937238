"""Hyperparameter sweeps over regularisation and embedding sizes.

Per image, the gamma-independent Gram products are computed once per
embedding size; every grid cell then costs only the small ridge solves.
"""

from itertools import combinations

import numpy as np

from .compress import descriptor_length, fuse
from .dataset_io import load_image
from .errors import InvalidInputError
from .evaluate import loo_accuracy
from .pipeline import branch_stats, map_ordered, omega_descriptor

DEFAULT_SWEEP_SIZES = tuple(range(9, 110, 10))


def gamma_grid(k_min=-5, k_max=5):
    """``[10**k for k in k_min..k_max]``."""
    if k_max < k_min:
        raise InvalidInputError(f"empty grid: k_min={k_min} > k_max={k_max}")
    return [10.0 ** k for k in range(k_min, k_max + 1)]


def _image_grid_features(path, config, gammas_d, gammas_m):
    image = load_image(path)
    stats = [branch_stats(image, w, config) for w in config.embedding_sizes]
    out = np.empty((len(gammas_d), len(gammas_m), descriptor_length(config.embedding_sizes)))
    for i, gd in enumerate(gammas_d):
        for j, gm in enumerate(gammas_m):
            out[i, j] = fuse([omega_descriptor(s, gd, gm, config.branches) for s in stats]).values
    return out


def regularization_sweep(manifest, config, gammas_d, gammas_m, jobs=1):
    """Yield ``(gamma_d, gamma_m, accuracy)`` in row-major grid order."""
    per_image = map_ordered(
        lambda p: _image_grid_features(p, config, gammas_d, gammas_m), manifest.paths, jobs
    )
    features = np.stack(per_image, axis=2)  # nd x nm x N x m
    labels = np.asarray(manifest.labels)
    cells = [(i, j) for i in range(len(gammas_d)) for j in range(len(gammas_m))]

    def evaluate(cell):
        i, j = cell
        return loo_accuracy(features[i, j], labels)

    # map_ordered would block until every cell finishes; stream instead
    if jobs <= 1:
        for i, j in cells:
            yield gammas_d[i], gammas_m[j], evaluate((i, j))
        return
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        for (i, j), acc in zip(cells, pool.map(evaluate, cells)):
            yield gammas_d[i], gammas_m[j], acc


def _image_omega_features(path, config, omegas):
    image = load_image(path)
    return {
        w: omega_descriptor(branch_stats(image, w, config), config.gamma_direct,
                            config.gamma_mixed, config.branches)
        for w in omegas
    }


def embedding_sweep(manifest, config, omegas, jobs=1):
    """Yield ``(omega1, omega2 | None, accuracy, feature_count)``.

    Single sizes come first in ascending order, then every pair
    ``omega1 < omega2`` in lexicographic order.
    """
    omegas = sorted(set(int(w) for w in omegas))
    per_image = map_ordered(lambda p: _image_omega_features(p, config, omegas),
                            manifest.paths, jobs)
    labels = np.asarray(manifest.labels)
    configs = [(w,) for w in omegas] + list(combinations(omegas, 2))

    def evaluate(ws):
        X = np.vstack([fuse([d[w] for w in ws]).values for d in per_image])
        return loo_accuracy(X, labels)

    accs = map_ordered(evaluate, configs, jobs)
    for ws, acc in zip(configs, accs):
        yield ws[0], (ws[1] if len(ws) > 1 else None), acc, descriptor_length(ws)


def argmax_cell(rows):
    """Index of the first maximal accuracy in ``rows`` of ``(gd, gm, acc)``."""
    accs = [r[2] for r in rows]
    return int(np.argmax(accs))


def _ramp(t):
    # dark blue -> teal -> yellow; luminance increases monotonically
    stops = [(0.0, (48, 18, 110)), (0.5, (33, 145, 140)), (1.0, (253, 231, 37))]
    for (t0, c0), (t1, c1) in zip(stops, stops[1:]):
        if t <= t1:
            u = 0.0 if t1 == t0 else (t - t0) / (t1 - t0)
            return tuple(round(a + (b - a) * u) for a, b in zip(c0, c1))
    return stops[-1][1]


def heatmap_svg(rows, gammas_d, gammas_m, title="LOO accuracy (%)"):
    """Static SVG heatmap: gamma_d on the vertical axis, gamma_m horizontal."""
    cell, left, top = 48, 90, 50
    nd, nm = len(gammas_d), len(gammas_m)
    width = left + nm * cell + 20
    height = top + nd * cell + 60
    accs = np.array([r[2] for r in rows]).reshape(nd, nm)
    lo, hi = float(accs.min()), float(accs.max())
    best = argmax_cell(rows)
    bi, bj = divmod(best, nm)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'font-family="sans-serif" font-size="11">',
        f'<text x="{left}" y="20" font-size="14">{title}</text>',
    ]
    for i in range(nd):
        # largest gamma_d on top
        y = top + (nd - 1 - i) * cell
        parts.append(f'<text x="{left - 6}" y="{y + cell / 2 + 4}" text-anchor="end">'
                     f'{gammas_d[i]:g}</text>')
        for j in range(nm):
            x = left + j * cell
            t = 0.0 if hi == lo else (accs[i, j] - lo) / (hi - lo)
            r, g, b = _ramp(t)
            fg = "black" if t > 0.6 else "white"
            parts.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                         f'fill="rgb({r},{g},{b})"/>')
            parts.append(f'<text x="{x + cell / 2}" y="{y + cell / 2 + 4}" '
                         f'text-anchor="middle" fill="{fg}">{100 * accs[i, j]:.1f}</text>')
    for j in range(nm):
        x = left + j * cell + cell / 2
        parts.append(f'<text x="{x}" y="{top + nd * cell + 16}" text-anchor="middle">'
                     f'{gammas_m[j]:g}</text>')
    by = top + (nd - 1 - bi) * cell
    bx = left + bj * cell
    parts.append(f'<rect id="best" x="{bx + 1.5}" y="{by + 1.5}" width="{cell - 3}" '
                 f'height="{cell - 3}" fill="none" stroke="red" stroke-width="3" '
                 f'data-gamma-d="{gammas_d[bi]:g}" data-gamma-m="{gammas_m[bj]:g}"/>')
    parts.append(f'<text x="{left + nm * cell / 2}" y="{top + nd * cell + 40}" '
                 f'text-anchor="middle">gamma_m (Mixed)</text>')
    parts.append(f'<text x="16" y="{top + nd * cell / 2}" text-anchor="middle" '
                 f'transform="rotate(-90 16 {top + nd * cell / 2})">gamma_d (Direct)</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
