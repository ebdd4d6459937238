"""Deterministic synthetic texture corpora for desk-scale testing.

Each class is an integer-valued base pattern (vertical stripes, horizontal
stripes, checkerboard or a linear ramp) with per-sample phase/period drawn
from the LCG stream, plus additive noise from the standardised LCG stream.
Images are written as 8-bit PGM (1 channel) or PPM (3 channels).
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dataset_io import save_pnm
from .errors import InvalidInputError
from .lcg import lcg_sequence, standardize_sequence

KINDS = ("stripes_v", "stripes_h", "checkerboard", "gradient")

# (low, high) integer levels per channel
_LEVELS = ((64, 192), (96, 160), (40, 216))
_PARAMS_PER_SAMPLE = 4


@dataclass(frozen=True)
class SynthSpec:
    kinds: tuple = KINDS
    samples_per_class: int = 20
    size: int = 32
    noise: float = 0.1
    seed: int = 0
    channels: int = 3

    def __post_init__(self):
        object.__setattr__(self, "kinds", tuple(self.kinds))
        unknown = set(self.kinds) - set(KINDS)
        if unknown:
            raise InvalidInputError(f"unknown texture kinds {sorted(unknown)}")
        if len(set(self.kinds)) != len(self.kinds) or not self.kinds:
            raise InvalidInputError("kinds must be non-empty and distinct")
        if self.samples_per_class < 3:
            raise InvalidInputError("samples_per_class must be >= 3")
        if not 0.0 <= self.noise <= 0.5:
            raise InvalidInputError("noise amplitude must lie in [0, 0.5]")
        if self.size < 2:
            raise InvalidInputError("image size must be >= 2")
        if self.channels not in (1, 3):
            raise InvalidInputError("channels must be 1 or 3")
        if self.seed < 0:
            raise InvalidInputError("seed must be >= 0")


def random_stream(n, seed):
    """``n`` raw integers and ``n`` standardised values from one LCG run.

    The generator length is ``n + seed``, bumped until the sequence has no
    repeated values (short-period lengths such as powers of two are skipped).
    """
    L = max(n + seed, 2)
    while True:
        raw = lcg_sequence(L)
        if np.unique(raw).size == L:
            break
        L += 1
    return raw[:n], standardize_sequence(raw)[:n]


def base_pattern(kind, size, params):
    """Integer ``size x size`` pattern as ``(numerator, denominator)``."""
    p0, p1, p2, _ = (int(v) for v in params)
    y, x = np.mgrid[0:size, 0:size]
    if kind in ("stripes_v", "stripes_h"):
        period = 4 + 2 * (p0 % 3)
        phase = p1 % period
        coord = x if kind == "stripes_v" else y
        return ((coord + phase) % period < period // 2).astype(np.int64), 1
    if kind == "checkerboard":
        cell = 2 + p0 % 3
        return (((x + p1 % cell) // cell + (y + p2 % cell) // cell) % 2).astype(np.int64), 1
    # gradient: horizontal ramp, direction flipped on odd p0
    ramp = x if p0 % 2 == 0 else (size - 1 - x)
    return ramp.astype(np.int64), size - 1


def synth_image(kind, size, channels, params, noise_values, noise):
    """One ``C x H x W`` uint8 image."""
    num, den = base_pattern(kind, size, params)
    offset = int(params[3]) % 17 - 8
    noise_values = noise_values.reshape(channels, size, size)
    out = np.empty((channels, size, size), dtype=np.uint8)
    for k in range(channels):
        lo, hi = _LEVELS[k] if channels == 3 else _LEVELS[0]
        base = lo + offset + ((hi - lo) * num) // den  # integer 0..255
        pix = np.clip(base / 255.0 + noise * noise_values[k], 0.0, 1.0)
        out[k] = np.rint(pix * 255.0).astype(np.uint8)
    return out


def generate_corpus(spec, out_root):
    """Write the corpus to ``out_root/<kind>/<kind>_NNN.(pgm|ppm)``."""
    out_root = Path(out_root)
    per_image = _PARAMS_PER_SAMPLE + spec.channels * spec.size ** 2
    total = len(spec.kinds) * spec.samples_per_class
    _, std = random_stream(total * per_image, spec.seed)
    suffix = ".pgm" if spec.channels == 1 else ".ppm"
    paths = []
    i = 0
    for kind in spec.kinds:
        d = out_root / kind
        d.mkdir(parents=True, exist_ok=True)
        for s in range(spec.samples_per_class):
            start = i * per_image
            # low-order residues of the raw LCG values are poorly mixed, so
            # integer parameters come from the digits of the standardised draws
            params = np.floor(np.abs(std[start:start + _PARAMS_PER_SAMPLE]) * 1e6)
            noise_values = std[start + _PARAMS_PER_SAMPLE:start + per_image]
            img = synth_image(kind, spec.size, spec.channels, params, noise_values, spec.noise)
            path = d / f"{kind}_{s:03d}{suffix}"
            save_pnm(path, img)
            paths.append(path)
            i += 1
    return paths
