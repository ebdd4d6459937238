"""Image decoding, corpus scanning and the MIXF feature file format.

MIXF layout (all little-endian)::

    b"MIXF" | u32 version=1 | u32 rows | u32 cols | u32 labels[rows] | f64 values[rows*cols]

Values are stored row-major. Class names and the pipeline configuration
live in a JSON sidecar next to the binary file (``<path>.json``).
"""

import json
import os
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DatasetError, FeatureFileError, ImageFormatError

IMAGE_SUFFIXES = (".png", ".pgm", ".ppm", ".pnm")

MAGIC = b"MIXF"
VERSION = 1
_HEADER = struct.Struct("<4sIII")


# --- image decoding -----------------------------------------------------------

def _pnm_tokens(data, count):
    """Read ``count`` whitespace separated header tokens after the magic."""
    tokens = []
    pos = 2
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos < n and data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise ImageFormatError("truncated PNM header")
        tokens.append(data[start:pos])
    # exactly one whitespace byte separates the header from the raster
    if pos >= n or not data[pos:pos + 1].isspace():
        raise ImageFormatError("truncated PNM header")
    try:
        return [int(t) for t in tokens], pos + 1
    except ValueError:
        raise ImageFormatError(f"malformed PNM header tokens {tokens}") from None


def decode_pnm(data):
    """Decode binary PGM (P5) or PPM (P6) bytes to ``C x H x W`` in [0, 1]."""
    magic = data[:2]
    if magic not in (b"P5", b"P6"):
        raise ImageFormatError(f"unsupported PNM variant {magic!r} (only binary P5/P6)")
    (width, height, maxval), offset = _pnm_tokens(data, 3)
    if width <= 0 or height <= 0:
        raise ImageFormatError(f"zero-dimension image ({width}x{height})")
    if not 0 < maxval < 65536:
        raise ImageFormatError(f"invalid PNM maxval {maxval}")
    channels = 1 if magic == b"P5" else 3
    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    expected = width * height * channels * dtype.itemsize
    raster = data[offset:offset + expected]
    if len(raster) < expected:
        raise ImageFormatError(
            f"truncated PNM raster: expected {expected} bytes, got {len(raster)}"
        )
    pixels = np.frombuffer(raster, dtype=dtype).reshape(height, width, channels)
    return np.transpose(pixels, (2, 0, 1)).astype(np.float64) / maxval


def encode_pnm(image):
    """Encode a ``C x H x W`` uint8 array (C in {1, 3}) as P5/P6 bytes."""
    image = np.asarray(image)
    if image.dtype != np.uint8 or image.ndim != 3 or image.shape[0] not in (1, 3):
        raise ImageFormatError("encode_pnm expects a uint8 array of shape (1|3, H, W)")
    C, H, W = image.shape
    magic = b"P5" if C == 1 else b"P6"
    header = magic + f"\n{W} {H}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(np.transpose(image, (1, 2, 0))).tobytes()


def _decode_png(path):
    from PIL import Image

    try:
        with Image.open(path) as im:
            im.load()
            mode = im.mode
            if mode in ("I;16", "I;16B", "I;16L", "I"):
                arr = np.asarray(im, dtype=np.float64)
                scale = 65535.0
                arr = arr[None]
            else:
                if mode in ("1", "L", "LA"):
                    im = im.convert("L")
                else:
                    im = im.convert("RGB")
                arr = np.asarray(im, dtype=np.float64)
                scale = 255.0
                arr = arr[None] if arr.ndim == 2 else np.transpose(arr, (2, 0, 1))
    except OSError as exc:
        raise ImageFormatError(f"cannot decode PNG {path}: {exc}") from exc
    if arr.shape[1] == 0 or arr.shape[2] == 0:
        raise ImageFormatError(f"zero-dimension image {path}")
    return arr / scale


def load_image(path):
    """Decode a PNG or binary PGM/PPM file to a ``C x H x W`` float array."""
    path = Path(path)
    suffix = path.suffix.lower()
    if suffix == ".png":
        return _decode_png(path)
    if suffix in (".pgm", ".ppm", ".pnm"):
        try:
            return decode_pnm(path.read_bytes())
        except ImageFormatError as exc:
            raise ImageFormatError(f"{path}: {exc}") from exc
    raise ImageFormatError(f"unsupported image format: {path}")


def save_pnm(path, image):
    Path(path).write_bytes(encode_pnm(image))


# --- corpus layout ------------------------------------------------------------

@dataclass(frozen=True)
class CorpusManifest:
    root: Path
    classes: tuple
    samples: tuple  # (path, class index)

    @property
    def paths(self):
        return [p for p, _ in self.samples]

    @property
    def labels(self):
        return [c for _, c in self.samples]

    @property
    def counts(self):
        return tuple(self.labels.count(k) for k in range(len(self.classes)))


def _sort_key(name):
    return os.fsencode(name)


def scan_dataset(root):
    """Build a manifest from ``root/<class>/<image>``.

    Class folders and files inside them are sorted by their byte names;
    files without an image suffix and nested directories are ignored.
    """
    root = Path(root)
    if not root.is_dir():
        raise DatasetError(f"dataset root does not exist or is not a directory: {root}")
    class_dirs = sorted((p for p in root.iterdir() if p.is_dir()), key=lambda p: _sort_key(p.name))
    if not class_dirs:
        raise DatasetError(f"dataset root has no class directories: {root}")
    classes = []
    samples = []
    for idx, d in enumerate(class_dirs):
        files = sorted(
            (p for p in d.iterdir() if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES),
            key=lambda p: _sort_key(p.name),
        )
        if not files:
            raise DatasetError(f"class directory has no readable images: {d}")
        classes.append(d.name)
        samples.extend((f, idx) for f in files)
    return CorpusManifest(root, tuple(classes), tuple(samples))


# --- feature tables -----------------------------------------------------------

@dataclass(eq=False)
class FeatureTable:
    features: np.ndarray
    labels: np.ndarray
    classes: tuple = ()
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.features.ndim != 2 or self.features.shape[0] != self.labels.shape[0]:
            raise FeatureFileError(
                f"features {self.features.shape} and labels {self.labels.shape} disagree"
            )
        if self.labels.size and (self.labels.min() < 0 or
                                 (self.classes and self.labels.max() >= len(self.classes))):
            raise FeatureFileError("labels out of range")

    @property
    def shape(self):
        return self.features.shape


def sidecar_path(path):
    return Path(str(path) + ".json")


def write_features(table, path):
    """Write ``table`` as MIXF plus its JSON sidecar."""
    if not np.all(np.isfinite(table.features)):
        raise FeatureFileError("refusing to write non-finite feature values")
    rows, cols = table.features.shape
    buf = bytearray(_HEADER.pack(MAGIC, VERSION, rows, cols))
    buf += table.labels.astype("<u4").tobytes()
    buf += np.ascontiguousarray(table.features, dtype="<f8").tobytes()
    Path(path).write_bytes(bytes(buf))
    side = {"classes": list(table.classes), "meta": table.meta}
    sidecar_path(path).write_text(json.dumps(side, indent=2, sort_keys=True) + "\n")


def read_features(path):
    """Read a MIXF file (and its sidecar when present)."""
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise FeatureFileError(f"{path}: file shorter than the MIXF header")
    magic, version, rows, cols = _HEADER.unpack_from(data)
    if magic != MAGIC:
        raise FeatureFileError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise FeatureFileError(f"{path}: unsupported MIXF version {version}")
    expected = _HEADER.size + 4 * rows + 8 * rows * cols
    if len(data) != expected:
        raise FeatureFileError(
            f"{path}: length mismatch, header implies {expected} bytes, file has {len(data)}"
        )
    off = _HEADER.size
    labels = np.frombuffer(data, dtype="<u4", count=rows, offset=off).astype(np.int64)
    off += 4 * rows
    values = np.frombuffer(data, dtype="<f8", count=rows * cols, offset=off)
    features = values.astype(np.float64).reshape(rows, cols)
    classes, meta = (), {}
    side = sidecar_path(path)
    if side.exists():
        info = json.loads(side.read_text())
        classes = tuple(info.get("classes", ()))
        meta = info.get("meta", {})
    return FeatureTable(features, labels, classes, meta)
