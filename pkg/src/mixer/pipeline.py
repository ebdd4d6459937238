"""End-to-end texture descriptor computation."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .compress import assemble_omega, fuse
from .errors import DegenerateSequenceError, InvalidInputError, InvalidRegularizationError
from .learner import BranchStats
from .lcg import projection_weights
from .patches import DEFAULT_PATCH_SIDE, check_patch_side, extract_patch_matrix
from .projector import encode

BRANCHES = ("direct", "mixed", "both")

# (gamma_direct, gamma_mixed) presets reported for the benchmark pairs.
PRESETS = {
    "outex-curet": (1e4, 1e5),
    "usptex-mbt": (1e0, 1e0),
}


@dataclass(frozen=True)
class PipelineConfig:
    patch_side: int = DEFAULT_PATCH_SIDE
    embedding_sizes: tuple = (39, 109)
    gamma_direct: float = 1.0
    gamma_mixed: float = 1.0
    branches: str = "both"

    def __post_init__(self):
        object.__setattr__(self, "embedding_sizes", tuple(int(w) for w in self.embedding_sizes))
        check_patch_side(self.patch_side)
        W = self.embedding_sizes
        if not W:
            raise InvalidInputError("embedding_sizes must not be empty")
        if any(w < 1 for w in W) or any(b <= a for a, b in zip(W, W[1:])):
            raise InvalidInputError(f"embedding sizes must be positive and strictly increasing, got {W}")
        for name in ("gamma_direct", "gamma_mixed"):
            g = getattr(self, name)
            if not np.isfinite(g) or g <= 0:
                raise InvalidRegularizationError(f"{name} must be > 0, got {g!r}")
        if self.branches not in BRANCHES:
            raise InvalidInputError(f"branches must be one of {BRANCHES}, got {self.branches!r}")

    @property
    def use_direct(self):
        return self.branches in ("direct", "both")

    @property
    def use_mixed(self):
        return self.branches in ("mixed", "both")

    def to_dict(self):
        d = asdict(self)
        d["embedding_sizes"] = list(self.embedding_sizes)
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


def as_image(image):
    """Coerce to a finite ``C x H x W`` float64 array (2-D input gets C=1)."""
    image = np.asarray(image, dtype=np.float64)
    if image.ndim == 2:
        image = image[None]
    if image.ndim != 3 or min(image.shape) < 1:
        raise InvalidInputError(f"expected a C x H x W image, got shape {image.shape}")
    if image.shape[1] * image.shape[2] < 2:
        raise InvalidInputError("image must have at least 2 pixels")
    if not np.all(np.isfinite(image)):
        raise InvalidInputError("image contains non-finite values")
    return image


def embed_image(image, omega, patch_side=DEFAULT_PATCH_SIDE):
    """Patch matrices and hyperspherical embeddings of every channel."""
    image = as_image(image)
    C = image.shape[0]
    try:
        psi = projection_weights(C, omega, patch_side)
    except DegenerateSequenceError as exc:
        raise DegenerateSequenceError(exc.length, omega) from exc
    patches = [extract_patch_matrix(ch, patch_side) for ch in image]
    embeddings = [encode(X, psi[k]) for k, X in enumerate(patches)]
    return patches, embeddings


def branch_stats(image, omega, config):
    patches, embeddings = embed_image(image, omega, config.patch_side)
    return BranchStats.from_embeddings(
        patches, embeddings, direct=config.use_direct, mixed=config.use_mixed
    )


def omega_descriptor(stats, gamma_direct, gamma_mixed, branches="both"):
    direct = stats.direct_weights(gamma_direct) if branches in ("direct", "both") else []
    mixed = stats.mixed_weights(gamma_mixed) if branches in ("mixed", "both") else []
    return assemble_omega(direct, mixed)


def describe(image, config=PipelineConfig()):
    """Late-fused descriptor of one image under ``config``."""
    omegas = []
    for omega in config.embedding_sizes:
        stats = branch_stats(image, omega, config)
        omegas.append(omega_descriptor(stats, config.gamma_direct, config.gamma_mixed,
                                       config.branches))
    return fuse(omegas)


def map_ordered(fn, items, jobs=1):
    """``[fn(x) for x in items]``, optionally on a thread pool; order kept."""
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def describe_corpus(manifest, config=PipelineConfig(), jobs=1, dataset_name=None):
    """Describe every sample of a :class:`~mixer.dataset_io.CorpusManifest`."""
    from .dataset_io import FeatureTable, load_image

    def one(path):
        return describe(load_image(path), config).values

    rows = map_ordered(one, manifest.paths, jobs)
    m = rows[0].size if rows else 0
    features = np.vstack(rows) if rows else np.zeros((0, m))
    meta = {"config": config.to_dict()}
    if dataset_name is not None:
        meta["dataset"] = dataset_name
    return FeatureTable(features, np.asarray(manifest.labels, dtype=np.int64),
                        tuple(manifest.classes), meta)
