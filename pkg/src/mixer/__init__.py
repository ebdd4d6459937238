"""Texture descriptors from hyperspherical random embeddings and dual-branch ridge decoders."""

from .compress import Descriptor, assemble_omega, central_moment, compress_column, fuse
from .dataset_io import (
    CorpusManifest,
    FeatureTable,
    load_image,
    read_features,
    scan_dataset,
    write_features,
)
from .evaluate import LdaModel, lda_fit, lda_predict, loo_accuracy
from .kernels import BACKEND
from .lcg import lcg_sequence, standardized_tensor
from .learner import direct_branch, mixed_branch, ridge_solve
from .patches import extract_patch_matrix, pad_replicate
from .pipeline import PipelineConfig, describe, describe_corpus
from .projector import add_bias, encode, standardize_rows

__version__ = "0.1.0"
