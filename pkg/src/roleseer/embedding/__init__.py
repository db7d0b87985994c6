from .params import EmbeddingParams
from .struc2vec import (
    StructuralContext,
    WalkCorpus,
    build_context_graph,
    generate_walks,
    ordered_degree_sequence,
    structural_distance,
    structural_distances,
)
from .skipgram import train_skipgram
from .pipeline import deepwalk_walks, embed_graph

__all__ = [
    "EmbeddingParams",
    "StructuralContext",
    "WalkCorpus",
    "build_context_graph",
    "generate_walks",
    "ordered_degree_sequence",
    "structural_distance",
    "structural_distances",
    "train_skipgram",
    "deepwalk_walks",
    "embed_graph",
]
