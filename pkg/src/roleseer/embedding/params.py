from __future__ import annotations

from dataclasses import dataclass, asdict


@dataclass(frozen=True)
class EmbeddingParams:
    """Knobs for structural embedding; only `dims` is externally mandated."""

    dims: int = 128
    walks_per_node: int = 10
    walk_length: int = 80
    window: int = 10
    negatives: int = 5
    epochs: int = 5
    lr: float = 0.025
    lr_min: float = 0.0001
    q_stay: float = 0.3  # probability of switching layers per step
    k_max: int = 5
    # Above this node count, pairwise structural distances are restricted to
    # degree-comparable nodes plus log n random pivots.
    pivot_threshold: int = 2000

    def to_dict(self) -> dict:
        return asdict(self)
