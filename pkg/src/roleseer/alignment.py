"""Translation alignment of consecutive embedding spaces.

A single translation vector r per consecutive timestamp pair (h + r ~ t form):
players active at both timestamps act as anchors. r is initialized at the
closed-form mean displacement and refined by a margin loss against corrupted
anchors; the refinement is kept only when it does not worsen the mean anchor
residual, so alignment never degrades a pair.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

logger = logging.getLogger(__name__)


@dataclass
class AlignmentRelation:
    from_t: int
    to_t: int
    translation: np.ndarray
    anchors: set[str] = field(default_factory=set)
    residual_before: float = 0.0
    residual_after: float = 0.0


def _mean_residual(e_t: np.ndarray, e_t1: np.ndarray, r: np.ndarray) -> float:
    return float(np.linalg.norm(e_t1 - r - e_t, axis=1).mean())


def _margin_sgd(
    e_t: np.ndarray,
    e_t1: np.ndarray,
    r0: np.ndarray,
    margin: float = 1.0,
    epochs: int = 50,
    lr: float = 0.01,
    seed: int = 0,
) -> np.ndarray:
    rng = np.random.default_rng(seed)
    r = r0.copy()
    n = len(e_t)
    for _ in range(epochs):
        order = rng.permutation(n)
        corrupt = rng.integers(0, n, size=n)
        for v, vneg in zip(order, corrupt):
            pos = e_t[v] + r - e_t1[v]
            neg = e_t[v] + r - e_t1[vneg]
            pn = np.linalg.norm(pos)
            nn = np.linalg.norm(neg)
            if margin + pn - nn <= 0:
                continue
            grad = np.zeros_like(r)
            if pn > 1e-12:
                grad += pos / pn
            if nn > 1e-12:
                grad -= neg / nn
            r -= lr * grad
    return r


def align_pair(
    emb_t: dict[str, np.ndarray],
    emb_t1: dict[str, np.ndarray],
    from_t: int = 0,
    to_t: int = 1,
    margin: float = 1.0,
    epochs: int = 50,
    lr: float = 0.01,
    seed: int = 0,
) -> tuple[AlignmentRelation, dict[str, np.ndarray]]:
    """Align space t+1 onto t's frame; returns the relation and shifted space."""
    anchors = sorted(set(emb_t) & set(emb_t1))
    if not anchors:
        logger.warning("no anchors between t=%d and t=%d; identity alignment", from_t, to_t)
        dim = len(next(iter(emb_t1.values()))) if emb_t1 else 0
        rel = AlignmentRelation(from_t, to_t, np.zeros(dim))
        return rel, dict(emb_t1)

    e_t = np.array([emb_t[v] for v in anchors])
    e_t1 = np.array([emb_t1[v] for v in anchors])
    r0 = (e_t1 - e_t).mean(axis=0)
    residual_before = _mean_residual(e_t, e_t1, np.zeros_like(r0))

    candidates = [np.zeros_like(r0), r0]
    if len(anchors) > 1:
        candidates.append(_margin_sgd(e_t, e_t1, r0, margin, epochs, lr, seed))
    r = min(candidates, key=lambda c: _mean_residual(e_t, e_t1, c))
    residual_after = _mean_residual(e_t, e_t1, r)

    rel = AlignmentRelation(
        from_t, to_t, r, set(anchors), residual_before, residual_after
    )
    aligned = {v: vec - r for v, vec in emb_t1.items()}
    return rel, aligned


def align_chain(
    spaces: list[dict[str, np.ndarray]],
    seed: int = 0,
) -> tuple[list[dict[str, np.ndarray]], list[AlignmentRelation], list[int]]:
    """Express all timestamp spaces in the frame of timestamp 0.

    Pairwise translations compose left to right. A pair with zero anchors
    breaks the chain; the indices of break points are reported and later
    spaces continue from an identity hop.
    """
    if not spaces:
        return [], [], []
    aligned = [spaces[0]]
    relations: list[AlignmentRelation] = []
    breaks: list[int] = []
    for t in range(1, len(spaces)):
        rel, shifted = align_pair(
            aligned[-1], spaces[t], from_t=t - 1, to_t=t, seed=seed + t
        )
        if not rel.anchors:
            breaks.append(t)
        relations.append(rel)
        aligned.append(shifted)
    return aligned, relations, breaks
