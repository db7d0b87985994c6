"""Event-sequence summaries around a role change.

Players' event sequences are run-length compressed, embedded with a PV-DBOW
style document model over the 8-type event vocabulary, and projected to 2D
for the similarity scatter. Coxcomb counts always reflect raw (pre-compression)
per-type event counts.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .ingest import EVENT_TYPES, InteractionEvent
from .roles.projection import project_vectors

logger = logging.getLogger(__name__)

EVENT_INDEX = {e: i for i, e in enumerate(EVENT_TYPES)}


@dataclass
class CompressedSequence:
    player: str
    tokens: list[str]
    counts: dict[str, int] = field(default_factory=dict)


@dataclass
class SequencePoint:
    player: str
    x: float
    y: float
    coxcomb: dict[str, int] = field(default_factory=dict)


@dataclass
class PeriodDistribution:
    period: int
    shares: dict[str, float] = field(default_factory=dict)
    empty: bool = True


def compress(player: str, event_types: list[str]) -> CompressedSequence:
    """Run-length collapse of an ordered event-type sequence (idempotent)."""
    tokens: list[str] = []
    for e in event_types:
        if not tokens or tokens[-1] != e:
            tokens.append(e)
    return CompressedSequence(player, tokens, dict(Counter(event_types)))


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(x, -30, 30)))


def embed_sequences(
    seqs: list[CompressedSequence],
    dims: int = 32,
    negatives: int = 5,
    epochs: int = 20,
    lr: float = 0.05,
    seed: int = 0,
) -> dict[str, np.ndarray]:
    """PV-DBOW: each document vector is trained to predict its own tokens
    against negative samples from the event-type vocabulary."""
    rng = np.random.default_rng(seed)
    n = len(seqs)
    vocab = len(EVENT_TYPES)
    docs = ((rng.random((n, dims)) - 0.5) / dims).astype(np.float64)
    words = np.zeros((vocab, dims), dtype=np.float64)

    token_ids = [np.array([EVENT_INDEX[t] for t in s.tokens], dtype=np.int64) for s in seqs]
    freq = np.zeros(vocab)
    for ids in token_ids:
        for t in ids:
            freq[t] += 1
    noise = freq**0.75
    if noise.sum() == 0:
        return {s.player: np.zeros(dims) for s in seqs}
    noise_p = noise / noise.sum()

    for _ in range(epochs):
        for di in range(n):
            ids = token_ids[di]
            if len(ids) == 0:
                continue
            negs = rng.choice(vocab, size=(len(ids), negatives), p=noise_p)
            for pos, negrow in zip(ids, negs):
                targets = np.concatenate(([pos], negrow))
                labels = np.zeros(len(targets))
                labels[0] = 1.0
                scores = words[targets] @ docs[di]
                g = (labels - _sigmoid(scores)) * lr
                grad_doc = g @ words[targets]
                words[targets] += np.outer(g, docs[di])
                docs[di] += grad_doc

    out = {}
    for s, vec in zip(seqs, docs):
        if not s.tokens:
            logger.warning("empty sequence for %s; zero vector", s.player)
            out[s.player] = np.zeros(dims)
        else:
            out[s.player] = vec.copy()
    return out


def project_sequences(
    vectors: dict[str, np.ndarray],
    counts: dict[str, dict[str, int]],
    seed: int = 0,
) -> list[SequencePoint]:
    players = sorted(vectors)
    if not players:
        return []
    mat = np.array([vectors[p] for p in players])
    coords = project_vectors(mat, seed=seed)
    return [
        SequencePoint(p, float(x), float(y), dict(counts.get(p, {})))
        for p, (x, y) in zip(players, coords)
    ]


def period_distributions(
    ego: str,
    events: list[InteractionEvent],
    bucket_minutes: int = 10,
    span: tuple[int, int] | None = None,
) -> list[PeriodDistribution]:
    """Per-bucket event-type shares for the ego's events; empty buckets kept."""
    mine = [e for e in events if e.actor == ego or e.target == ego]
    if span is None:
        if not mine:
            return []
        span = (mine[0].occurred_at, mine[-1].occurred_at + 1)
    width = bucket_minutes * 60
    start, end = span
    n_buckets = max(0, (end - start + width - 1) // width)
    out = []
    for b in range(n_buckets):
        lo, hi = start + b * width, start + (b + 1) * width
        counts = Counter(e.event_type for e in mine if lo <= e.occurred_at < hi)
        total = sum(counts.values())
        if total == 0:
            out.append(PeriodDistribution(b, {}, empty=True))
        else:
            out.append(
                PeriodDistribution(
                    b, {t: c / total for t, c in sorted(counts.items())}, empty=False
                )
            )
    return out
