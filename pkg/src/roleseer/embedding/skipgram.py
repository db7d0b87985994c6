"""Skip-gram with negative sampling over walk corpora.

Single-worker sequential SGD so results are bit-stable under a fixed seed.
The inner loop is numba-compiled; noise words are drawn from the
unigram^0.75 distribution.
"""

from __future__ import annotations

import hashlib

import numpy as np
from numba import njit


class TrainingDiverged(RuntimeError):
    pass


@njit(cache=True)
def _xorshift(state):
    x = state
    x ^= (x << 13) & 0xFFFFFFFFFFFFFFFF
    x ^= x >> 7
    x ^= (x << 17) & 0xFFFFFFFFFFFFFFFF
    return x


@njit(cache=True)
def _train(
    tokens,
    offsets,
    w_in,
    w_out,
    noise_cdf,
    window,
    negatives,
    epochs,
    lr_start,
    lr_end,
    seed,
):
    d = w_in.shape[1]
    n_tokens = len(tokens)
    total_steps = max(1, epochs * n_tokens)
    losses = np.zeros(epochs)
    counts = np.zeros(epochs)
    state = np.uint64(seed * 2654435761 + 1)
    step = 0
    grad = np.zeros(d)
    for epoch in range(epochs):
        for s in range(len(offsets) - 1):
            lo, hi = offsets[s], offsets[s + 1]
            for i in range(lo, hi):
                lr = lr_start + (lr_end - lr_start) * (step / total_steps)
                step += 1
                center = tokens[i]
                state = _xorshift(state)
                b = 1 + int(state % np.uint64(window))
                left = i - b if i - b > lo else lo
                right = i + b + 1 if i + b + 1 < hi else hi
                for j in range(left, right):
                    if j == i:
                        continue
                    ctxw = tokens[j]
                    for k in range(d):
                        grad[k] = 0.0
                    # positive + negative targets
                    for neg in range(negatives + 1):
                        if neg == 0:
                            target = ctxw
                            label = 1.0
                        else:
                            state = _xorshift(state)
                            u = (state >> np.uint64(11)) * (1.0 / 9007199254740992.0)
                            target = np.searchsorted(noise_cdf, u)
                            if target == center:
                                continue
                            label = 0.0
                        dot = 0.0
                        for k in range(d):
                            dot += w_in[center, k] * w_out[target, k]
                        if dot > 30.0:
                            sig = 1.0
                        elif dot < -30.0:
                            sig = 0.0
                        else:
                            sig = 1.0 / (1.0 + np.exp(-dot))
                        if label > 0.5:
                            losses[epoch] += -np.log(sig + 1e-12)
                        else:
                            losses[epoch] += -np.log(1.0 - sig + 1e-12)
                        g = (label - sig) * lr
                        for k in range(d):
                            grad[k] += g * w_out[target, k]
                            w_out[target, k] += g * w_in[center, k]
                    for k in range(d):
                        w_in[center, k] += grad[k]
                    counts[epoch] += 1.0
    for epoch in range(epochs):
        if counts[epoch] > 0:
            losses[epoch] /= counts[epoch]
    return losses


def init_vectors(vocab_size: int, dims: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    return ((rng.random((vocab_size, dims)) - 0.5) / dims).astype(np.float64)


def node_init_vectors(names: list[str], dims: int, seed: int) -> np.ndarray:
    """Initial rows derived from each name, independent of vocabulary order.

    Graphs trained separately start each shared node at the same position, so
    their vector spaces stay comparable up to the drift training introduces
    (which a translation fit can then remove).
    """
    out = np.empty((len(names), dims), dtype=np.float64)
    for i, name in enumerate(names):
        digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
        rng = np.random.default_rng(int.from_bytes(digest[:8], "little"))
        out[i] = (rng.random(dims) - 0.5) / dims
    return out


def train_skipgram(
    walks: list[list[int]],
    vocab_size: int,
    dims: int = 128,
    window: int = 10,
    negatives: int = 5,
    epochs: int = 5,
    lr: float = 0.025,
    lr_min: float = 0.0001,
    seed: int = 0,
    init: np.ndarray | None = None,
) -> tuple[np.ndarray, list[float]]:
    """Train input-side vectors on a walk corpus; returns (vectors, epoch losses)."""
    if vocab_size <= 0:
        raise ValueError("empty vocabulary")
    if init is not None:
        if init.shape != (vocab_size, dims):
            raise ValueError(f"init shape {init.shape} != ({vocab_size}, {dims})")
        w_in = np.array(init, dtype=np.float64)
    else:
        w_in = init_vectors(vocab_size, dims, seed)
    if epochs == 0 or not walks:
        return w_in, []
    w_out = np.zeros((vocab_size, dims), dtype=np.float64)

    counts = np.zeros(vocab_size, dtype=np.float64)
    flat: list[int] = []
    offsets = [0]
    for walk in walks:
        flat.extend(walk)
        offsets.append(len(flat))
        for t in walk:
            counts[t] += 1.0
    tokens = np.array(flat, dtype=np.int64)
    noise = counts**0.75
    total = noise.sum()
    if total == 0:
        raise ValueError("corpus has no tokens")
    noise_cdf = np.cumsum(noise / total)
    noise_cdf[-1] = 1.0

    losses = _train(
        tokens,
        np.array(offsets, dtype=np.int64),
        w_in,
        w_out,
        noise_cdf,
        window,
        negatives,
        epochs,
        lr,
        lr_min,
        seed + 1,
    )
    if not np.all(np.isfinite(w_in)) or not np.all(np.isfinite(losses)):
        raise TrainingDiverged(
            f"non-finite loss/vectors after {epochs} epochs (lr={lr}, dims={dims})"
        )
    return w_in, [float(x) for x in losses]
