"""Uniform G(n, m) directed null model and ensemble triad statistics.

Sample ``i`` of an ensemble seeded with ``seed`` draws from
``PCG64(SeedSequence(seed, spawn_key=(i,)))`` -- the same stream as
``SeedSequence(seed).spawn(i + 1)[i]`` -- so every sample is reproducible on
its own and independent of batching or worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .census import census_matrix
from .errors import DataError, InfeasibleParametersError
from .graph import RevisionNetwork

DEFAULT_SAMPLES = 100
DEFAULT_EPSILON = 4.0
# Above this fraction of the ordered-pair space, shuffle instead of rejecting.
DENSE_CROSSOVER = 0.3
# Edges handled per census batch.
_BATCH_EDGES = 250_000


@dataclass(frozen=True)
class NullModelConfig:
    samples: int = DEFAULT_SAMPLES
    seed: int = 0
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        if int(self.samples) < 1:
            raise DataError("samples must be >= 1")
        if not 0 <= int(self.seed) < 2**64:
            raise DataError("seed must be a 64-bit unsigned integer")
        if not self.epsilon >= 0:
            raise DataError("epsilon must be >= 0")


@dataclass(frozen=True, eq=False)
class EnsembleStats:
    """Mean and population SD of the 13 connected-class counts.

    ``census`` keeps the full 16-class count of every sample, in sample order.
    """

    mean: np.ndarray
    std: np.ndarray
    samples: int
    census: np.ndarray = field(repr=False)


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def _check(n: int, m: int) -> int:
    if n < 0 or m < 0:
        raise InfeasibleParametersError("n and m must be nonnegative")
    pairs = n * (n - 1)
    if m > pairs:
        raise InfeasibleParametersError(f"cannot place {m} edges on {n} nodes (max {pairs})")
    return pairs


def sample_arcs(n: int, m: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """``m`` distinct ordered pairs, uniformly, from the ``n*(n-1)`` non-loop pairs."""
    pairs = _check(n, m)
    if m == 0:
        return np.empty(0, np.int64), np.empty(0, np.int64)
    if m > DENSE_CROSSOVER * pairs:
        chosen = rng.permutation(pairs)[:m]
    else:
        # First m distinct values of an iid uniform stream form a uniform m-subset.
        chosen = np.empty(0, dtype=np.int64)
        while chosen.size < m:
            need = m - chosen.size
            draw = rng.integers(0, pairs, size=need + need // 8 + 16, dtype=np.int64)
            pool = np.concatenate([chosen, draw])
            _, first = np.unique(pool, return_index=True)
            chosen = pool[np.sort(first)][:m]
    src = chosen // (n - 1)
    rest = chosen % (n - 1)
    dst = rest + (rest >= src)
    return src, dst


def generate_random_digraph(n: int, m: int, seed: int) -> RevisionNetwork:
    """Uniform simple digraph with exactly ``n`` nodes and ``m`` arcs."""
    src, dst = sample_arcs(n, m, np.random.default_rng(seed))
    return RevisionNetwork.unlabeled(n, src, dst)


def _batch_census(n: int, m: int, seed: int, indices: range) -> np.ndarray:
    srcs, dsts = [], []
    for g, i in enumerate(indices):
        s, d = sample_arcs(n, m, sample_rng(seed, i))
        srcs.append(s + g * n)
        dsts.append(d + g * n)
    src = np.concatenate(srcs) if srcs else np.empty(0, np.int64)
    dst = np.concatenate(dsts) if dsts else np.empty(0, np.int64)
    return census_matrix(n, src, dst, groups=len(indices))


def ensemble_census(n: int, m: int, config: NullModelConfig, workers: int = 1) -> EnsembleStats:
    """Census every null sample and summarise the connected classes.

    Mean and SD come from exact integer sums, so they are bit-identical for
    any batching or worker count.
    """
    _check(n, m)
    samples = int(config.samples)
    per_batch = max(1, min(samples, _BATCH_EDGES // max(m, 1)))
    batches = [range(i, min(i + per_batch, samples)) for i in range(0, samples, per_batch)]
    seed = int(config.seed)
    if workers > 1 and len(batches) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda r: _batch_census(n, m, seed, r), batches))
    else:
        parts = [_batch_census(n, m, seed, r) for r in batches]
    census = np.vstack(parts)

    mean = np.empty(13)
    std = np.empty(13)
    for k, col in enumerate(census[:, 3:].T.tolist()):
        s = sum(col)
        q = sum(x * x for x in col)
        mean[k] = s / samples
        std[k] = math.sqrt((samples * q - s * s) / samples**2)
    census.setflags(write=False)
    mean.setflags(write=False)
    std.setflags(write=False)
    return EnsembleStats(mean, std, samples, census)
