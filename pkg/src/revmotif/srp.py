"""Subgraph ratio profiles.

For each connected triad class the relative abundance against the null
ensemble is ``(real - mean) / (real + mean + epsilon)``; the profile is that
13-vector scaled to unit Euclidean length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .census import CONNECTED_CODES, TriadCensus, connected_counts, triad_census
from .errors import DataError, DegenerateDivisionError, InsufficientDataError
from .graph import RevisionNetwork
from .nullmodel import EnsembleStats, NullModelConfig, ensemble_census

DEFAULT_CUTOFF = 0.3


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DeltaVector:
    values: np.ndarray


@dataclass(frozen=True, eq=False)
class SrpProfile:
    values: np.ndarray
    degenerate: bool = False

    def as_dict(self) -> dict[str, float]:
        return dict(zip(CONNECTED_CODES, self.values.tolist()))


def compute_delta(real, rand_mean, epsilon: float) -> DeltaVector:
    real = np.asarray(real, dtype=np.float64)
    rand_mean = np.asarray(rand_mean, dtype=np.float64)
    if real.shape != (13,) or rand_mean.shape != (13,):
        raise DataError("expected 13-component vectors")
    if np.any(real < 0) or np.any(rand_mean < 0):
        raise DataError("counts and ensemble means must be nonnegative")
    if epsilon < 0:
        raise DataError("epsilon must be >= 0")
    denom = real + rand_mean + epsilon
    if np.any(denom == 0):
        raise DegenerateDivisionError(
            "zero denominator: class absent from both graph and null model with epsilon=0"
        )
    return DeltaVector(_frozen((real - rand_mean) / denom))


def normalize_srp(delta: DeltaVector) -> SrpProfile:
    d = np.asarray(delta.values, dtype=np.float64)
    norm = float(np.sqrt(np.dot(d, d)))
    if norm == 0.0:
        return SrpProfile(_frozen(np.zeros(13)), degenerate=True)
    return SrpProfile(_frozen(d / norm))


@dataclass(frozen=True, eq=False)
class ArticleSrp:
    """Everything computed on the way to one article's profile."""

    census: TriadCensus
    ensemble: EnsembleStats
    delta: DeltaVector
    profile: SrpProfile


def article_srp_details(
    net: RevisionNetwork, config: NullModelConfig, workers: int = 1
) -> ArticleSrp:
    if net.n < 3:
        raise InsufficientDataError(
            f"insufficient for motif analysis: {net.n} editors (need >= 3)"
        )
    census = triad_census(net)
    ens = ensemble_census(net.n, net.m, config, workers=workers)
    delta = compute_delta(connected_counts(census), ens.mean, config.epsilon)
    return ArticleSrp(census, ens, delta, normalize_srp(delta))


def article_srp(net: RevisionNetwork, config: NullModelConfig, workers: int = 1) -> SrpProfile:
    return article_srp_details(net, config, workers).profile


@dataclass(frozen=True)
class MotifReport:
    cutoff: float
    profiles: int
    mean: dict[str, float]
    sd: dict[str, float]
    motifs: list[str]
    anti_motifs: list[str]
    above: dict[str, int]
    below: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "cutoff": self.cutoff,
            "profiles": self.profiles,
            "classes": {
                c: {"mean": self.mean[c], "sd": self.sd[c], "above": self.above[c], "below": self.below[c]}
                for c in CONNECTED_CODES
            },
            "motifs": self.motifs,
            "anti_motifs": self.anti_motifs,
        }


def significant_motifs(profiles: Sequence[SrpProfile], cutoff: float = DEFAULT_CUTOFF) -> MotifReport:
    """Classes whose mean profile value exceeds ``+cutoff`` (motifs) or falls
    below ``-cutoff`` (anti-motifs). Degenerate profiles are ignored.

    ``above``/``below`` count the individual profiles beyond the cutoff.
    SDs are population SDs.
    """
    if cutoff <= 0:
        raise DataError("cutoff must be positive")
    rows = [p.values for p in profiles if not p.degenerate]
    if not rows:
        raise InsufficientDataError("no non-degenerate profiles to summarise")
    x = np.vstack(rows)
    mean = x.mean(axis=0)
    sd = x.std(axis=0)
    above = (x > cutoff).sum(axis=0)
    below = (x < -cutoff).sum(axis=0)
    return MotifReport(
        cutoff=float(cutoff),
        profiles=len(rows),
        mean=dict(zip(CONNECTED_CODES, mean.tolist())),
        sd=dict(zip(CONNECTED_CODES, sd.tolist())),
        motifs=[c for c, v in zip(CONNECTED_CODES, mean) if v > cutoff],
        anti_motifs=[c for c, v in zip(CONNECTED_CODES, mean) if v < -cutoff],
        above=dict(zip(CONNECTED_CODES, above.tolist())),
        below=dict(zip(CONNECTED_CODES, below.tolist())),
    )
