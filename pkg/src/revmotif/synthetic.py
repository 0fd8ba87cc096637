"""Seeded synthetic revision logs for demos and tests.

Two editing styles:

* ``reciprocal`` -- edit wars: pairs of editors immediately revert each
  other (A, B, A, B, ...), interleaved with ordinary chain edits.
* ``chain`` -- nobody ever answers the editor who just answered them; the
  pattern X, Y, X never occurs and most edits come from new editors.
"""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

import numpy as np

from .ingest import Label, RevisionEvent, RevisionLog

EPOCH = datetime(2010, 1, 1, tzinfo=timezone.utc)
FETCHED_AT = datetime(2020, 1, 1, tzinfo=timezone.utc)


def reciprocal_sequence(rng: np.random.Generator, pool: int, length: int, p_war: float = 0.5) -> list[str]:
    seq = [0]
    while len(seq) < length:
        cur = seq[-1]
        if rng.random() < p_war:
            other = int(rng.integers(pool - 1))
            other += other >= cur
            for k in range(int(rng.integers(2, 7))):
                seq.append(other if k % 2 == 0 else cur)
        else:
            nxt = int(rng.integers(pool - 1))
            seq.append(nxt + (nxt >= cur))
    return [f"user{e}" for e in seq[:length]]


def chain_sequence(rng: np.random.Generator, length: int, p_new: float = 0.7) -> list[str]:
    seq = [0]
    fresh = 1
    while len(seq) < length:
        banned = set(seq[-2:])
        if rng.random() < p_new or fresh <= len(banned):
            seq.append(fresh)
            fresh += 1
            continue
        choices = [e for e in range(fresh) if e not in banned]
        seq.append(int(rng.choice(choices)))
    return [f"user{e}" for e in seq]


def _log(article_id: str, label: Label, editors: list[str], rng: np.random.Generator) -> RevisionLog:
    start = EPOCH + timedelta(days=int(rng.integers(0, 2500)))
    gaps = np.cumsum(rng.integers(60, 86400, size=len(editors)))
    events = tuple(
        RevisionEvent(e, start + timedelta(seconds=int(g))) for e, g in zip(editors, gaps)
    )
    return RevisionLog(article_id, f"Synthetic {article_id}", label, events, FETCHED_AT)


def synthetic_cohort(kind: str, count: int, seed: int, prefix: str | None = None) -> list[RevisionLog]:
    """``count`` logs of one editing style, labelled by style."""
    rng = np.random.default_rng(seed)
    prefix = prefix or kind
    logs = []
    for i in range(count):
        length = int(rng.integers(60, 160))
        if kind == "reciprocal":
            pool = int(rng.integers(12, 30))
            editors = reciprocal_sequence(rng, pool, length)
            label = Label.CONTROVERSIAL
        elif kind == "chain":
            editors = chain_sequence(rng, length)
            label = Label.NON_CONTROVERSIAL
        else:
            raise ValueError(f"unknown cohort kind {kind!r}")
        logs.append(_log(f"{prefix}-{i:04d}", label, editors, rng))
    return logs


def synthetic_fixture(count: int, seed: int) -> list[RevisionLog]:
    """Half reciprocal (controversial), half chain (non-controversial)."""
    half = count // 2
    return synthetic_cohort("reciprocal", count - half, seed) + synthetic_cohort("chain", half, seed + 1)
