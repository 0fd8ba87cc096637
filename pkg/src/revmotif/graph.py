"""Directed revision networks.

An edge ``(p, q)`` means editor ``p`` revised the article immediately after
editor ``q``. Consecutive revisions by the same editor add nothing, repeated
pairs collapse, so the result is a simple digraph without self-loops.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import DataError, InsufficientDataError
from .ingest import RevisionLog


class RevisionNetwork:
    """Immutable simple digraph over densely indexed nodes.

    Nodes are ``0..n-1``; ``labels[i]`` is the original editor identifier.
    Edges are held as two sorted, read-only ``int64`` arrays. Adjacency sets
    are built on first use.
    """

    def __init__(self, labels: Sequence[Hashable], src, dst):
        labels = tuple(labels)
        n = len(labels)
        src = np.array(src, dtype=np.int64).ravel()
        dst = np.array(dst, dtype=np.int64).ravel()
        if src.shape != dst.shape:
            raise DataError("src and dst must have equal length")
        if src.size:
            if src.min() < 0 or dst.min() < 0 or src.max() >= n or dst.max() >= n:
                raise DataError("edge endpoint out of range")
            if np.any(src == dst):
                raise DataError("self-loops are not allowed")
            key = np.unique(src * n + dst)
            src, dst = key // n, key % n
        src.setflags(write=False)
        dst.setflags(write=False)
        self.labels = labels
        self.src = src
        self.dst = dst

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[Hashable, Hashable]], nodes=()) -> RevisionNetwork:
        """Build from labelled edges; ``nodes`` adds isolated nodes and fixes order."""
        index: dict[Hashable, int] = {}
        for v in nodes:
            index.setdefault(v, len(index))
        s, d = [], []
        for a, b in edges:
            s.append(index.setdefault(a, len(index)))
            d.append(index.setdefault(b, len(index)))
        return cls(list(index), s, d)

    @classmethod
    def unlabeled(cls, n: int, src, dst) -> RevisionNetwork:
        return cls(range(n), src, dst)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return int(self.src.size)

    @cached_property
    def index(self) -> dict[Hashable, int]:
        return {v: i for i, v in enumerate(self.labels)}

    @cached_property
    def _keys(self) -> frozenset[int]:
        return frozenset((self.src * max(self.n, 1) + self.dst).tolist())

    @cached_property
    def successors(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.n)]
        for a, b in zip(self.src.tolist(), self.dst.tolist()):
            out[a].add(b)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def predecessors(self) -> tuple[frozenset[int], ...]:
        inc: list[set[int]] = [set() for _ in range(self.n)]
        for a, b in zip(self.src.tolist(), self.dst.tolist()):
            inc[b].add(a)
        return tuple(frozenset(s) for s in inc)

    def has_arc(self, i: int, j: int) -> bool:
        """Edge test on dense indices."""
        return i * self.n + j in self._keys

    def has_edge(self, u: Hashable, v: Hashable) -> bool:
        """Edge test on original labels."""
        idx = self.index
        if u not in idx or v not in idx:
            return False
        return self.has_arc(idx[u], idx[v])

    def edges(self) -> set[tuple[Hashable, Hashable]]:
        lab = self.labels
        return {(lab[a], lab[b]) for a, b in zip(self.src.tolist(), self.dst.tolist())}

    def relabeled(self, perm: Sequence[int]) -> RevisionNetwork:
        """Same graph with node ``i`` moved to position ``perm[i]``."""
        perm = np.asarray(perm, dtype=np.int64)
        labels = [None] * self.n
        for i, p in enumerate(perm.tolist()):
            labels[p] = self.labels[i]
        return RevisionNetwork(labels, perm[self.src], perm[self.dst])

    def __eq__(self, other):
        if not isinstance(other, RevisionNetwork):
            return NotImplemented
        return set(self.labels) == set(other.labels) and self.edges() == other.edges()

    def __hash__(self):
        return hash((frozenset(self.labels), frozenset(self.edges())))

    def __repr__(self):
        return f"RevisionNetwork(n={self.n}, m={self.m})"


def build_revision_network(log: RevisionLog | Sequence[str]) -> RevisionNetwork:
    """Revision network of a chronological log (or plain editor sequence).

    Nodes are indexed in order of first appearance.
    """
    editors = log.editors if isinstance(log, RevisionLog) else list(log)
    if not editors:
        raise InsufficientDataError("insufficient data: empty revision log")
    index: dict[str, int] = {}
    seq = [index.setdefault(e, len(index)) for e in editors]
    s = np.asarray(seq, dtype=np.int64)
    later, earlier = s[1:], s[:-1]
    keep = later != earlier
    return RevisionNetwork(list(index), later[keep], earlier[keep])


@dataclass(frozen=True)
class GraphStats:
    n: int
    m: int
    density: float


def graph_stats(net: RevisionNetwork) -> GraphStats:
    n, m = net.n, net.m
    density = m / (n * (n - 1)) if n >= 2 else 0.0
    return GraphStats(n, m, density)


def write_edge_list(net: RevisionNetwork, path: str | os.PathLike) -> None:
    """One ``src<TAB>dst`` line per edge using original editor names."""
    lab = net.labels
    with open(path, "w", encoding="utf-8") as fh:
        for a, b in zip(net.src.tolist(), net.dst.tolist()):
            fh.write(f"{lab[a]}\t{lab[b]}\n")
