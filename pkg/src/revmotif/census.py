"""Directed triad census.

Triad classes use the Holland-Leinhardt MAN labels (mutual, asymmetric and
null dyad counts plus an orientation letter) in the Batagelj-Mrvar order:

====  ==========================  =========
code  arcs (one representative)   connected
====  ==========================  =========
003   (none)                      no
012   A->B                        no
102   A<->B                       no
021D  A<-B->C                     yes
021U  A->B<-C                     yes
021C  A->B->C                     yes
111D  A<->B<-C                    yes
111U  A<->B->C                    yes
030T  A->B<-C, A->C               yes
030C  A<-B<-C, A->C               yes
201   A<->B<->C                   yes
120D  A<-B->C, A<->C              yes
120U  A->B<-C, A<->C              yes
120C  A->B->C, A<->C              yes
210   A->B<->C, A<->C             yes
300   all six arcs                yes
====  ==========================  =========

``D`` marks a node sending both of its asymmetric arcs, ``U`` a node
receiving both. For 111 the letter tells whether the asymmetric arc points
into (D) or out of (U) the mutual pair.

The fast census enumerates, for every node, pairs of its neighbours in the
undirected skeleton. An open triad (two skeleton edges) is seen once, at its
centre; a closed one is kept only at its smallest node. Counts of 012 and 102
follow from degrees and per-edge triangle counts, 003 from the total.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Hashable, Mapping

import numpy as np

from .errors import DataError
from .graph import RevisionNetwork

TRIAD_CODES = (
    "003", "012", "102", "021D", "021U", "021C", "111D", "111U",
    "030T", "030C", "201", "120D", "120U", "120C", "210", "300",
)
CONNECTED_CODES = TRIAD_CODES[3:]


class TriadClass(str, enum.Enum):
    T003 = "003"
    T012 = "012"
    T102 = "102"
    T021D = "021D"
    T021U = "021U"
    T021C = "021C"
    T111D = "111D"
    T111U = "111U"
    T030T = "030T"
    T030C = "030C"
    T201 = "201"
    T120D = "120D"
    T120U = "120U"
    T120C = "120C"
    T210 = "210"
    T300 = "300"

    @property
    def connected(self) -> bool:
        return self.value in CONNECTED_CODES

    @property
    def position(self) -> int:
        return TRIAD_CODES.index(self.value)


# Arc -> bit for an ordered triple (x, y, z) mapped to positions (0, 1, 2).
ARC_BITS = {(0, 1): 1, (1, 0): 2, (0, 2): 4, (2, 0): 8, (1, 2): 16, (2, 1): 32}


def classify_code(code: int) -> str:
    """MAN label of a 6-bit arc code (see ``ARC_BITS``)."""
    arcs = {arc for arc, bit in ARC_BITS.items() if code & bit}
    mutual, asym = [], []
    for x, y in ((0, 1), (0, 2), (1, 2)):
        fwd, back = (x, y) in arcs, (y, x) in arcs
        if fwd and back:
            mutual.append((x, y))
        elif fwd:
            asym.append((x, y))
        elif back:
            asym.append((y, x))
    man = f"{len(mutual)}{len(asym)}{3 - len(mutual) - len(asym)}"
    if man in ("021", "120"):
        (s1, t1), (s2, t2) = asym
        if s1 == s2:
            return man + "D"
        if t1 == t2:
            return man + "U"
        return man + "C"
    if man == "111":
        (_, target), = asym
        return "111D" if target in mutual[0] else "111U"
    if man == "030":
        senders = Counter(s for s, _ in asym)
        return "030C" if len(senders) == 3 else "030T"
    return man


CODE_TABLE = np.array([TRIAD_CODES.index(classify_code(c)) for c in range(64)], dtype=np.int64)
_CODE_ONEHOT = np.zeros((64, 16), dtype=np.int64)
_CODE_ONEHOT[np.arange(64), CODE_TABLE] = 1


@dataclass(frozen=True)
class TriadCensus:
    """Counts for all 16 classes, in ``TRIAD_CODES`` order."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != 16:
            raise DataError("a triad census has 16 classes")
        if any(c < 0 for c in counts):
            raise DataError("triad counts must be nonnegative")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_mapping(cls, counts: Mapping[str, int]) -> TriadCensus:
        return cls(tuple(int(counts.get(code, 0)) for code in TRIAD_CODES))

    def __getitem__(self, code: str | TriadClass) -> int:
        return self.counts[TRIAD_CODES.index(TriadClass(code).value)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(TRIAD_CODES, self.counts))

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class DyadCensus:
    mutual: int
    asymmetric: int
    null: int


def dyad_census(net: RevisionNetwork) -> DyadCensus:
    n = net.n
    key = net.src * n + net.dst
    rev = net.dst * n + net.src
    mutual = int(np.isin(key, rev, assume_unique=True).sum()) // 2
    asym = net.m - 2 * mutual
    return DyadCensus(mutual, asym, comb(n, 2) - mutual - asym)


def triple_code(net: RevisionNetwork, x: int, y: int, z: int) -> int:
    """6-bit arc code of the ordered dense-index triple ``(x, y, z)``."""
    nodes = (x, y, z)
    code = 0
    for (a, b), bit in ARC_BITS.items():
        if net.has_arc(nodes[a], nodes[b]):
            code |= bit
    return code


def classify_triple(net: RevisionNetwork, u: Hashable, v: Hashable, w: Hashable) -> TriadClass:
    """Isomorphism class of the subgraph induced on three distinct editors."""
    idx = net.index
    for node in (u, v, w):
        if node not in idx:
            raise DataError(f"node {node!r} is not in the network")
    if len({u, v, w}) != 3:
        raise DataError("classify_triple needs three distinct nodes")
    return TriadClass(TRIAD_CODES[CODE_TABLE[triple_code(net, idx[u], idx[v], idx[w])]])


# Pairs handled per vectorised chunk; bounds peak memory for hub-heavy graphs.
_CHUNK_PAIRS = 1 << 21


def census_matrix(n: int, src: np.ndarray, dst: np.ndarray, groups: int = 1) -> np.ndarray:
    """Triad censuses of ``groups`` disjoint ``n``-node graphs at once.

    Graph ``g`` owns global node ids ``g*n .. g*n+n-1``; ``src``/``dst`` hold
    its distinct, loop-free arcs in those ids. Returns a ``(groups, 16)``
    int64 array.
    """
    out = np.zeros((groups, 16), dtype=np.int64)
    if n < 3:
        return out
    total = comb(n, 3)
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    N = n * groups

    # Undirected skeleton: one entry per linked pair lo<hi, code bit 1 for
    # lo->hi and bit 2 for hi->lo.
    lo = np.minimum(src, dst)
    hi = np.maximum(src, dst)
    pkey, inv = np.unique(lo * N + hi, return_inverse=True)
    pcode = np.zeros(pkey.size, dtype=np.int64)
    np.bitwise_or.at(pcode, inv, np.where(src < dst, 1, 2))
    plo, phi = pkey // N, pkey % N
    pgroup = plo // n
    pmutual = pcode == 3

    # Neighbour lists, rel bit 1 = centre->nbr, bit 2 = nbr->centre.
    swapped = ((pcode & 1) << 1) | ((pcode & 2) >> 1)
    node = np.concatenate([plo, phi])
    nbr = np.concatenate([phi, plo])
    rel = np.concatenate([pcode, swapped])
    order = np.lexsort((nbr, node))
    node, nbr, rel = node[order], nbr[order], rel[order]
    deg = np.bincount(node, minlength=N)
    start = np.concatenate(([0], np.cumsum(deg)[:-1]))
    later = deg[node] - 1 - (np.arange(node.size) - start[node])

    by_code = np.zeros(groups * 64, dtype=np.int64)
    tri_asym = np.zeros(groups, dtype=np.int64)
    tri_mutual = np.zeros(groups, dtype=np.int64)
    csum = np.cumsum(later)
    e0 = 0
    while e0 < node.size:
        base = csum[e0 - 1] if e0 else 0
        e1 = max(int(np.searchsorted(csum, base + _CHUNK_PAIRS, side="right")), e0 + 1)
        cnt = later[e0:e1]
        npairs = int(cnt.sum())
        if npairs:
            first = np.repeat(np.arange(e0, e1), cnt)
            offs = np.repeat(np.cumsum(cnt) - cnt, cnt)
            second = first + 1 + (np.arange(npairs) - offs)
            c, a, b = node[first], nbr[first], nbr[second]
            ra, rb = rel[first], rel[second]
            abkey = a * N + b
            pos = np.minimum(np.searchsorted(pkey, abkey), pkey.size - 1)
            linked = pkey[pos] == abkey
            rab = np.where(linked, pcode[pos], 0)
            keep = ~linked | (c < a)
            g = c // n
            code = ra | (rb << 2) | (rab << 4)
            by_code += np.bincount(g[keep] * 64 + code[keep], minlength=groups * 64)
            tri = linked & (c < a)
            if tri.any():
                nm = (ra[tri] == 3).astype(np.int64) + (rb[tri] == 3) + (rab[tri] == 3)
                tri_mutual += np.bincount(g[tri], weights=nm, minlength=groups).astype(np.int64)
                tri_asym += np.bincount(g[tri], weights=3 - nm, minlength=groups).astype(np.int64)
        e0 = e1

    out += by_code.reshape(groups, 64) @ _CODE_ONEHOT
    # Triads whose only link is the pair (lo, hi): third node adjacent to neither.
    alone = n - deg[plo] - deg[phi]
    out[:, 1] = np.bincount(pgroup[~pmutual], weights=alone[~pmutual], minlength=groups) + tri_asym
    out[:, 2] = np.bincount(pgroup[pmutual], weights=alone[pmutual], minlength=groups) + tri_mutual
    out[:, 0] = total - out[:, 1:].sum(axis=1)
    return out


def triad_census(net: RevisionNetwork) -> TriadCensus:
    """Exact 16-class census by neighbourhood enumeration."""
    return TriadCensus(tuple(census_matrix(net.n, net.src, net.dst)[0].tolist()))


def brute_force_census(net: RevisionNetwork) -> TriadCensus:
    """Classify every one of the C(n,3) triples. O(n^3); a test oracle."""
    counts = Counter()
    for x, y, z in combinations(range(net.n), 3):
        counts[classify_code(triple_code(net, x, y, z))] += 1
    return TriadCensus.from_mapping(counts)


def connected_counts(census: TriadCensus) -> np.ndarray:
    """The 13 connected-class counts in ``CONNECTED_CODES`` order."""
    return np.array(census.counts[3:], dtype=np.int64)


def census_csv_row(article_id: str, census: TriadCensus) -> list[str]:
    return [article_id, *map(str, census.counts)]
