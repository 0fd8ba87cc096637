"""PCA, pairwise profile correlation and external-variable correlates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .census import CONNECTED_CODES
from .errors import DataError, InsufficientDataError, NumericalError
from .ingest import ArticleMetadata, Label
from .linalg import jacobi_eigh
from .srp import SrpProfile

COVARIATES = ("editor_count", "age_days", "edit_rate")
GROUPS = ("controversial", "non_controversial", "all")


@dataclass(frozen=True, eq=False)
class SrpMatrix:
    """Non-degenerate profiles stacked as an ``(N, 13)`` array."""

    article_ids: tuple[str, ...]
    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64).reshape(-1, 13)
        if len(self.article_ids) != len(values) or len(self.labels) != len(values):
            raise DataError("article_ids, labels and values must have equal length")
        values.setflags(write=False)
        object.__setattr__(self, "article_ids", tuple(self.article_ids))
        object.__setattr__(self, "labels", tuple(Label(x).value for x in self.labels))
        object.__setattr__(self, "values", values)

    @classmethod
    def from_profiles(cls, rows: Iterable[tuple[str, str, SrpProfile]]) -> SrpMatrix:
        """Stack ``(article_id, label, profile)`` rows, dropping degenerate profiles."""
        keep = [(a, lab, p.values) for a, lab, p in rows if not p.degenerate]
        if not keep:
            return cls((), (), np.empty((0, 13)))
        ids, labels, vals = zip(*keep)
        return cls(ids, labels, np.vstack(vals))

    def __len__(self) -> int:
        return len(self.article_ids)

    def subset(self, group: str | None) -> SrpMatrix:
        if group in (None, "all"):
            return self
        group = Label(group).value
        idx = [i for i, lab in enumerate(self.labels) if lab == group]
        return SrpMatrix(
            tuple(self.article_ids[i] for i in idx),
            tuple(self.labels[i] for i in idx),
            self.values[idx],
        )


@dataclass(frozen=True, eq=False)
class PcaResult:
    """Principal axes of an :class:`SrpMatrix`.

    ``components`` holds one unit loading vector per row, ordered by
    decreasing eigenvalue. ``scale`` is the per-class divisor applied after
    centring (all ones for covariance PCA).
    """

    mean: np.ndarray
    components: np.ndarray
    eigenvalues: np.ndarray
    explained_variance: np.ndarray
    scale: np.ndarray
    mode: str = "covariance"
    rows: int = 0

    def to_dict(self, k: int | None = None) -> dict:
        k = len(self.components) if k is None else k
        return {
            "mode": self.mode,
            "rows": self.rows,
            "classes": list(CONNECTED_CODES),
            "mean": dict(zip(CONNECTED_CODES, self.mean.tolist())),
            "loadings": {
                f"PC{j + 1}": dict(zip(CONNECTED_CODES, self.components[j].tolist()))
                for j in range(k)
            },
            "eigenvalues": self.eigenvalues.tolist(),
            "explained_variance_pct": (100 * self.explained_variance).tolist(),
        }


def _orient(vectors: np.ndarray) -> np.ndarray:
    """Flip each row so its largest-magnitude entry (first on ties) is positive."""
    out = vectors.copy()
    for j, row in enumerate(out):
        if row[np.argmax(np.abs(row))] < 0:
            out[j] = -row
    return out


def pca_fit(matrix: SrpMatrix, mode: str = "covariance") -> PcaResult:
    """Eigen-decompose the sample covariance (N-1 divisor) of the profiles.

    ``mode="correlation"`` standardises each class by its sample SD first;
    classes with zero spread are left unscaled.
    """
    if mode not in ("covariance", "correlation"):
        raise DataError(f"unknown PCA mode {mode!r}")
    x = matrix.values
    if len(x) < 2:
        raise InsufficientDataError("PCA needs at least 2 profiles")
    mean = x.mean(axis=0)
    centred = x - mean
    scale = np.ones(13)
    if mode == "correlation":
        sd = centred.std(axis=0, ddof=1)
        scale = np.where(sd > 0, sd, 1.0)
        centred = centred / scale
    cov = centred.T @ centred / (len(x) - 1)
    w, v = jacobi_eigh(cov)
    w = np.clip(w, 0.0, None)
    total = w.sum()
    if not total > 0:
        raise NumericalError("all profiles are identical; variance is zero")
    return PcaResult(
        mean=mean,
        components=_orient(v.T),
        eigenvalues=w,
        explained_variance=w / total,
        scale=scale,
        mode=mode,
        rows=len(x),
    )


@dataclass(frozen=True)
class Projection:
    article_id: str
    label: str
    coords: tuple[float, ...]


def pca_project(result: PcaResult, profiles: SrpMatrix, k: int = 2) -> list[Projection]:
    if not 1 <= k <= len(result.components):
        raise DataError(f"k must be between 1 and {len(result.components)}")
    x = profiles.values
    if x.shape[1] != result.mean.shape[0]:
        raise DataError("profile dimension does not match the PCA fit")
    coords = ((x - result.mean) / result.scale) @ result.components[:k].T
    return [
        Projection(a, lab, tuple(row))
        for a, lab, row in zip(profiles.article_ids, profiles.labels, coords.tolist())
    ]


@dataclass(frozen=True)
class PearsonSummary:
    mean: float
    sd: float
    pairs: int
    excluded_rows: int = 0
    excluded_pairs: int = 0


def _pair_blocks(z: np.ndarray, block: int):
    n = len(z)
    for i0 in range(0, n, block):
        r = np.clip(z[i0:i0 + block] @ z[i0:].T, -1.0, 1.0)
        # keep strictly-later partners only
        mask = np.arange(i0, i0 + len(r))[:, None] < np.arange(i0, n)[None, :]
        yield r[mask]


def pairwise_pearson(profiles: SrpMatrix, group: str | None = None, block: int = 512) -> PearsonSummary:
    """Mean and population SD of Pearson r over all distinct profile pairs.

    Profiles that are constant across the 13 classes have no defined r;
    they are dropped and every pair they would form is counted in
    ``excluded_pairs``.
    """
    x = profiles.subset(group).values
    centred = x - x.mean(axis=1, keepdims=True)
    norms = np.sqrt(np.einsum("ij,ij->i", centred, centred))
    ok = norms > 0
    usable = int(ok.sum())
    if usable < 2:
        raise InsufficientDataError("need at least 2 non-constant profiles")
    bad = len(x) - usable
    z = centred[ok] / norms[ok][:, None]
    pairs = usable * (usable - 1) // 2
    mean = math.fsum(float(b.sum()) for b in _pair_blocks(z, block)) / pairs
    ss = math.fsum(float(((b - mean) ** 2).sum()) for b in _pair_blocks(z, block))
    return PearsonSummary(
        mean=mean,
        sd=math.sqrt(ss / pairs),
        pairs=pairs,
        excluded_rows=bad,
        excluded_pairs=bad * (bad - 1) // 2 + bad * usable,
    )


def pearson_r(x, y) -> float | None:
    """Pearson correlation, or None when either side has zero variance."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(x) < 2:
        return None
    dx, dy = x - x.mean(), y - y.mean()
    sx, sy = math.sqrt(float(dx @ dx)), math.sqrt(float(dy @ dy))
    if sx == 0 or sy == 0:
        return None
    return max(-1.0, min(1.0, float(dx @ dy) / (sx * sy)))


@dataclass(frozen=True)
class CorrelateRow:
    group: str
    component: str
    covariate: str
    r: float | None
    n: int
    note: str = ""


@dataclass(frozen=True)
class BinRow:
    group: str
    component: str
    covariate: str
    bin: int
    count: int
    covariate_lo: float
    covariate_hi: float
    covariate_mean: float
    component_mean: float


@dataclass
class CorrelatesReport:
    rows: list[CorrelateRow] = field(default_factory=list)
    bins: list[BinRow] = field(default_factory=list)
    exclusions: list[str] = field(default_factory=list)


def external_correlates(
    coords: Sequence[Projection],
    metadata: Mapping[str, ArticleMetadata],
    bins: int = 10,
) -> CorrelatesReport:
    """Correlate each projected component with editor count, age and edit rate.

    Done per label group and for all articles together. Articles without
    metadata are listed in ``exclusions``. ``bins`` equal-count bins of each
    covariate give the binned summary rows.
    """
    report = CorrelatesReport()
    present = []
    for p in coords:
        if p.article_id in metadata:
            present.append(p)
        else:
            report.exclusions.append(p.article_id)
    if not present:
        return report
    k = len(present[0].coords)
    for group in GROUPS:
        members = [p for p in present if group == "all" or p.label == group]
        if not members:
            continue
        c = np.array([p.coords for p in members], dtype=np.float64)
        cov = {
            name: np.array([float(getattr(metadata[p.article_id], name)) for p in members])
            for name in COVARIATES
        }
        for j in range(k):
            comp = f"PC{j + 1}"
            for name, values in cov.items():
                r = pearson_r(c[:, j], values)
                note = ""
                if r is None:
                    if len(members) < 2:
                        note = "too few articles"
                    elif np.ptp(values) == 0:
                        note = "zero-variance covariate"
                    else:
                        note = "zero-variance component"
                report.rows.append(CorrelateRow(group, comp, name, r, len(members), note))
                order = np.argsort(values, kind="stable")
                for b, chunk in enumerate(np.array_split(order, min(bins, len(order)))):
                    report.bins.append(BinRow(
                        group, comp, name, b, len(chunk),
                        float(values[chunk].min()), float(values[chunk].max()),
                        float(values[chunk].mean()), float(c[chunk, j].mean()),
                    ))
    return report
