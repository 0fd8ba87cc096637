"""Triad-census motif profiles of editor revision networks."""

from .analysis import (
    PcaResult,
    SrpMatrix,
    external_correlates,
    pairwise_pearson,
    pca_fit,
    pca_project,
)
from .census import (
    CONNECTED_CODES,
    TRIAD_CODES,
    TriadCensus,
    TriadClass,
    brute_force_census,
    classify_triple,
    connected_counts,
    triad_census,
)
from .graph import RevisionNetwork, build_revision_network, graph_stats
from .ingest import (
    ArticleMetadata,
    Label,
    RevisionEvent,
    RevisionLog,
    compute_metadata,
    fetch_revisions,
    load_fixtures,
)
from .nullmodel import EnsembleStats, NullModelConfig, ensemble_census, generate_random_digraph
from .srp import SrpProfile, article_srp, compute_delta, normalize_srp, significant_motifs

__version__ = "0.1.0"

__all__ = [
    "ArticleMetadata",
    "CONNECTED_CODES",
    "EnsembleStats",
    "Label",
    "NullModelConfig",
    "PcaResult",
    "RevisionEvent",
    "RevisionLog",
    "RevisionNetwork",
    "SrpMatrix",
    "SrpProfile",
    "TRIAD_CODES",
    "TriadCensus",
    "TriadClass",
    "article_srp",
    "brute_force_census",
    "build_revision_network",
    "classify_triple",
    "compute_delta",
    "compute_metadata",
    "connected_counts",
    "ensemble_census",
    "external_correlates",
    "fetch_revisions",
    "generate_random_digraph",
    "graph_stats",
    "load_fixtures",
    "normalize_srp",
    "pairwise_pearson",
    "pca_fit",
    "pca_project",
    "significant_motifs",
    "triad_census",
]
