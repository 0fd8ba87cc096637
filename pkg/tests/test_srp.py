import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from revmotif.census import CONNECTED_CODES, brute_force_census, connected_counts
from revmotif.errors import DataError, DegenerateDivisionError, InsufficientDataError
from revmotif.graph import RevisionNetwork
from revmotif.nullmodel import NullModelConfig
from revmotif.srp import (
    DeltaVector,
    SrpProfile,
    article_srp,
    article_srp_details,
    compute_delta,
    normalize_srp,
    significant_motifs,
)

from conftest import EXAMPLE_EDGES

DATA = Path(__file__).parent / "data"


def unit(k, value=1.0):
    v = np.zeros(13)
    v[k] = value
    return v


def test_delta_zero_when_equal():
    x = np.arange(13.0)
    assert compute_delta(x, x, 4).values.tolist() == [0.0] * 13


def test_delta_hand_values():
    real = np.full(13, 20.0)
    mean = np.full(13, 10.0)
    assert compute_delta(real, mean, 4).values == pytest.approx(np.full(13, 10 / 34))
    assert 10 / 34 == pytest.approx(0.294118, abs=1e-6)
    d = compute_delta(unit(0), np.zeros(13), 4).values
    assert d[0] == pytest.approx(0.2) and np.all(d[1:] == 0)


def test_delta_zero_denominator():
    with pytest.raises(DegenerateDivisionError):
        compute_delta(np.zeros(13), np.zeros(13), 0)
    assert compute_delta(np.ones(13), np.zeros(13), 0).values.tolist() == [1.0] * 13


def test_delta_preconditions():
    with pytest.raises(DataError):
        compute_delta(-np.ones(13), np.zeros(13), 4)
    with pytest.raises(DataError):
        compute_delta(np.ones(12), np.zeros(12), 4)


def test_normalize_examples():
    p = normalize_srp(DeltaVector(unit(0, 0.5)))
    assert p.values.tolist() == unit(0).tolist() and not p.degenerate
    p = normalize_srp(DeltaVector(np.zeros(13)))
    assert p.degenerate and p.values.tolist() == [0.0] * 13
    d = np.zeros(13)
    d[:2] = 0.3, -0.4
    assert normalize_srp(DeltaVector(d)).values[:2] == pytest.approx([0.6, -0.8])


def test_forced_graph_is_degenerate():
    full = [(a, b) for a in range(3) for b in range(3) if a != b]
    p = article_srp(RevisionNetwork.from_edges(full), NullModelConfig(samples=5))
    assert p.degenerate
    assert not np.any(np.isnan(p.values))


def test_too_small_network():
    with pytest.raises(InsufficientDataError, match="insufficient for motif analysis"):
        article_srp(RevisionNetwork.from_edges([("a", "b")]), NullModelConfig())


def test_example_profile_regression():
    ref = json.loads((DATA / "example_srp_seed42.json").read_text())
    net = RevisionNetwork.from_edges(EXAMPLE_EDGES)
    d = article_srp_details(net, NullModelConfig(samples=100, seed=42, epsilon=4.0))
    assert list(d.census.counts) == list(brute_force_census(net).counts) == ref["census"]
    assert d.ensemble.mean.tolist() == ref["ensemble_mean"]
    assert d.delta.values.tolist() == ref["delta"]
    assert d.profile.values.tolist() == ref["srp"]
    assert abs(np.linalg.norm(d.profile.values) - 1) < 1e-12


def test_article_srp_is_reproducible():
    rng = np.random.default_rng(2)
    adj = rng.random((25, 25)) < 0.15
    np.fill_diagonal(adj, False)
    net = RevisionNetwork.unlabeled(25, *np.nonzero(adj))
    cfg = NullModelConfig(samples=40, seed=77)
    a, b = article_srp(net, cfg), article_srp(net, cfg, workers=3)
    assert a.values.tobytes() == b.values.tobytes()


counts = st.lists(st.integers(0, 10_000), min_size=13, max_size=13)
means = st.lists(st.floats(0, 10_000, allow_nan=False, allow_subnormal=False), min_size=13, max_size=13)


@settings(max_examples=200, deadline=None)
@given(counts, means)
def test_profile_invariants(real, mean):
    real, mean = np.array(real, float), np.array(mean, float)
    delta = compute_delta(real, mean, 4.0)
    assert np.all(np.abs(delta.values) < 1)
    p = normalize_srp(delta)
    if p.degenerate:
        assert p.values.tolist() == [0.0] * 13
        return
    assert abs(np.sqrt(np.sum(p.values**2)) - 1) < 1e-12
    assert np.all(np.sign(p.values) == np.sign(real - mean))
    assert np.all(np.abs(p.values) <= 1)


@settings(max_examples=100, deadline=None)
@given(counts, means, st.integers(0, 12), st.integers(1, 1000))
def test_delta_monotone_in_real_count(real, mean, k, bump):
    real, mean = np.array(real, float), np.array(mean, float)
    more = real.copy()
    more[k] += bump
    assert compute_delta(more, mean, 4).values[k] > compute_delta(real, mean, 4).values[k]


def test_significant_motifs_single_slot():
    v = np.full(13, np.sqrt(0.19 / 12))
    v[4] = 0.9
    profiles = [SrpProfile(v)] * 5
    rep = significant_motifs(profiles, 0.3)
    assert rep.motifs == [CONNECTED_CODES[4]]
    assert rep.anti_motifs == []
    assert rep.sd[CONNECTED_CODES[4]] == pytest.approx(0)
    assert rep.above[CONNECTED_CODES[4]] == 5


def test_significant_motifs_mixed_and_degenerate():
    a, b = unit(0, 1.0), -unit(1, 1.0)
    profiles = [SrpProfile(a), SrpProfile(b), SrpProfile(np.zeros(13), degenerate=True)]
    rep = significant_motifs(profiles, 0.3)
    assert rep.profiles == 2
    assert rep.motifs == ["021D"] and rep.anti_motifs == ["021U"]
    assert rep.mean["021D"] == pytest.approx(0.5) and rep.sd["021D"] == pytest.approx(0.5)
    assert set(rep.to_dict()["classes"]) == set(CONNECTED_CODES)


def test_significant_motifs_preconditions():
    with pytest.raises(InsufficientDataError):
        significant_motifs([], 0.3)
    with pytest.raises(DataError):
        significant_motifs([SrpProfile(unit(0))], 0)


def test_connected_counts_feed_delta():
    net = RevisionNetwork.from_edges(EXAMPLE_EDGES)
    real = connected_counts(brute_force_census(net))
    assert real.sum() == 3
