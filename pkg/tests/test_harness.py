import math

import numpy as np
import pytest

from cliquenorm import harness
from cliquenorm.bounds import clique_bound, hyperclique_bound
from cliquenorm.graphs import (
    construct_disjoint_cliques,
    count_cliques,
    degree_norm,
    enumerate_all_graphs,
    graph_from_mask,
)
from cliquenorm.harness import (
    Construction,
    NotTight,
    VerificationReport,
    check_proposition9,
    exhaustive_clique_counts,
    merge_reports,
    verify_exhaustive_graphs,
    verify_exhaustive_hypergraphs,
    verify_fixed_n,
    verify_random_graphs,
    verify_tightness,
)
from cliquenorm.hypergraphs import (
    count_hypercliques,
    enumerate_all_hypergraphs,
    hyper_norm,
    hypergraph_from_mask,
)


def mask_of(witness):
    return int(witness.rsplit("=", 1)[1], 16)


def test_exhaustive_graphs_tiny():
    rep = verify_exhaustive_graphs(3, 3, [1])
    assert rep.instances_checked == 8 and rep.ok
    assert rep.max_ratio == pytest.approx(1, rel=1e-9)
    assert graph_from_mask(3, mask_of(rep.witness)).num_edges == 3


def test_exhaustive_graphs_n4_witness_is_tight():
    rep = verify_exhaustive_graphs(4, 3, [0.5, 1, 2, 3])
    assert rep.ok and rep.instances_checked == 64
    assert rep.max_ratio == pytest.approx(1, rel=1e-9)
    for s in rep.per_p:
        G = graph_from_mask(4, mask_of(s.witness))
        k = count_cliques(G, 3)
        assert k / clique_bound(s.p, 3, degree_norm(G, s.p)).bound == pytest.approx(s.max_ratio)
    K4 = verify_exhaustive_graphs(4, 4, [1])
    assert K4.witness == "graph:n=4:mask=3f"


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("t", [3, 4])
def test_vectorized_counts_match_scalar(n, t):
    counts = exhaustive_clique_counts(n, t)
    expected = [count_cliques(G, t) for G in enumerate_all_graphs(n)]
    assert counts.tolist() == expected


def test_vectorized_hyper_counts_and_norms_match_scalar():
    masks = np.arange(1 << 10, dtype=np.int64)
    k, keys, base, width = harness._chunk_counts_and_keys(masks, 5, 3, 1, 4)
    for mask, H in enumerate(enumerate_all_hypergraphs(5, 3)):
        assert k[mask] == count_hypercliques(H, 4)
        degs = harness._decode(int(keys[mask]), base, width)
        assert sum(degs) == 3 * len(H.edges)
        assert math.fsum(d ** 2 for d in degs) ** 0.5 == pytest.approx(hyper_norm(H, 1, 2))


def test_chunking_does_not_change_report():
    a = verify_exhaustive_graphs(5, 3, [0.5, 1, 3], chunk=1 << 10)
    b = verify_exhaustive_graphs(5, 3, [0.5, 1, 3], chunk=77)
    assert a.instances_checked == b.instances_checked == 1024
    assert (a.max_ratio, a.witness) == (b.max_ratio, b.witness)
    assert [(s.p, s.max_ratio, s.witness) for s in a.per_p] == [(s.p, s.max_ratio, s.witness) for s in b.per_p]


def test_exhaustive_limits():
    with pytest.raises(ValueError):
        verify_exhaustive_graphs(8, 3, [1])
    with pytest.raises(ValueError):
        verify_exhaustive_hypergraphs(7, 3, 1, 4, [1])


def test_exhaustive_hypergraphs_small():
    for j in (1, 2):
        rep = verify_exhaustive_hypergraphs(5, 3, j, 4, [0.5, 1, 3])
        assert rep.ok and rep.instances_checked == 1024
        assert rep.max_ratio <= 1 + 1e-9


def test_hyper_witness_is_consistent():
    rep = verify_exhaustive_hypergraphs(5, 3, 1, 4, [1])
    H = hypergraph_from_mask(5, 3, mask_of(rep.witness))
    ratio = count_hypercliques(H, 4) / hyperclique_bound(1, 4, 3, 1, hyper_norm(H, 1, 1)).bound
    assert ratio == pytest.approx(rep.max_ratio)


def test_random_suite():
    rep = verify_random_graphs(12, 200, 0.5, 3, [0.5, 1, 2, 3, 5], seed=7)
    assert rep.ok and rep.instances_checked == 200
    again = verify_random_graphs(12, 200, 0.5, 3, [0.5, 1, 2, 3, 5], seed=7, chunk=33)
    assert (again.max_ratio, again.witness) == (rep.max_ratio, rep.witness)
    full = verify_random_graphs(8, 5, 1.0, 3, [1], seed=0)
    assert full.max_ratio == pytest.approx(1, rel=1e-9)
    empty = verify_random_graphs(8, 5, 0.0, 3, [1], seed=0)
    assert empty.ok and empty.witness is None


def test_fixed_n_suite():
    fixture = construct_disjoint_cliques([4, 4, 4])
    rep = verify_fixed_n(12, 3, 3, 100, seed=1, extra=[fixture])
    assert rep.ok
    assert rep.instances_checked == 101
    assert rep.notes["precondition_met"] >= 1
    assert rep.max_ratio == pytest.approx(1, rel=1e-9)
    # K_12 is tight as well, so a dense random sample may share the top ratio
    assert rep.witness is not None
    fixture_only = verify_fixed_n(12, 3, 3, 0, seed=1, extra=[fixture])
    assert fixture_only.witness == "fixture:000"
    assert fixture_only.max_ratio == pytest.approx(1, rel=1e-9)
    with pytest.raises(ValueError):
        verify_fixed_n(12, 3, 2, 10, seed=1)
    with pytest.raises(ValueError):
        verify_fixed_n(11, 3, 3, 0, seed=1, extra=[fixture])


def test_tightness_examples():
    assert verify_tightness(Construction.parse("clique:6"), 3, 1.5).ratio == pytest.approx(1, rel=1e-9)
    res = verify_tightness(Construction.parse("disjoint:5x3"), 3, 3)
    assert res.k == 5 and res.ratio == pytest.approx(1, rel=1e-9)
    res = verify_tightness(Construction.parse("fixed-n:3x4"), 3, 3)
    assert res.k == 12 and res.ratio == pytest.approx(1, rel=1e-9)


@pytest.mark.parametrize("text,t,p", [
    ("clique:5", 3, 3),
    ("clique:2", 3, 1),
    ("disjoint:4x4", 3, 3),
    ("disjoint:4x3", 3, 1),
    ("fixed-n:3x4", 3, 2),
])
def test_not_tight(text, t, p):
    with pytest.raises(NotTight):
        verify_tightness(Construction.parse(text), t, p)


def test_construction_parse():
    assert Construction.parse("disjoint:7x4") == Construction("disjoint", 4, 7)
    with pytest.raises(ValueError):
        Construction.parse("wheel:5")


@pytest.mark.parametrize("p,t", [(2.5, 3), (3, 3), (12, 3), (5, 4), (3.1, 4), (100, 5)])
def test_proposition9(p, t):
    res = check_proposition9(p, t)
    assert res.ok, res


def test_report_json_round_trip():
    rep = verify_exhaustive_graphs(4, 3, [1, 2])
    rep.notes["extra"] = "x"
    back = VerificationReport.from_json(rep.to_json())
    assert back == rep


def test_merge_associative_and_commutative():
    parts = [harness._exhaustive_chunk("graph", 5, 2, 1, 3, (1.0, 3.0), a, b)
             for a, b in [(0, 300), (300, 700), (700, 1024)]]
    a, b, c = parts
    left = merge_reports(merge_reports(a, b), c)
    right = merge_reports(a, merge_reports(b, c))
    swapped = merge_reports(merge_reports(c, a), b)
    for other in (right, swapped):
        assert other.instances_checked == left.instances_checked
        assert (other.max_ratio, other.witness) == (left.max_ratio, left.witness)
        assert [(s.p, s.max_ratio, s.witness) for s in other.per_p] == \
            [(s.p, s.max_ratio, s.witness) for s in left.per_p]
