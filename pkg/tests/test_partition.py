import math
import random

import pytest

from coarsesep import (
    GraphError,
    WeightedGraph,
    close_cluster_pairs,
    greedy_dominating_set,
    max_ball2_clusters,
    peel_threshold,
    quotient,
    sparse_partition,
    star_partition,
)
from coarsesep.generators import (
    complete_graph,
    cycle_graph,
    gnp_graph,
    grid_graph,
    path_graph,
    random_regular_graph,
)


# ---------------------------------------------------------------------------
# Low-diameter random partitions


def test_sparse_partition_contract_on_grid():
    g = grid_graph(20)
    for seed in range(3):
        part = sparse_partition(g, 1.0, random.Random(seed))
        part.validate(g)
        assert part.strong_diameter <= 32


def test_sparse_partition_diameter_scales_with_eps():
    g = path_graph(600)
    for eps in (0.25, 0.5, 1.0):
        part = sparse_partition(g, eps, random.Random(1))
        part.validate(g)
        assert part.strong_diameter <= math.ceil(32 / eps)


def test_sparse_partition_deterministic_for_seed():
    g = gnp_graph(120, 0.05, seed=4)
    a = sparse_partition(g, 0.5, random.Random(9))
    b = sparse_partition(g, 0.5, random.Random(9))
    assert a.clusters == b.clusters
    assert a.centers == b.centers


def test_sparse_partition_rejects_bad_eps():
    g = path_graph(4)
    for eps in (0.0, -1.0, 1.5):
        with pytest.raises(GraphError):
            sparse_partition(g, eps, random.Random(0))


def test_sparse_partition_singletons_and_empty():
    part = sparse_partition(WeightedGraph(0, []), 1.0, random.Random(0))
    assert part.clusters == ()
    part = sparse_partition(WeightedGraph(3, []), 1.0, random.Random(0))
    part.validate(WeightedGraph(3, []))
    assert len(part.clusters) == 3


def test_max_ball2_clusters_is_measured_not_assumed():
    g = grid_graph(15)
    part = sparse_partition(g, 1.0, random.Random(2))
    k = max_ball2_clusters(g, part)
    # a radius-2 ball holds at most 13 vertices, so 13 bounds the measure
    assert 1 <= k <= 13


# ---------------------------------------------------------------------------
# Close cluster pairs (quotient distance <= 2)


def test_close_pairs_path_singletons():
    g = path_graph(9)
    q = quotient(g, [(i,) for i in range(9)])
    close = close_cluster_pairs(q)
    # 9 + 2*8 + 2*7 ordered pairs within two hops on a 9-path
    assert len(close) == 39
    assert close.close(0, 2) and close.close(2, 0)
    assert not close.close(0, 3)


def test_close_pairs_uses_quotient_distance():
    # two small clusters bridged by one wide cluster: they are two hops
    # apart in the quotient and hence close, despite host distance 10
    g = path_graph(13)
    q = quotient(g, [(0, 1), tuple(range(2, 11)), (11, 12)])
    close = close_cluster_pairs(q)
    assert close.close(0, 2)
    assert len(close) == 9


def test_close_pairs_cycle_of_clusters():
    g = cycle_graph(6)
    q = quotient(g, [(0, 1), (2, 3), (4, 5)])
    close = close_cluster_pairs(q)
    assert len(close) == 9  # complete relation on three clusters


def test_close_pairs_disconnected_quotient():
    g = WeightedGraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    q = quotient(g, [(0, 1, 2), (3, 4, 5)])
    close = close_cluster_pairs(q)
    assert len(close) == 2  # only the two reflexive pairs
    assert not close.close(0, 1)


def test_close_pairs_neighbors_are_sorted_rows():
    g = path_graph(5)
    q = quotient(g, [(i,) for i in range(5)])
    close = close_cluster_pairs(q)
    assert close.neighbors[0] == (0, 1, 2)
    assert close.neighbors[2] == (0, 1, 2, 3, 4)


# ---------------------------------------------------------------------------
# Star partitions


def test_peel_threshold_values():
    assert peel_threshold(2) == 1
    assert peel_threshold(100) == 13
    assert peel_threshold(1000) == 37


def test_greedy_dominating_set_covers():
    g = cycle_graph(12)
    doms = greedy_dominating_set(g, range(12))
    covered = set()
    for d in doms:
        covered.add(d)
        covered.update(g.adj[d])
    assert covered == set(range(12))
    assert len(doms) <= 4


def test_star_partition_clusters_are_stars():
    for g in (gnp_graph(80, 0.15, seed=3), complete_graph(30),
              random_regular_graph(64, 3, 5)):
        part, q = star_partition(g)
        part.validate(g)
        for cl, center in zip(part.clusters, part.centers):
            for v in cl:
                assert v == center or g.has_edge(v, center)
        assert q.graph.n == len(part.clusters)


def test_star_partition_dense_graph_uses_dominators():
    # all degrees sit far above the peel threshold, so no vertex peels and
    # one dominator star swallows the whole clique
    part, q = star_partition(complete_graph(50))
    assert len(part.clusters) == 1
    assert q.graph.n == 1


def test_star_partition_sparse_graph_peels_everything():
    g = cycle_graph(40)  # degree 2 <= threshold, peels to singletons
    part, q = star_partition(g)
    assert len(part.clusters) == 40
    assert q.graph.m == g.m


def test_star_partition_star_host():
    # leaves peel first; once enough are gone the hub peels too
    g = WeightedGraph(100, [(0, i) for i in range(1, 100)])
    part, _ = star_partition(g)
    part.validate(g)
    assert all(len(cl) == 1 for cl in part.clusters)


def test_star_partition_empty_graph():
    part, q = star_partition(WeightedGraph(0, []))
    assert part.clusters == ()
    assert q.graph.n == 0
