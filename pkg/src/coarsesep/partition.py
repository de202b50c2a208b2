"""Connected partitions: low-diameter random clustering and star partitions.

`sparse_partition` builds connected clusters of small strong diameter with
exponentially shifted BFS (each vertex draws a capped exponential head
start; clusters are the resulting Voronoi cells).  The cap guarantees the
diameter contract unconditionally; how well balls of radius 2 spread over
few clusters is measured, not enforced.

`star_partition` peels low-degree vertices into singletons and covers the
dense residual with a greedy dominating set, giving radius-1 clusters.
"""

from __future__ import annotations

import heapq
import math
import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable

from .graph import (GraphError, QuotientGraph, WeightedGraph,
                    connected_components, quotient)


@dataclass(frozen=True)
class ConnectedPartition:
    """Partition of V(G) into connected clusters with designated centers.

    `strong_diameter` is the measured max over clusters of the diameter of
    the induced subgraph; `centers[i]` minimizes the eccentricity inside
    cluster i (ties to the smallest id).
    """

    clusters: tuple[tuple[int, ...], ...]
    centers: tuple[int, ...]
    strong_diameter: int

    def cluster_of_map(self, n: int) -> list[int]:
        out = [-1] * n
        for i, cl in enumerate(self.clusters):
            for v in cl:
                out[v] = i
        return out

    def validate(self, g: WeightedGraph) -> None:
        seen = [False] * g.n
        for i, cl in enumerate(self.clusters):
            if not cl:
                raise GraphError(f"cluster {i} is empty")
            for v in cl:
                if seen[v]:
                    raise GraphError(f"vertex {v} in two clusters")
                seen[v] = True
            if len(connected_components(g, cl)) != 1:
                raise GraphError(f"cluster {i} is not connected")
            if self.centers[i] not in cl:
                raise GraphError(f"center of cluster {i} lies outside it")
        if not all(seen):
            raise GraphError("partition does not cover every vertex")


def _cluster_metrics(g: WeightedGraph, cluster: tuple[int, ...]) -> tuple[int, int]:
    """(strong diameter, eccentricity-minimizing center) of G[cluster]."""
    members = set(cluster)
    diam = 0
    best_ecc = None
    center = cluster[0]
    for s in cluster:
        dist = {s: 0}
        q = deque([s])
        ecc = 0
        while q:
            u = q.popleft()
            for v in g.adj[u]:
                if v in members and v not in dist:
                    dist[v] = dist[u] + 1
                    ecc = max(ecc, dist[v])
                    q.append(v)
        diam = max(diam, ecc)
        if best_ecc is None or ecc < best_ecc:
            best_ecc = ecc
            center = s
    return diam, center


def _split_to_radius(g: WeightedGraph, cluster: Iterable[int],
                     radius: int) -> list[list[int]]:
    """Split a vertex set into connected pieces of BFS radius <= radius."""
    remaining = set(cluster)
    pieces = []
    while remaining:
        seed = min(remaining)
        piece = {seed}
        frontier = [seed]
        for _ in range(radius):
            nxt = []
            for u in frontier:
                for v in g.adj[u]:
                    if v in remaining and v not in piece:
                        piece.add(v)
                        nxt.append(v)
            if not nxt:
                break
            frontier = nxt
        remaining -= piece
        pieces.append(sorted(piece))
    return pieces


def sparse_partition(g: WeightedGraph, eps: float,
                     rng: random.Random | None = None) -> ConnectedPartition:
    """Connected partition with strong diameter at most ceil(32/eps).

    Every vertex draws an Exp(eps/8) head start capped at 16/eps and the
    clusters are the Voronoi cells of the shifted BFS (ties by vertex id).
    The cap bounds each cell's tree radius by 16/eps, so the diameter
    contract holds by construction; a layer re-split backs it up.
    """
    if not (0 < eps <= 1):
        raise GraphError("eps must lie in (0, 1]")
    if rng is None:
        rng = random.Random(0)
    bound = math.ceil(32.0 / eps)
    cap = 16.0 / eps
    n = g.n
    if n == 0:
        return ConnectedPartition((), (), 0)
    beta = eps / 8.0
    shift = [min(rng.expovariate(beta), cap) for _ in range(n)]
    # Multi-source Dijkstra on keys dist(u, c) - shift[c]; owner follows the
    # relaxing neighbor, so every cell is a tree and hence connected.
    owner = [-1] * n
    key = [0.0] * n
    heap = [(-shift[v], v, v) for v in range(n)]
    heapq.heapify(heap)
    assigned = 0
    while heap and assigned < n:
        k, v, src = heapq.heappop(heap)
        if owner[v] != -1:
            continue
        owner[v] = owner[src] if owner[src] != -1 else src
        key[v] = k
        assigned += 1
        for u in g.adj[v]:
            if owner[u] == -1:
                heapq.heappush(heap, (k + 1.0, u, v))
    by_owner: dict[int, list[int]] = {}
    for v in range(n):
        by_owner.setdefault(owner[v], []).append(v)
    raw = [sorted(vs) for _, vs in sorted(by_owner.items())]
    clusters: list[list[int]] = []
    for cl in raw:
        diam, _ = _cluster_metrics(g, tuple(cl))
        if diam <= bound:
            clusters.append(cl)
        else:  # pragma: no cover - unreachable with the cap, kept as a guard
            clusters.extend(_split_to_radius(g, cl, int(cap)))
    metrics = [_cluster_metrics(g, tuple(cl)) for cl in clusters]
    strong = max((d for d, _ in metrics), default=0)
    if strong > bound:  # pragma: no cover - contract guard
        raise GraphError("strong diameter bound violated after re-split")
    return ConnectedPartition(tuple(tuple(cl) for cl in clusters),
                              tuple(c for _, c in metrics), strong)


def max_ball2_clusters(g: WeightedGraph, part: ConnectedPartition) -> int:
    """Measured sparsity: max over u of #clusters meeting the radius-2 ball."""
    if g.n == 0:
        return 0
    cluster_of = part.cluster_of_map(g.n)
    best = 0
    for u in range(g.n):
        seen = {u}
        hit = {cluster_of[u]}
        frontier = [u]
        for _ in range(2):
            nxt = []
            for x in frontier:
                for y in g.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        hit.add(cluster_of[y])
                        nxt.append(y)
            frontier = nxt
        best = max(best, len(hit))
    return best


@dataclass(frozen=True)
class ClusterClosePairs:
    """Ordered pairs of clusters at quotient-graph distance <= 2.

    Symmetric and reflexive by construction; `neighbors[i]` lists every j
    with (i, j) in the set, including i itself.
    """

    pairs: frozenset[tuple[int, int]]
    neighbors: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def close(self, i: int, j: int) -> bool:
        return (i, j) in self.pairs


def close_cluster_pairs(q: QuotientGraph) -> ClusterClosePairs:
    """All ordered cluster pairs within distance 2 of each other.

    Distance is measured in the quotient graph itself (two clusters one
    intermediate cluster apart count as close no matter how wide that
    intermediate cluster is), which is the relation the rounding step's
    spread check needs.
    """
    qg = q.graph
    k = qg.n
    pairs: set[tuple[int, int]] = set()
    for i in range(k):
        pairs.add((i, i))
        for j in qg.adj[i]:
            pairs.add((i, j))
            for l in qg.adj[j]:
                if l != i:
                    pairs.add((i, l))
    nbrs: list[list[int]] = [[] for _ in range(k)]
    for i, j in sorted(pairs):
        nbrs[i].append(j)
    return ClusterClosePairs(frozenset(pairs),
                             tuple(tuple(x) for x in nbrs))


# ---------------------------------------------------------------------------
# Star partition (radius-1 clusters, low quotient edge count)


def peel_threshold(n: int) -> int:
    """Degree threshold ceil(n^(1/3) * ln(n)^(2/3)); 1 for n < 3."""
    if n < 3:
        return 1
    return math.ceil(n ** (1.0 / 3.0) * math.log(n) ** (2.0 / 3.0))


def greedy_dominating_set(g: WeightedGraph, vertices: Iterable[int]) -> list[int]:
    """Greedy dominating set of the induced subgraph on `vertices`.

    Repeatedly picks the vertex covering the most uncovered closed
    neighborhoods (ties to the smallest id).
    """
    vs = sorted(set(vertices))
    inside = set(vs)
    uncovered = set(vs)
    dominators: list[int] = []
    while uncovered:
        best_v = -1
        best_gain = -1
        for v in vs:
            gain = (1 if v in uncovered else 0)
            gain += sum(1 for u in g.adj[v] if u in inside and u in uncovered)
            if gain > best_gain:
                best_gain = gain
                best_v = v
        dominators.append(best_v)
        if best_v in uncovered:
            uncovered.discard(best_v)
        for u in g.adj[best_v]:
            if u in inside:
                uncovered.discard(u)
    return dominators


def star_partition(g: WeightedGraph) -> tuple[ConnectedPartition, QuotientGraph]:
    """Radius-1 connected partition: peeled singletons plus dominator stars.

    Peels a maximal sequence of vertices whose remaining degree stays at or
    below the threshold k = ceil(n^(1/3) ln(n)^(2/3)); each peeled vertex
    becomes a singleton cluster.  The residual graph has min degree > k, so
    its greedy dominating set has size O(n log k / k); every residual vertex
    joins an adjacent dominator's star.
    """
    n = g.n
    if n == 0:
        return ConnectedPartition((), (), 0), quotient(g, [])
    k = peel_threshold(n)
    deg = [g.degree(v) for v in range(n)]
    peeled = [False] * n
    heap = [v for v in range(n) if deg[v] <= k]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        v = heapq.heappop(heap)
        if peeled[v] or deg[v] > k:
            continue
        peeled[v] = True
        order.append(v)
        for u in g.adj[v]:
            if not peeled[u]:
                deg[u] -= 1
                if deg[u] <= k:
                    heapq.heappush(heap, u)
    residual = [v for v in range(n) if not peeled[v]]
    clusters: list[list[int]] = [[v] for v in order]
    centers: list[int] = list(order)
    if residual:
        doms = greedy_dominating_set(g, residual)
        n_res = len(residual)
        limit = n_res * (1.0 + math.log(k + 2)) / (k + 2) + 1.0
        if len(doms) > limit:  # pragma: no cover - theory guard
            raise GraphError(
                f"greedy dominating set of size {len(doms)} exceeds the "
                f"bound {limit:.1f} on {n_res} residual vertices")
        dom_set = set(doms)
        star_of: dict[int, list[int]] = {d: [d] for d in doms}
        inside = set(residual)
        for v in residual:
            if v in dom_set:
                continue
            home = next(u for u in g.adj[v] if u in dom_set and u in inside)
            star_of[home].append(v)
        for d in doms:
            clusters.append(sorted(star_of[d]))
            centers.append(d)
    pairs = sorted(zip(clusters, centers))
    clusters = [c for c, _ in pairs]
    centers = [c for _, c in pairs]
    strong = 0
    for cl in clusters:
        if len(cl) > 1:
            d, _ = _cluster_metrics(g, tuple(cl))
            strong = max(strong, d)
    part = ConnectedPartition(tuple(tuple(cl) for cl in clusters),
                              tuple(centers), strong)
    part.validate(g)
    return part, quotient(g, part.clusters)
