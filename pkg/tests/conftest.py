"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's CSR/kernel machinery:
they run on dict adjacency built straight from edge tuples, so they can
disagree with the optimized paths if either side is wrong.
"""

from __future__ import annotations

import heapq
import math
from collections import defaultdict, deque

import numpy as np
import pytest

from citegraph.graph import from_edges


def make_graph(edges, n_sources=None, n_targets=None, year=2000):
    """CitationGraph from (source, target) int tuples with synthetic ids."""
    if n_sources is None:
        n_sources = max(s for s, _ in edges) + 1
    if n_targets is None:
        n_targets = max(t for _, t in edges) + 1
    e_src = np.array([s for s, _ in edges], dtype=np.int32)
    e_tgt = np.array([t for _, t in edges], dtype=np.int32)
    return from_edges(
        tuple(f"s{i}" for i in range(n_sources)),
        tuple(f"t{j}" for j in range(n_targets)),
        e_src,
        e_tgt,
        sampled_year=year,
    )


def random_bipartite_edges(rng, n_sources, n_targets, mean_refs):
    """Random edge list where every source has at least one reference."""
    edges = []
    for s in range(n_sources):
        deg = min(max(1, int(rng.poisson(mean_refs))), n_targets)
        for t in rng.choice(n_targets, size=deg, replace=False):
            edges.append((s, int(t)))
    return sorted(set(edges))


# -- raw bipartite BFS oracle ----------------------------------------------


def raw_bfs(edges, origin_source):
    """Raw edge-step distances over the two-sided union graph.

    Returns {('s'|'t', index): raw steps}; halving is the caller's job.
    """
    adj = defaultdict(list)
    for s, t in edges:
        adj[("s", s)].append(("t", t))
        adj[("t", t)].append(("s", s))
    start = ("s", origin_source)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def exhaustive_halved_distances(edges, n_sources):
    """All-pairs halved source distances via the raw oracle (dict of dicts)."""
    out = {}
    for a in range(n_sources):
        raw = raw_bfs(edges, a)
        row = {}
        for b in range(n_sources):
            r = raw.get(("s", b))
            if r is not None and b != a:
                assert r % 2 == 0, "raw source-to-source path length must be even"
                row[b] = r // 2
        out[a] = row
    return out


def exhaustive_mean_distance(edges, n_sources):
    """Mean halved distance over all reachable unordered source pairs."""
    table = exhaustive_halved_distances(edges, n_sources)
    total = 0
    count = 0
    for a in range(n_sources):
        for b, d in table[a].items():
            if b > a:
                total += d
                count += 1
    return (total / count if count else None), count


# -- weighted projection oracle ---------------------------------------------


def overlap_projection(edges):
    """Materialized co-reference projection: {(a, b): 1/shared} for a < b."""
    by_target = defaultdict(list)
    for s, t in edges:
        by_target[t].append(s)
    shared = defaultdict(int)
    for sources in by_target.values():
        sources = sorted(set(sources))
        for i, a in enumerate(sources):
            for b in sources[i + 1 :]:
                shared[(a, b)] += 1
    return {pair: 1.0 / k for pair, k in shared.items()}


def weighted_oracle_distances(edges, n_sources, origin):
    """Dijkstra on the materialized projection (independent of the lazy path)."""
    adj = defaultdict(list)
    for (a, b), w in overlap_projection(edges).items():
        adj[a].append((b, w))
        adj[b].append((a, w))
    dist = {origin: 0.0}
    heap = [(0.0, origin)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist.get(u, math.inf):
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist.get(v, math.inf):
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def exhaustive_weighted_mean(edges, n_sources):
    total = 0.0
    count = 0
    for a in range(n_sources):
        dist = weighted_oracle_distances(edges, n_sources, a)
        for b, d in dist.items():
            if b > a:
                total += d
                count += 1
    return (total / count if count else None), count


# -- edge clustering oracle ---------------------------------------------------


def clustering_oracle(edges):
    """observed/expected per edge by brute-force triple enumeration."""
    eset = set(edges)
    src_t = defaultdict(list)
    tgt_s = defaultdict(list)
    for s, t in edges:
        src_t[s].append(t)
        tgt_s[t].append(s)
    s_deg = {s: len(ts) for s, ts in src_t.items()}
    t_deg = {t: len(ss) for t, ss in tgt_s.items()}
    m = len(edges)
    out = {}
    for s, t in edges:
        co_sources = [x for x in tgt_s[t] if x != s]
        refs = [y for y in src_t[s] if y != t]
        observed = sum(1 for x in co_sources for y in refs if (x, y) in eset)
        expected = sum(s_deg[x] * t_deg[y] for x in co_sources for y in refs) / m
        out[(s, t)] = (observed, expected)
    return out


# -- inequality oracles -------------------------------------------------------


def gini_mean_abs_difference(values):
    """O(n^2) Gini: mean absolute difference over twice the mean."""
    x = np.asarray(values, dtype=np.float64)
    n = x.size
    total = 0.0
    for i in range(n):
        total += float(np.abs(x[i] - x).sum())
    return total / (2.0 * n * n * x.mean())


def hh_two_draw_oracle(target_categories, own_category=None):
    """Probability two uniform draws (with replacement) share a category.

    ``target_categories`` lists the target category of every citation
    from one source category; passing ``own_category`` first filters to
    cross-field citations (the renormalized variant).
    """
    cats = list(target_categories)
    if own_category is not None:
        cats = [c for c in cats if c != own_category]
    if not cats:
        return None
    same = sum(1 for a in cats for b in cats if a == b)
    return same / (len(cats) ** 2)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(12345))
