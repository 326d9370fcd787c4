"""Pure-python (numpy) kernels.

Fallback implementations of the hot loops, selected by
:mod:`citegraph.backend` when the compiled extension is unavailable or
disabled.  Semantics are identical to the compiled kernels, including
random streams: the swap kernel consumes the same splitmix64 draws, so
backend choice never changes any result, only speed.

Edge ids throughout are positions in the forward CSR arrays.
"""

from __future__ import annotations

import heapq

import numpy as np

from .rng import SplitMix64


def _gather(indptr, indices, nodes):
    """Concatenated CSR rows for ``nodes`` (duplicates preserved)."""
    starts = indptr[nodes]
    counts = indptr[nodes + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return indices[:0]
    offsets = np.concatenate(([0], np.cumsum(counts)[:-1]))
    pos = np.repeat(starts - offsets, counts) + np.arange(total, dtype=np.int64)
    return indices[pos]


def bfs_halved_fill(s_indptr, s_indices, t_indptr, t_indices, origin, dist):
    """Level BFS from one source, writing halved distances into ``dist``.

    ``dist`` is int32 of length S prefilled with -1.  Levels alternate
    sides, so one level equals two raw bipartite steps: distance 1 is a
    co-citation.
    """
    n_targets = t_indptr.shape[0] - 1
    t_seen = np.zeros(n_targets, dtype=bool)
    frontier = np.array([origin], dtype=np.int32)
    dist[origin] = 0
    level = 0
    while frontier.size:
        tg = np.unique(_gather(s_indptr, s_indices, frontier))
        tg = tg[~t_seen[tg]]
        if tg.size == 0:
            return
        t_seen[tg] = True
        sg = np.unique(_gather(t_indptr, t_indices, tg))
        new = sg[dist[sg] < 0]
        level += 1
        dist[new] = level
        frontier = new


def overlap_dijkstra_fill(s_indptr, s_indices, t_indptr, t_indices, origin, dist):
    """Shortest weighted paths over the implicit co-reference projection.

    Two sources sharing k targets are adjacent with weight 1/k.  The
    projection is traversed lazily (targets of the popped node, then
    their sources) because materializing it is quadratically dense
    around high-degree targets.  ``dist`` is float64 of length S
    prefilled with +inf.
    """
    dist[origin] = 0.0
    done = np.zeros(dist.shape[0], dtype=bool)
    heap = [(0.0, int(origin))]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u] or d > dist[u]:
            continue
        done[u] = True
        co = _gather(t_indptr, t_indices, _gather(s_indptr, s_indices, np.array([u])))
        if co.size == 0:
            continue
        nbrs, shared = np.unique(co, return_counts=True)
        for v, k in zip(nbrs.tolist(), shared.tolist()):
            if v == u or done[v]:
                continue
            nd = d + 1.0 / k
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))


def double_edge_swap(e_src, e_tgt, n_targets, n_attempts, seed):
    """Degree-preserving rewiring via attempted double-edge swaps.

    Modifies the parallel edge arrays in place and returns the number of
    accepted swaps.  Every attempt consumes exactly two RNG draws, which
    keeps the compiled and pure kernels in lockstep.  Swaps that would
    duplicate an existing edge, and no-op picks (same edge, shared
    endpoint), are rejected.
    """
    rng = SplitMix64(seed)
    m = int(e_src.shape[0])
    n_targets = int(n_targets)
    edges = {int(s) * n_targets + int(t) for s, t in zip(e_src, e_tgt)}
    accepted = 0
    for _ in range(int(n_attempts)):
        i = rng.below(m)
        j = rng.below(m)
        if i == j:
            continue
        s1, t1 = int(e_src[i]), int(e_tgt[i])
        s2, t2 = int(e_src[j]), int(e_tgt[j])
        if s1 == s2 or t1 == t2:
            continue
        k1 = s1 * n_targets + t2
        k2 = s2 * n_targets + t1
        if k1 in edges or k2 in edges:
            continue
        edges.remove(s1 * n_targets + t1)
        edges.remove(s2 * n_targets + t2)
        edges.add(k1)
        edges.add(k2)
        e_tgt[i] = t2
        e_tgt[j] = t1
        accepted += 1
    return accepted


def edge_clustering_observed(s_indptr, s_indices, t_indptr, t_indices, observed):
    """Citations between the two neighborhoods of every edge.

    For edge (s, t) at CSR position e: count edges (s', t') with
    s' citing t (s' != s) and t' cited by s (t' != t).  ``observed`` is
    int64 of length M, filled in CSR order.
    """
    n_targets = t_indptr.shape[0] - 1
    tmark = np.zeros(n_targets, dtype=bool)
    n_sources = s_indptr.shape[0] - 1
    for s in range(n_sources):
        lo, hi = int(s_indptr[s]), int(s_indptr[s + 1])
        row = s_indices[lo:hi]
        tmark[row] = True
        for e in range(lo, hi):
            t = s_indices[e]
            co = t_indices[t_indptr[t] : t_indptr[t + 1]]
            others = co[co != s]
            if others.size:
                hit = _gather(s_indptr, s_indices, others)
                # every co-citing source hits t itself exactly once
                observed[e] = int(np.count_nonzero(tmark[hit])) - others.size
            else:
                observed[e] = 0
        tmark[row] = False
