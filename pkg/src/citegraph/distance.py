"""Sampled distances between source papers.

Distances are bipartite shortest-path lengths divided by two, so the
minimal distance between two sources is one shared reference.  The BFS
works natively in halved units (one level = target hop + source hop),
which is what makes every reported source-to-source distance an exact
integer: raw paths between sources cannot have odd length in a strictly
bipartite graph.

The estimator draws repeated uniform samples of sources, runs one BFS
per sampled source, and aggregates all unordered pairs inside the
sample.  Unreachable pairs are excluded from the mean and surfaced via
``reachable_fraction``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .graph import CitationGraph
from .parallel import chunk_ranges, map_ordered, thread_budget
from .rng import derive_seed, generator


@dataclass(frozen=True)
class DistanceSummary:
    """Aggregate of one repeated-sampling distance run.

    ``mean_distance`` pools every reachable sampled pair (it equals the
    histogram mean); ``sd_across_repetitions`` is the sample SD of the
    per-repetition means (0.0 with one repetition).  For the unweighted
    engine the histogram keys are integers >= 1; the weighted variant
    produces fractional keys that may lie below 1 (1/k for k shared
    references), so the >=1 floor applies only when ``weighted`` is
    False.
    """

    mean_distance: float | None
    sd_across_repetitions: float
    reachable_fraction: float
    histogram: dict[float, float]
    repetitions: int
    sample_size: int
    master_seed: int
    per_repetition_means: tuple[float, ...]
    weighted: bool = False

    def to_json(self) -> str:
        payload = {
            "mean_distance": self.mean_distance,
            "sd_across_repetitions": self.sd_across_repetitions,
            "reachable_fraction": self.reachable_fraction,
            "repetitions": self.repetitions,
            "sample_size": self.sample_size,
            "master_seed": self.master_seed,
            "per_repetition_means": list(self.per_repetition_means),
            "weighted": self.weighted,
            "histogram": [[d, p] for d, p in sorted(self.histogram.items())],
        }
        return json.dumps(payload, sort_keys=True, indent=2)


@dataclass(frozen=True)
class GaussianFit:
    mu: float
    sigma: float
    degenerate: bool = False


def _bfs_distances(graph: CitationGraph, origin: int) -> np.ndarray:
    dist = np.full(graph.n_sources, -1, dtype=np.int32)
    backend.bfs_halved_fill(
        graph.s_indptr, graph.s_indices, graph.t_indptr, graph.t_indices,
        int(origin), dist,
    )
    return dist


def _dijkstra_distances(graph: CitationGraph, origin: int) -> np.ndarray:
    dist = np.full(graph.n_sources, np.inf, dtype=np.float64)
    backend.overlap_dijkstra_fill(
        graph.s_indptr, graph.s_indices, graph.t_indptr, graph.t_indices,
        int(origin), dist,
    )
    return dist


def pairwise_distance(graph: CitationGraph, source_a: int, source_b: int) -> float | None:
    """Halved distance between two source nodes; None when unreachable."""
    n = graph.n_sources
    for idx in (source_a, source_b):
        if not 0 <= idx < n:
            raise ValueError(f"source index {idx} out of range [0, {n})")
    if source_a == source_b:
        return 0.0
    d = int(_bfs_distances(graph, source_a)[source_b])
    return None if d < 0 else float(d)


def _draw_sample(n_sources: int, sample_size: int, seed: int) -> np.ndarray:
    sel = generator(seed).choice(n_sources, size=sample_size, replace=False)
    sel.sort()
    return sel.astype(np.int32)


def _unweighted_rep(graph, sel, threads):
    """(pair-distance sum, reachable pairs, histogram counts) for one sample."""

    def run_chunk(bounds):
        lo, hi = bounds
        total = 0
        count = 0
        hist = np.zeros(1, dtype=np.int64)
        for p in range(lo, hi):
            dist = _bfs_distances(graph, sel[p])
            d = dist[sel[p + 1 :]]
            d = d[d >= 0]
            if d.size == 0:
                continue
            total += int(d.sum())
            count += int(d.size)
            top = int(d.max())
            if top >= hist.shape[0]:
                hist = np.pad(hist, (0, top + 1 - hist.shape[0]))
            hist += np.bincount(d, minlength=hist.shape[0])
        return total, count, hist

    total = 0
    count = 0
    hist = np.zeros(1, dtype=np.int64)
    for part_total, part_count, part_hist in map_ordered(
        run_chunk, chunk_ranges(len(sel) - 1), threads
    ):
        total += part_total
        count += part_count
        if part_hist.shape[0] > hist.shape[0]:
            hist = np.pad(hist, (0, part_hist.shape[0] - hist.shape[0]))
        hist[: part_hist.shape[0]] += part_hist
    return total, count, hist


def _weighted_rep(graph, sel, threads):
    """Same aggregation on the weighted projection; float sums reduced in
    fixed chunk order."""

    def run_chunk(bounds):
        lo, hi = bounds
        total = 0.0
        count = 0
        hist: dict[float, int] = {}
        for p in range(lo, hi):
            dist = _dijkstra_distances(graph, sel[p])
            d = dist[sel[p + 1 :]]
            d = d[np.isfinite(d)]
            if d.size == 0:
                continue
            total += float(d.sum())
            count += int(d.size)
            values, counts = np.unique(d, return_counts=True)
            for v, c in zip(values.tolist(), counts.tolist()):
                hist[v] = hist.get(v, 0) + c
        return total, count, hist

    total = 0.0
    count = 0
    hist: dict[float, int] = {}
    for part_total, part_count, part_hist in map_ordered(
        run_chunk, chunk_ranges(len(sel) - 1), threads
    ):
        total += part_total
        count += part_count
        for v, c in part_hist.items():
            hist[v] = hist.get(v, 0) + c
    return total, count, hist


def _summarize(per_rep, n_pairs_per_rep, sample_size, repetitions, master_seed, weighted):
    pooled_count = sum(count for _, count, _ in per_rep)
    if weighted:
        pooled_total = math.fsum(total for total, _, _ in per_rep)
    else:
        pooled_total = sum(total for total, _, _ in per_rep)
    hist_counts: dict[float, int] = {}
    for _, _, hist in per_rep:
        if isinstance(hist, dict):
            for v, c in hist.items():
                hist_counts[v] = hist_counts.get(v, 0) + c
        else:
            for d, c in enumerate(hist.tolist()):
                if c:
                    hist_counts[float(d)] = hist_counts.get(float(d), 0) + c
    histogram = (
        {v: c / pooled_count for v, c in sorted(hist_counts.items())}
        if pooled_count
        else {}
    )
    rep_means = tuple(
        (total / count) if count else math.nan for total, count, _ in per_rep
    )
    finite = [m for m in rep_means if not math.isnan(m)]
    if len(finite) >= 2:
        sd = float(np.std(finite, ddof=1))
    else:
        sd = 0.0
    mean = (pooled_total / pooled_count) if pooled_count else None
    if mean is not None and not weighted:
        assert mean >= 1.0, "distinct sources cannot be closer than one co-citation"
    return DistanceSummary(
        mean_distance=mean,
        sd_across_repetitions=sd,
        reachable_fraction=pooled_count / (n_pairs_per_rep * repetitions),
        histogram=histogram,
        repetitions=repetitions,
        sample_size=sample_size,
        master_seed=master_seed,
        per_repetition_means=rep_means,
        weighted=weighted,
    )


def _sampled_summary(graph, sample_size, repetitions, master_seed, threads, weighted):
    n = graph.n_sources
    if sample_size < 2:
        raise ValueError(f"sample_size must be >= 2, got {sample_size}")
    if sample_size > n:
        raise ValueError(f"sample_size {sample_size} exceeds source count {n}")
    if repetitions < 1:
        raise ValueError(f"repetitions must be >= 1, got {repetitions}")
    threads = thread_budget(threads)
    run_rep = _weighted_rep if weighted else _unweighted_rep
    per_rep = []
    for rep in range(repetitions):
        sel = _draw_sample(n, sample_size, derive_seed(master_seed, rep))
        per_rep.append(run_rep(graph, sel, threads))
    n_pairs = sample_size * (sample_size - 1) // 2
    return _summarize(per_rep, n_pairs, sample_size, repetitions, master_seed, weighted)


def sampled_mean_distance(
    graph: CitationGraph,
    sample_size: int = 2000,
    repetitions: int = 30,
    master_seed: int = 0,
    threads: int | None = None,
) -> DistanceSummary:
    """Estimate the mean halved distance from repeated uniform samples.

    Each repetition draws ``sample_size`` sources without replacement
    (2000 gives 1,999,000 unordered pairs), runs one BFS per sampled
    source and aggregates all pairs within the sample.
    """
    return _sampled_summary(graph, sample_size, repetitions, master_seed, threads, False)


def weighted_distance_summary(
    graph: CitationGraph,
    sample_size: int = 2000,
    repetitions: int = 30,
    master_seed: int = 0,
    threads: int | None = None,
) -> DistanceSummary:
    """Sampled shortest weighted paths on the co-reference projection.

    Sources sharing k references are adjacent at weight 1/k, so heavily
    overlapping reference lists pull papers closer; this is the weighted
    companion of :func:`sampled_mean_distance` with identical sampling
    and aggregation.
    """
    return _sampled_summary(graph, sample_size, repetitions, master_seed, threads, True)


def fit_gaussian(histogram: dict[float, float]) -> GaussianFit:
    """Method-of-moments normal fit to a distance histogram.

    mu is the histogram mean and sigma its standard deviation; a
    histogram carrying fewer than two distinct values has no spread and
    is returned with ``degenerate=True``.
    """
    if not histogram:
        raise ValueError("cannot fit a gaussian to an empty histogram")
    values = np.array(list(histogram.keys()), dtype=np.float64)
    probs = np.array(list(histogram.values()), dtype=np.float64)
    weight = probs.sum()
    mu = float((values * probs).sum() / weight)
    var = float((probs * (values - mu) ** 2).sum() / weight)
    distinct = int(np.count_nonzero(probs > 0))
    return GaussianFit(mu=mu, sigma=math.sqrt(var), degenerate=distinct < 2)
