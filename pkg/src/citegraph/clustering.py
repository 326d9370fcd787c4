"""Edge clustering: how embedded each citation is.

For a focal edge (s, t), ``observed`` counts the citations running
between the two neighborhoods N(t)\\{s} and N(s)\\{t}; ``expected`` is
the degree-proportional random expectation sum(deg(s') * deg(t')) / M
over the same index sets.  The coefficient is the natural log of
observed/expected (base affects scale only, never ordering) and is
undefined when observed is zero; undefined edges are excluded from
means but always counted.  Focal endpoints are excluded from their own
neighborhoods so an edge never supports itself.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import ConfigurationError
from .graph import CitationGraph

FILTERS = ("all", "same-category", "cross-category")


@dataclass(frozen=True)
class EdgeClusteringRecord:
    source_index: int
    target_index: int
    observed: int
    expected: float
    coefficient: float | None  # None when observed == 0


@dataclass(frozen=True)
class ClusteringDistribution:
    edge_filter: str
    n_edges: int
    defined_count: int
    undefined_count: int
    mean: float | None
    q1: float | None
    median: float | None
    q3: float | None

    @property
    def undefined_fraction(self) -> float:
        return self.undefined_count / self.n_edges if self.n_edges else 0.0

    def to_json(self) -> str:
        payload = {
            "edge_filter": self.edge_filter,
            "n_edges": self.n_edges,
            "defined_count": self.defined_count,
            "undefined_count": self.undefined_count,
            "undefined_fraction": self.undefined_fraction,
            "mean": self.mean,
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
        }
        return json.dumps(payload, sort_keys=True, indent=2)


def _expected_per_edge(graph: CitationGraph) -> np.ndarray:
    """Degree-expected neighborhood citations for every edge, CSR order."""
    s_deg = graph.source_degrees().astype(np.float64)
    t_deg = graph.target_degrees().astype(np.float64)
    e_src, e_tgt = graph.edge_arrays()
    # per-source sum of its targets' degrees, per-target sum of its sources'
    sum_tdeg = np.zeros(graph.n_sources)
    np.add.at(sum_tdeg, e_src, t_deg[e_tgt])
    sum_sdeg = np.zeros(graph.n_targets)
    np.add.at(sum_sdeg, e_tgt, s_deg[e_src])
    side_s = sum_sdeg[e_tgt] - s_deg[e_src]
    side_t = sum_tdeg[e_src] - t_deg[e_tgt]
    return side_s * side_t / graph.n_edges


def edge_clustering(graph: CitationGraph, edge: tuple[int, int]) -> EdgeClusteringRecord:
    """Clustering record for one (source index, target index) edge."""
    s, t = edge
    if not (0 <= s < graph.n_sources and 0 <= t < graph.n_targets):
        raise ValueError(f"edge ({s}, {t}) indexes out of range")
    if not graph.has_edge(s, t):
        raise ValueError(f"edge ({s}, {t}) not present in graph")
    refs = set(graph.targets_of(s).tolist())
    refs.discard(t)
    observed = 0
    exp_s = 0.0
    s_deg = graph.source_degrees()
    t_deg = graph.target_degrees()
    for s2 in graph.sources_of(t).tolist():
        if s2 == s:
            continue
        exp_s += float(s_deg[s2])
        observed += sum(1 for t2 in graph.targets_of(s2).tolist() if t2 in refs)
    exp_t = float(sum(t_deg[t2] for t2 in refs))
    expected = exp_s * exp_t / graph.n_edges
    coefficient = math.log(observed / expected) if observed >= 1 else None
    return EdgeClusteringRecord(
        source_index=int(s),
        target_index=int(t),
        observed=observed,
        expected=expected,
        coefficient=coefficient,
    )


def edge_clustering_table(graph: CitationGraph):
    """(e_src, e_tgt, observed, expected, coefficient) for all edges.

    Coefficient is NaN where undefined.  Edge order is CSR order.
    """
    observed = np.zeros(graph.n_edges, dtype=np.int64)
    backend.edge_clustering_observed(
        graph.s_indptr, graph.s_indices, graph.t_indptr, graph.t_indices, observed
    )
    expected = _expected_per_edge(graph)
    with np.errstate(divide="ignore", invalid="ignore"):
        coeff = np.where(observed >= 1, np.log(observed / expected), np.nan)
    e_src, e_tgt = graph.edge_arrays()
    return e_src, e_tgt, observed, expected, coeff


def edge_category_relations(graph: CitationGraph, categories) -> np.ndarray:
    """Per-edge label: 'same', 'cross', or 'unclassified' endpoint."""
    src_cat = [categories.primary(pid) for pid in graph.source_ids]
    tgt_cat = [categories.primary(pid) for pid in graph.target_ids]
    e_src, e_tgt = graph.edge_arrays()
    out = np.empty(graph.n_edges, dtype=object)
    for e in range(graph.n_edges):
        a = src_cat[e_src[e]]
        b = tgt_cat[e_tgt[e]]
        if a is None or b is None:
            out[e] = "unclassified"
        elif a == b:
            out[e] = "same"
        else:
            out[e] = "cross"
    return out


def clustering_distribution(
    graph: CitationGraph, edge_filter: str = "all", categories=None
) -> ClusteringDistribution:
    """Distribution summary of the coefficient over a filtered edge set.

    ``same-category`` keeps edges whose endpoints share their primary
    category, ``cross-category`` those whose classified endpoints
    differ; both require a category table.  Edges with an unclassified
    endpoint only ever appear under ``all``.
    """
    if edge_filter not in FILTERS:
        raise ValueError(f"edge_filter must be one of {FILTERS}, got {edge_filter!r}")
    _, _, observed, _, coeff = edge_clustering_table(graph)
    if edge_filter == "all":
        mask = np.ones(graph.n_edges, dtype=bool)
    else:
        if categories is None:
            raise ConfigurationError(f"filter {edge_filter!r} requires a category table")
        relation = edge_category_relations(graph, categories)
        wanted = "same" if edge_filter == "same-category" else "cross"
        mask = relation == wanted
    values = coeff[mask]
    defined = values[~np.isnan(values)]
    n_edges = int(mask.sum())
    if defined.size:
        q1, median, q3 = (float(q) for q in np.percentile(defined, [25, 50, 75]))
        mean = float(defined.mean())
    else:
        q1 = median = q3 = mean = None
    return ClusteringDistribution(
        edge_filter=edge_filter,
        n_edges=n_edges,
        defined_count=int(defined.size),
        undefined_count=n_edges - int(defined.size),
        mean=mean,
        q1=q1,
        median=median,
        q3=q3,
    )
