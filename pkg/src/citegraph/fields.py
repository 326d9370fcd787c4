"""Subdiscipline-level analytics.

A paper may carry several category labels; the first-listed one is
treated as primary and used for every assignment here, because whole
counting across multiple categories would break row normalization.
Papers without labels fall into an explicit "unclassified" row/column
so every citation is accounted for; that bucket is excluded from the
concentration summaries by default.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .distance import _bfs_distances
from .errors import ConfigurationError
from .graph import CitationGraph
from .parallel import map_ordered, thread_budget
from .rng import derive_seed, generator

UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class CategoryTable:
    """paper_id -> ordered category labels, plus the label universe."""

    assignments: Mapping[str, tuple[str, ...]]
    universe: tuple[str, ...]

    def __post_init__(self):
        known = set(self.universe)
        for pid, labels in self.assignments.items():
            missing = [lab for lab in labels if lab not in known]
            if missing:
                raise ConfigurationError(
                    f"paper {pid!r} carries labels outside the universe: {missing}"
                )

    @classmethod
    def from_papers(cls, papers, universe=None) -> "CategoryTable":
        """Build from paper records; universe defaults to the sorted labels seen."""
        assignments = {p.paper_id: p.categories for p in papers if p.categories}
        if universe is None:
            universe = tuple(sorted({lab for labs in assignments.values() for lab in labs}))
        else:
            universe = tuple(universe)
        return cls(assignments=assignments, universe=universe)

    def primary(self, paper_id: str) -> str | None:
        labels = self.assignments.get(paper_id)
        return labels[0] if labels else None


def load_universe(path) -> tuple[str, ...]:
    """Fixed category universe, one label per line, '#' comments allowed."""
    labels = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            label = raw.strip()
            if label and not label.startswith("#"):
                labels.append(label)
    return tuple(labels)


@dataclass(frozen=True)
class FieldMatrix:
    """Square-ish labeled matrix of citation shares or mean distances."""

    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    values: np.ndarray  # float64; NaN marks an empty cell
    kind: str  # "citation_share_pct" | "citation_count" | "mean_distance"

    def __post_init__(self):
        self.values.setflags(write=False)

    def cell(self, row: str, col: str) -> float:
        return float(self.values[self.row_labels.index(row), self.col_labels.index(col)])

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow([self.kind, *self.col_labels])
            for i, label in enumerate(self.row_labels):
                writer.writerow(
                    [label]
                    + ["" if math.isnan(v) else repr(v) for v in self.values[i].tolist()]
                )

    @classmethod
    def from_csv(cls, path) -> "FieldMatrix":
        with open(path, encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
        if not rows:
            raise ConfigurationError(f"{path}: empty matrix file")
        kind = rows[0][0]
        col_labels = tuple(rows[0][1:])
        row_labels = tuple(r[0] for r in rows[1:])
        values = np.array(
            [[float(v) if v else math.nan for v in r[1:]] for r in rows[1:]],
            dtype=np.float64,
        ).reshape(len(row_labels), len(col_labels))
        return cls(row_labels=row_labels, col_labels=col_labels, values=values, kind=kind)


def _category_codes(ids, categories: CategoryTable, labels):
    """Dense label index per paper id; unclassified gets the last code."""
    index = {label: i for i, label in enumerate(labels)}
    codes = np.empty(len(ids), dtype=np.int32)
    for i, pid in enumerate(ids):
        primary = categories.primary(pid)
        codes[i] = index[primary if primary is not None else UNCLASSIFIED]
    return codes


def _labels_with_unclassified(categories: CategoryTable) -> tuple[str, ...]:
    if UNCLASSIFIED in categories.universe:
        raise ConfigurationError(
            f"category label {UNCLASSIFIED!r} is reserved for unlabeled papers"
        )
    return (*categories.universe, UNCLASSIFIED)


def citation_counts(graph: CitationGraph, categories: CategoryTable) -> FieldMatrix:
    """Citation counts from source categories (rows) to target categories."""
    if not categories.universe:
        raise ConfigurationError("category universe is empty")
    labels = _labels_with_unclassified(categories)
    src_codes = _category_codes(graph.source_ids, categories, labels)
    tgt_codes = _category_codes(graph.target_ids, categories, labels)
    e_src, e_tgt = graph.edge_arrays()
    counts = np.zeros((len(labels), len(labels)), dtype=np.float64)
    np.add.at(counts, (src_codes[e_src], tgt_codes[e_tgt]), 1.0)
    return FieldMatrix(row_labels=labels, col_labels=labels, values=counts, kind="citation_count")


def citation_matrix(graph: CitationGraph, categories: CategoryTable) -> FieldMatrix:
    """Row-normalized shares: cell (i, j) is the percentage of category-i
    sources' citations that point at category-j targets.

    Rows of categories that emit no citations are all-NaN rather than
    silently zero.
    """
    counts = citation_counts(graph, categories)
    totals = counts.values.sum(axis=1, keepdims=True)
    with np.errstate(invalid="ignore", divide="ignore"):
        shares = np.where(totals > 0, 100.0 * counts.values / totals, math.nan)
    return FieldMatrix(
        row_labels=counts.row_labels,
        col_labels=counts.col_labels,
        values=shares,
        kind="citation_share_pct",
    )


@dataclass(frozen=True)
class WithinShareSummary:
    categories: tuple[str, ...]
    shares: tuple[float, ...]  # diagonal of the share matrix, in percent
    mean: float
    median: float
    q1: float
    q3: float
    minimum: float
    maximum: float

    def to_json(self) -> str:
        payload = {
            "categories": list(self.categories),
            "shares": list(self.shares),
            "mean": self.mean,
            "median": self.median,
            "q1": self.q1,
            "q3": self.q3,
            "min": self.minimum,
            "max": self.maximum,
        }
        return json.dumps(payload, sort_keys=True, indent=2)


def within_field_share_distribution(
    matrix: FieldMatrix, include_unclassified: bool = False
) -> WithinShareSummary:
    """Diagonal (same-category) shares plus box-plot statistics."""
    cats, shares = [], []
    for i, label in enumerate(matrix.row_labels):
        if label == UNCLASSIFIED and not include_unclassified:
            continue
        if label not in matrix.col_labels:
            continue
        value = matrix.values[i, matrix.col_labels.index(label)]
        if not math.isnan(value):
            cats.append(label)
            shares.append(float(value))
    if not shares:
        raise ConfigurationError("no categories with citations; within-share undefined")
    arr = np.array(shares)
    q1, median, q3 = (float(q) for q in np.percentile(arr, [25, 50, 75]))
    return WithinShareSummary(
        categories=tuple(cats),
        shares=tuple(shares),
        mean=float(arr.mean()),
        median=median,
        q1=q1,
        q3=q3,
        minimum=float(arr.min()),
        maximum=float(arr.max()),
    )


def hh_index(row_shares: Mapping[str, float], variant: str = "all", own_category: str | None = None) -> float | None:
    """Concentration of one category's citations across target categories.

    Shares are normalized to sum to one, then squared and summed: the
    probability that two citations drawn at random from this source
    category land in the same target category.  The ``cross-only``
    variant drops the source's own category first and renormalizes,
    measuring concentration among foreign fields only; it is undefined
    (None) when no cross-category citations exist.
    """
    if variant not in ("all", "cross-only"):
        raise ValueError(f"variant must be 'all' or 'cross-only', got {variant!r}")
    shares = dict(row_shares)
    if any(v < 0 for v in shares.values()):
        raise ValueError("shares must be nonnegative")
    if variant == "cross-only":
        if own_category is None:
            raise ValueError("cross-only variant needs own_category")
        shares.pop(own_category, None)
    total = sum(shares.values())
    if total <= 0:
        return None
    return float(sum((v / total) ** 2 for v in shares.values()))


def hh_by_category(
    counts: FieldMatrix, include_unclassified: bool = False
) -> list[tuple[str, float | None, float | None, int]]:
    """(category, hh_all, hh_cross, n_citations) per source category.

    Computed from the counts matrix; the unclassified column is dropped
    from the share vectors unless requested, and categories that emit no
    citations are skipped.
    """
    rows = []
    for i, label in enumerate(counts.row_labels):
        if label == UNCLASSIFIED and not include_unclassified:
            continue
        shares = {
            col: float(counts.values[i, j])
            for j, col in enumerate(counts.col_labels)
            if include_unclassified or col != UNCLASSIFIED
        }
        n_citations = int(sum(shares.values()))
        if n_citations == 0:
            continue
        rows.append(
            (
                label,
                hh_index(shares, "all"),
                hh_index(shares, "cross-only", own_category=label),
                n_citations,
            )
        )
    return rows


def category_distance_matrix(
    graph: CitationGraph,
    categories: CategoryTable,
    anchor_sample: int = 10000,
    master_seed: int = 0,
    threads: int | None = None,
) -> FieldMatrix:
    """Mean halved distance between category pairs via anchor sampling.

    Draws ``anchor_sample`` sources (clamped to the source count with a
    warning), runs one BFS per anchor, and averages distances grouped by
    (category of every source, category of the anchor).  Rows therefore
    cover all sources while columns only cover the anchor sample, so the
    matrix is not symmetric by construction.  Cells with no sampled pair
    are NaN.
    """
    if not categories.universe:
        raise ConfigurationError("category universe is empty")
    n = graph.n_sources
    if anchor_sample > n:
        warnings.warn(
            f"anchor_sample {anchor_sample} exceeds source count {n}; clamping",
            stacklevel=2,
        )
        anchor_sample = n
    if anchor_sample < 1:
        raise ValueError("anchor_sample must be >= 1")
    labels = _labels_with_unclassified(categories)
    src_codes = _category_codes(graph.source_ids, categories, labels)
    anchors = generator(derive_seed(master_seed, 0)).choice(
        n, size=anchor_sample, replace=False
    )
    anchors.sort()
    k = len(labels)

    def run_anchor(anchor):
        dist = _bfs_distances(graph, int(anchor))
        mask = dist >= 0
        mask[anchor] = False  # self pair carries no information
        codes = src_codes[mask]
        d = dist[mask].astype(np.float64)
        sums = np.bincount(codes, weights=d, minlength=k)
        counts = np.bincount(codes, minlength=k)
        return int(src_codes[anchor]), sums, counts

    sums = np.zeros((k, k), dtype=np.float64)
    counts = np.zeros((k, k), dtype=np.int64)
    for col, part_sums, part_counts in map_ordered(
        run_anchor, anchors.tolist(), thread_budget(threads)
    ):
        sums[:, col] += part_sums
        counts[:, col] += part_counts
    with np.errstate(invalid="ignore", divide="ignore"):
        means = np.where(counts > 0, sums / counts, math.nan)
    return FieldMatrix(row_labels=labels, col_labels=labels, values=means, kind="mean_distance")


@dataclass(frozen=True)
class PctChangeResult:
    changes: tuple[float, ...]  # sorted ascending; one per comparable cell
    fraction_increased: float
    skipped_cells: int
    dropped_row_labels: tuple[str, ...]
    dropped_col_labels: tuple[str, ...]

    def to_json(self) -> str:
        payload = {
            "changes": list(self.changes),
            "fraction_increased": self.fraction_increased,
            "skipped_cells": self.skipped_cells,
            "dropped_row_labels": list(self.dropped_row_labels),
            "dropped_col_labels": list(self.dropped_col_labels),
        }
        return json.dumps(payload, sort_keys=True, indent=2)


def pct_change_distribution(matrix_early: FieldMatrix, matrix_late: FieldMatrix) -> PctChangeResult:
    """Percentage change per shared cell between two epoch matrices.

    Labels present in only one matrix are dropped (and reported); cells
    that are empty on either side, or zero in the early matrix, are
    skipped and counted.  ``changes`` sorted ascending is the cumulative
    distribution.
    """
    shared_rows = [r for r in matrix_early.row_labels if r in matrix_late.row_labels]
    shared_cols = [c for c in matrix_early.col_labels if c in matrix_late.col_labels]
    dropped_rows = tuple(
        sorted(
            (set(matrix_early.row_labels) | set(matrix_late.row_labels)) - set(shared_rows)
        )
    )
    dropped_cols = tuple(
        sorted(
            (set(matrix_early.col_labels) | set(matrix_late.col_labels)) - set(shared_cols)
        )
    )
    changes = []
    skipped = 0
    for r in shared_rows:
        for c in shared_cols:
            early = matrix_early.cell(r, c)
            late = matrix_late.cell(r, c)
            if math.isnan(early) or math.isnan(late) or early == 0.0:
                skipped += 1
                continue
            changes.append(100.0 * (late - early) / early)
    changes.sort()
    increased = sum(1 for ch in changes if ch > 0)
    return PctChangeResult(
        changes=tuple(changes),
        fraction_increased=increased / len(changes) if changes else 0.0,
        skipped_cells=skipped,
        dropped_row_labels=dropped_rows,
        dropped_col_labels=dropped_cols,
    )
