"""Citation-impact inequality and robustness to top-paper removal.

Impact is a target node's degree in the cross-section.  Targets with a
single citation are omitted from the inequality measures (they cannot
affect any shortest path, and they dominate the tail); the omission is
scoped to Lorenz/Gini/top-share only, never to removal robustness.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .distance import sampled_mean_distance
from .errors import EmptyDistributionError
from .graph import CitationGraph


@dataclass(frozen=True)
class LorenzResult:
    points: tuple[tuple[float, float], ...]  # (population share, citation share)
    gini: float
    excluded_degree_one_count: int


@dataclass(frozen=True)
class RobustnessCurve:
    fractions: tuple[float, ...]
    mean_distances: tuple[float, ...]
    sds: tuple[float, ...]
    pct_increases: tuple[float, ...]
    reachable_fractions: tuple[float, ...]
    sample_size: int
    repetitions: int
    master_seed: int

    def to_json(self) -> str:
        payload = {
            "fractions": list(self.fractions),
            "mean_distances": list(self.mean_distances),
            "sds": list(self.sds),
            "pct_increases": list(self.pct_increases),
            "reachable_fractions": list(self.reachable_fractions),
            "sample_size": self.sample_size,
            "repetitions": self.repetitions,
            "master_seed": self.master_seed,
        }
        return json.dumps(payload, sort_keys=True, indent=2)


def _kept_degrees(target_degrees) -> tuple[np.ndarray, int]:
    deg = np.asarray(target_degrees, dtype=np.int64)
    if deg.size and deg.min() < 0:
        raise ValueError("degrees must be nonnegative")
    kept = deg[deg >= 2]
    return kept, int(deg.size - kept.size)


def lorenz_gini(target_degrees) -> LorenzResult:
    """Lorenz curve and Gini coefficient of the impact distribution.

    Uses the sorted-rank identity G = 2*sum(i*x_i)/(n*sum(x)) - (n+1)/n,
    which agrees exactly with 1 - 2 * trapezoid area under the curve.
    """
    kept, excluded = _kept_degrees(target_degrees)
    if kept.size == 0:
        raise EmptyDistributionError(
            "no targets with degree >= 2; inequality is undefined"
        )
    kept = np.sort(kept)
    n = kept.size
    total = float(kept.sum())
    cum = np.cumsum(kept) / total
    points = [(0.0, 0.0)] + [((i + 1) / n, float(cum[i])) for i in range(n)]
    ranks = np.arange(1, n + 1, dtype=np.float64)
    gini = float(2.0 * (ranks * kept).sum() / (n * total) - (n + 1) / n)
    return LorenzResult(points=tuple(points), gini=gini, excluded_degree_one_count=excluded)


def top_share(target_degrees, top_fraction: float) -> float:
    """Citation share of the top ``top_fraction`` highest-impact targets.

    Applies the same degree-1 omission, then takes the
    ceil(top_fraction * n) largest degrees; ties at the cut all carry
    the cut value, so any tie resolution yields the same share.
    """
    if not 0.0 < top_fraction < 1.0:
        raise ValueError(f"top_fraction must be in (0, 1), got {top_fraction}")
    kept, _ = _kept_degrees(target_degrees)
    if kept.size == 0:
        raise EmptyDistributionError(
            "no targets with degree >= 2; inequality is undefined"
        )
    n = kept.size
    # round-before-ceil guards against float artifacts like 0.1*n -> n/10+1e-16
    take = math.ceil(round(top_fraction * n, 9))
    take = min(max(take, 1), n)
    ordered = np.sort(kept)[::-1]
    return float(ordered[:take].sum() / ordered.sum())


def removal_order(graph: CitationGraph) -> np.ndarray:
    """Target indices by descending impact, ties in ascending paper id.

    Deterministic order favored over randomized tie handling so removal
    runs are exactly reproducible.
    """
    deg = graph.target_degrees()
    keys = sorted(range(graph.n_targets), key=lambda t: (-int(deg[t]), graph.target_ids[t]))
    return np.array(keys, dtype=np.int64)


def removal_robustness(
    graph: CitationGraph,
    fractions,
    sample_size: int = 2000,
    repetitions: int = 30,
    master_seed: int = 0,
    threads: int | None = None,
) -> RobustnessCurve:
    """Distance growth as the highest-impact targets are deleted.

    For each fraction f, removes ceil(f * T) top-impact targets (edges
    included) and re-estimates the sampled mean distance with the same
    master seed, so every fraction sees the identical samples and the
    percentage increase is measured against a same-seed baseline.
    """
    fractions = [float(f) for f in fractions]
    if any(not 0.0 <= f < 1.0 for f in fractions):
        raise ValueError("removal fractions must lie in [0, 1)")
    if sorted(fractions) != fractions:
        raise ValueError("removal fractions must be sorted ascending")
    if not fractions or fractions[0] != 0.0:
        fractions = [0.0] + fractions
    order = removal_order(graph)
    means, sds, reach = [], [], []
    for f in fractions:
        k = math.ceil(round(f * graph.n_targets, 9))
        view = graph.remove_targets(order[:k]) if k else graph
        summary = sampled_mean_distance(
            view,
            sample_size=sample_size,
            repetitions=repetitions,
            master_seed=master_seed,
            threads=threads,
        )
        means.append(summary.mean_distance)
        sds.append(summary.sd_across_repetitions)
        reach.append(summary.reachable_fraction)
    baseline = means[0]
    pct = [
        100.0 * (m - baseline) / baseline if (m is not None and baseline) else math.nan
        for m in means
    ]
    return RobustnessCurve(
        fractions=tuple(fractions),
        mean_distances=tuple(means),
        sds=tuple(sds),
        pct_increases=tuple(pct),
        reachable_fractions=tuple(reach),
        sample_size=sample_size,
        repetitions=repetitions,
        master_seed=master_seed,
    )
