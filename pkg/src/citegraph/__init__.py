"""Citation-network analytics over yearly bipartite cross-sections."""

from .backend import backend_name
from .clustering import (
    ClusteringDistribution,
    EdgeClusteringRecord,
    clustering_distribution,
    edge_clustering,
)
from .corpus import (
    CitationRecord,
    CorpusSummary,
    LoadReport,
    PaperRecord,
    corpus_summary,
    load_corpus,
    write_corpus,
)
from .distance import (
    DistanceSummary,
    GaussianFit,
    fit_gaussian,
    pairwise_distance,
    sampled_mean_distance,
    weighted_distance_summary,
)
from .fields import (
    CategoryTable,
    FieldMatrix,
    PctChangeResult,
    WithinShareSummary,
    category_distance_matrix,
    citation_counts,
    citation_matrix,
    hh_by_category,
    hh_index,
    pct_change_distribution,
    within_field_share_distribution,
)
from .graph import (
    CitationGraph,
    build_graph,
    degree_sequences,
    from_edges,
    load_snapshot,
    save_snapshot,
)
from .impact import (
    LorenzResult,
    RobustnessCurve,
    lorenz_gini,
    removal_robustness,
    top_share,
)
from .nullmodel import (
    NullEnsembleResult,
    SwapStats,
    null_distance_baseline,
    randomize_degree_preserving,
)
from .synth import SynthConfig, generate_epoch, generate_series

__version__ = "0.1.0"

__all__ = [
    "CategoryTable",
    "CitationGraph",
    "CitationRecord",
    "ClusteringDistribution",
    "CorpusSummary",
    "DistanceSummary",
    "EdgeClusteringRecord",
    "FieldMatrix",
    "GaussianFit",
    "LoadReport",
    "LorenzResult",
    "NullEnsembleResult",
    "PaperRecord",
    "PctChangeResult",
    "RobustnessCurve",
    "SwapStats",
    "SynthConfig",
    "WithinShareSummary",
    "backend_name",
    "build_graph",
    "category_distance_matrix",
    "citation_counts",
    "citation_matrix",
    "clustering_distribution",
    "corpus_summary",
    "degree_sequences",
    "edge_clustering",
    "fit_gaussian",
    "from_edges",
    "generate_epoch",
    "generate_series",
    "hh_by_category",
    "hh_index",
    "load_corpus",
    "load_snapshot",
    "lorenz_gini",
    "null_distance_baseline",
    "pairwise_distance",
    "pct_change_distribution",
    "randomize_degree_preserving",
    "removal_robustness",
    "sampled_mean_distance",
    "save_snapshot",
    "top_share",
    "weighted_distance_summary",
    "within_field_share_distribution",
    "write_corpus",
]
