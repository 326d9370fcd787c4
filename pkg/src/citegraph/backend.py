"""Kernel backend selection.

The compiled extension is preferred when importable; the numpy fallback
carries identical semantics.  Set CITEGRAPH_PURE_PYTHON=1 to force the
fallback (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _ckernels
except ImportError:
    _ckernels = None

_force_pure = os.environ.get("CITEGRAPH_PURE_PYTHON", "").strip() not in ("", "0")

if _ckernels is not None and not _force_pure:
    _impl = _ckernels
    BACKEND = "compiled"
else:
    _impl = _kernels_py
    BACKEND = "python"

bfs_halved_fill = _impl.bfs_halved_fill
overlap_dijkstra_fill = _impl.overlap_dijkstra_fill
double_edge_swap = _impl.double_edge_swap
edge_clustering_observed = _impl.edge_clustering_observed


def backend_name() -> str:
    return BACKEND


def available_backends() -> dict:
    """Importable kernel modules keyed by name (for benchmarks/tests)."""
    out = {"python": _kernels_py}
    if _ckernels is not None:
        out["compiled"] = _ckernels
    return out
