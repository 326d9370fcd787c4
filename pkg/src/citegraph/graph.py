"""The immutable bipartite citation graph.

Source papers (the sampled year's citing papers) sit on one side, cited
works on the other.  A paper that both cites and is cited in the same
year appears as two distinct nodes, one per side; the two are never
merged, so node handles are always (side, dense index) pairs and no
traversal can cross sides except along explicit edges.

Adjacency is CSR with per-row sorted indices.  After construction the
arrays are frozen (non-writeable) and the graph is safe to share across
any number of threads.
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass, field

import numpy as np

SOURCE = "source"
TARGET = "target"

_SNAPSHOT_MAGIC = b"CGSNAP01"
_SNAPSHOT_VERSION = 1


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _csr_from_pairs(rows, cols, n_rows):
    """Sorted CSR from parallel (row, col) arrays; deterministic order."""
    order = np.lexsort((cols, rows))
    rows = rows[order]
    cols = cols[order]
    indptr = np.zeros(n_rows + 1, dtype=np.int64)
    np.add.at(indptr, rows + 1, 1)
    np.cumsum(indptr, out=indptr)
    return indptr, np.ascontiguousarray(cols, dtype=np.int32)


@dataclass(frozen=True)
class CitationGraph:
    """Frozen bipartite graph with forward and reverse CSR adjacency."""

    source_ids: tuple[str, ...]
    target_ids: tuple[str, ...]
    s_indptr: np.ndarray  # int64, len S+1; row s spans targets of source s
    s_indices: np.ndarray  # int32, len M, sorted within each row
    t_indptr: np.ndarray  # int64, len T+1; row t spans sources citing t
    t_indices: np.ndarray  # int32, len M, sorted within each row
    sampled_year: int | None = None
    build_report: dict | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for arr in (self.s_indptr, self.s_indices, self.t_indptr, self.t_indices):
            arr.setflags(write=False)
        object.__setattr__(
            self, "_source_index", {pid: i for i, pid in enumerate(self.source_ids)}
        )
        object.__setattr__(
            self, "_target_index", {pid: i for i, pid in enumerate(self.target_ids)}
        )

    # -- shape ---------------------------------------------------------

    @property
    def n_sources(self) -> int:
        return len(self.source_ids)

    @property
    def n_targets(self) -> int:
        return len(self.target_ids)

    @property
    def n_edges(self) -> int:
        return int(self.s_indices.shape[0])

    # -- lookups -------------------------------------------------------

    def lookup(self, paper_id: str) -> tuple[int | None, int | None]:
        """(source index, target index) for a paper id; None where absent.

        A within-year cited source returns both indices; they denote two
        distinct nodes.
        """
        return self._source_index.get(paper_id), self._target_index.get(paper_id)

    def targets_of(self, s: int) -> np.ndarray:
        return self.s_indices[self.s_indptr[s] : self.s_indptr[s + 1]]

    def sources_of(self, t: int) -> np.ndarray:
        return self.t_indices[self.t_indptr[t] : self.t_indptr[t + 1]]

    def has_edge(self, s: int, t: int) -> bool:
        row = self.targets_of(s)
        pos = np.searchsorted(row, t)
        return pos < row.shape[0] and row[pos] == t

    def source_degrees(self) -> np.ndarray:
        return np.diff(self.s_indptr)

    def target_degrees(self) -> np.ndarray:
        return np.diff(self.t_indptr)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Edges as parallel (source, target) index arrays in CSR order."""
        e_src = np.repeat(
            np.arange(self.n_sources, dtype=np.int32), self.source_degrees()
        )
        return e_src, self.s_indices.copy()

    # -- derived graphs --------------------------------------------------

    def remove_targets(self, target_indexes) -> "CitationGraph":
        """Filtered view with the given targets' edges deleted.

        Node tables keep their indexing (removed targets stay as isolated
        entries, sources may become isolated) so samples drawn with the
        same seed stay aligned across removal fractions.
        """
        drop = np.zeros(self.n_targets, dtype=bool)
        drop[np.asarray(target_indexes, dtype=np.int64)] = True
        e_src, e_tgt = self.edge_arrays()
        keep = ~drop[e_tgt]
        return from_edges(
            self.source_ids,
            self.target_ids,
            e_src[keep],
            e_tgt[keep],
            sampled_year=self.sampled_year,
        )


def from_edges(source_ids, target_ids, e_src, e_tgt, sampled_year=None, build_report=None) -> CitationGraph:
    """Assemble a graph from id tables plus parallel edge index arrays."""
    e_src = np.asarray(e_src, dtype=np.int32)
    e_tgt = np.asarray(e_tgt, dtype=np.int32)
    if e_src.shape != e_tgt.shape:
        raise ValueError("edge arrays must have equal length")
    s_indptr, s_indices = _csr_from_pairs(e_src, e_tgt, len(source_ids))
    t_indptr, t_indices = _csr_from_pairs(e_tgt, e_src, len(target_ids))
    return CitationGraph(
        source_ids=tuple(source_ids),
        target_ids=tuple(target_ids),
        s_indptr=_frozen(s_indptr),
        s_indices=_frozen(s_indices),
        t_indptr=_frozen(t_indptr),
        t_indices=_frozen(t_indices),
        sampled_year=sampled_year,
        build_report=build_report,
    )


def build_graph(papers, citations, sampled_year: int) -> CitationGraph:
    """Build the cross-section graph for one sampled year.

    Papers published in ``sampled_year`` with at least one reference
    become sources; every cited work becomes a target, including cited
    sources, which are duplicated onto the target side so no citation is
    lost.  Citations from papers without a record are skipped and
    counted, as are citations from other years and zero-reference
    sampled-year papers; counts land in ``build_report``.

    Node indices are assigned by first appearance in the citation list,
    which makes the construction deterministic for identical input.
    """
    year_of = {p.paper_id: p.year for p in papers}
    report = {
        "sampled_year": sampled_year,
        "missing_source_records": 0,
        "other_year_citations": 0,
        "zero_reference_sources": 0,
    }

    source_index: dict[str, int] = {}
    target_index: dict[str, int] = {}
    e_src: list[int] = []
    e_tgt: list[int] = []
    for c in citations:
        year = year_of.get(c.source_id)
        if year is None:
            report["missing_source_records"] += 1
            continue
        if year != sampled_year:
            report["other_year_citations"] += 1
            continue
        si = source_index.setdefault(c.source_id, len(source_index))
        ti = target_index.setdefault(c.target_id, len(target_index))
        e_src.append(si)
        e_tgt.append(ti)

    n_sampled = sum(1 for p in papers if p.year == sampled_year)
    report["zero_reference_sources"] = n_sampled - len(source_index)

    return from_edges(
        tuple(source_index),
        tuple(target_index),
        np.array(e_src, dtype=np.int32),
        np.array(e_tgt, dtype=np.int32),
        sampled_year=sampled_year,
        build_report=report,
    )


def degree_sequences(graph: CitationGraph) -> tuple[np.ndarray, np.ndarray]:
    """(source degrees, target degrees); target degree is citation impact."""
    return graph.source_degrees(), graph.target_degrees()


# -- binary snapshot ------------------------------------------------------
#
# Layout (little-endian):
#   8 bytes    magic "CGSNAP01"
#   u32        format version (1)
#   u8         1 if sampled_year present, else 0
#   i64        sampled_year (0 when absent)
#   u64 x3     S, T, M
#   id table   S entries: varint(byte length) + UTF-8 bytes
#   id table   T entries: same
#   adjacency  per source: varint(degree), first target as varint, then
#              varint deltas between consecutive sorted targets
#
# The reverse adjacency is rebuilt on load; a save/load round trip is
# bit-exact.


def _write_varint(buf: io.BytesIO, value: int) -> None:
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            buf.write(bytes((byte | 0x80,)))
        else:
            buf.write(bytes((byte,)))
            return


def _read_varint(view: memoryview, pos: int) -> tuple[int, int]:
    result = 0
    shift = 0
    while True:
        byte = view[pos]
        pos += 1
        result |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return result, pos
        shift += 7


def save_snapshot(graph: CitationGraph, path) -> None:
    buf = io.BytesIO()
    buf.write(_SNAPSHOT_MAGIC)
    buf.write(struct.pack("<I", _SNAPSHOT_VERSION))
    has_year = graph.sampled_year is not None
    buf.write(struct.pack("<Bq", int(has_year), graph.sampled_year or 0))
    buf.write(struct.pack("<QQQ", graph.n_sources, graph.n_targets, graph.n_edges))
    for table in (graph.source_ids, graph.target_ids):
        for pid in table:
            raw = pid.encode("utf-8")
            _write_varint(buf, len(raw))
            buf.write(raw)
    indptr, indices = graph.s_indptr, graph.s_indices
    for s in range(graph.n_sources):
        row = indices[indptr[s] : indptr[s + 1]]
        _write_varint(buf, row.shape[0])
        prev = 0
        for i, t in enumerate(row):
            _write_varint(buf, int(t) if i == 0 else int(t) - prev)
            prev = int(t)
    with open(path, "wb") as fh:
        fh.write(buf.getvalue())


def load_snapshot(path) -> CitationGraph:
    with open(path, "rb") as fh:
        data = fh.read()
    view = memoryview(data)
    if data[:8] != _SNAPSHOT_MAGIC:
        raise ValueError(f"{path}: not a citegraph snapshot")
    (version,) = struct.unpack_from("<I", data, 8)
    if version != _SNAPSHOT_VERSION:
        raise ValueError(f"{path}: unsupported snapshot version {version}")
    has_year, year = struct.unpack_from("<Bq", data, 12)
    n_sources, n_targets, n_edges = struct.unpack_from("<QQQ", data, 21)
    pos = 21 + 24

    def read_table(count):
        nonlocal pos
        ids = []
        for _ in range(count):
            length, pos = _read_varint(view, pos)
            ids.append(bytes(view[pos : pos + length]).decode("utf-8"))
            pos += length
        return tuple(ids)

    source_ids = read_table(n_sources)
    target_ids = read_table(n_targets)

    e_src = np.empty(n_edges, dtype=np.int32)
    e_tgt = np.empty(n_edges, dtype=np.int32)
    k = 0
    for s in range(n_sources):
        degree, pos = _read_varint(view, pos)
        value = 0
        for i in range(degree):
            delta, pos = _read_varint(view, pos)
            value = delta if i == 0 else value + delta
            e_src[k] = s
            e_tgt[k] = value
            k += 1
    if k != n_edges:
        raise ValueError(f"{path}: truncated snapshot ({k} of {n_edges} edges)")
    return from_edges(
        source_ids, target_ids, e_src, e_tgt,
        sampled_year=year if has_year else None,
    )
