"""Loading, validating and writing citation corpora.

File formats (UTF-8, one record per line, lines starting with ``#`` are
treated as header/comment lines and skipped):

* nodes.tsv  -- ``paper_id<TAB>year<TAB>categories`` where categories is
  a ``|``-separated list, possibly empty.
* edges.tsv  -- ``source_id<TAB>target_id``.

TSV is used instead of CSV so paper identifiers never need quoting.
Papers that only ever appear as citation targets need no nodes.tsv row;
they simply carry no metadata.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .errors import ConflictError, ParseError


@dataclass(frozen=True)
class PaperRecord:
    """One paper: opaque id, calendar year, ordered category labels."""

    paper_id: str
    year: int
    categories: tuple[str, ...] = ()


@dataclass(frozen=True)
class CitationRecord:
    """One directed citation from a citing paper to a cited work."""

    source_id: str
    target_id: str


@dataclass
class LoadReport:
    """Row accounting for one corpus load; emitted as JSON by the CLI."""

    nodes_path: str = ""
    edges_path: str = ""
    paper_rows: int = 0
    papers: int = 0
    duplicate_paper_rows: int = 0
    duplicate_category_labels: int = 0
    citation_rows: int = 0
    citations: int = 0
    duplicate_citations: int = 0
    self_citations: int = 0
    distinct_categories: int = 0
    category_labels: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _data_lines(path):
    """Yield (line_no, stripped_line) skipping comments and blank lines."""
    with open(path, encoding="utf-8") as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.rstrip("\r\n")
            if not line or line.startswith("#"):
                continue
            yield line_no, line


def _parse_papers(nodes_path, report: LoadReport) -> list[PaperRecord]:
    papers: dict[str, PaperRecord] = {}
    lines: dict[str, int] = {}
    for line_no, line in _data_lines(nodes_path):
        report.paper_rows += 1
        cols = line.split("\t")
        if len(cols) != 3:
            raise ParseError(nodes_path, line_no, f"expected 3 columns, got {len(cols)}")
        paper_id, year_text, cat_text = cols
        if not paper_id:
            raise ParseError(nodes_path, line_no, "empty paper_id")
        try:
            year = int(year_text)
        except ValueError:
            raise ParseError(nodes_path, line_no, f"bad year {year_text!r}") from None
        cats: list[str] = []
        for label in cat_text.split("|"):
            if not label:
                continue
            if label in cats:
                report.duplicate_category_labels += 1
                continue
            cats.append(label)
        record = PaperRecord(paper_id, year, tuple(cats))
        prior = papers.get(paper_id)
        if prior is not None:
            if prior == record:
                report.duplicate_paper_rows += 1
                continue
            raise ConflictError(
                f"{nodes_path}:{line_no}: paper {paper_id!r} re-declared with "
                f"conflicting metadata (first seen at line {lines[paper_id]})"
            )
        papers[paper_id] = record
        lines[paper_id] = line_no
    return list(papers.values())


def _parse_citations(edges_path, report: LoadReport) -> list[CitationRecord]:
    seen: set[tuple[str, str]] = set()
    citations: list[CitationRecord] = []
    for line_no, line in _data_lines(edges_path):
        report.citation_rows += 1
        cols = line.split("\t")
        if len(cols) != 2:
            raise ParseError(edges_path, line_no, f"expected 2 columns, got {len(cols)}")
        source_id, target_id = cols
        if not source_id or not target_id:
            raise ParseError(edges_path, line_no, "empty paper id in edge")
        if source_id == target_id:
            # A self-citation contributes nothing to inter-paper distance.
            report.self_citations += 1
            continue
        key = (source_id, target_id)
        if key in seen:
            report.duplicate_citations += 1
            continue
        seen.add(key)
        citations.append(CitationRecord(source_id, target_id))
    return citations


def load_corpus(nodes_path, edges_path) -> tuple[list[PaperRecord], list[CitationRecord], LoadReport]:
    """Parse both corpus files into deduplicated records plus a load report.

    Duplicate citation rows collapse to one, self-citations are dropped,
    and both are counted in the report.  A paper id declared twice with
    conflicting metadata raises :class:`ConflictError`; a malformed row
    raises :class:`ParseError` naming the file and line.
    """
    report = LoadReport(nodes_path=str(nodes_path), edges_path=str(edges_path))
    papers = _parse_papers(nodes_path, report)
    citations = _parse_citations(edges_path, report)
    labels = sorted({label for p in papers for label in p.categories})
    report.papers = len(papers)
    report.citations = len(citations)
    report.distinct_categories = len(labels)
    report.category_labels = labels
    return papers, citations, report


@dataclass(frozen=True)
class CorpusSummary:
    source_papers: int
    distinct_targets: int
    edges: int
    mean_references: float


def corpus_summary(papers, citations) -> CorpusSummary:
    """Source/target/edge counts and mean reference-list length.

    An empty corpus summarizes to all zeros rather than erroring.
    """
    sources = {c.source_id for c in citations}
    targets = {c.target_id for c in citations}
    edges = len(citations)
    mean_refs = edges / len(sources) if sources else 0.0
    return CorpusSummary(len(sources), len(targets), edges, mean_refs)


def write_corpus(papers, citations, nodes_path, edges_path) -> None:
    """Serialize records back to the TSV formats (loading is idempotent)."""
    with open(nodes_path, "w", encoding="utf-8") as fh:
        fh.write("#paper_id\tyear\tcategories\n")
        for p in papers:
            fh.write(f"{p.paper_id}\t{p.year}\t{'|'.join(p.categories)}\n")
    with open(edges_path, "w", encoding="utf-8") as fh:
        fh.write("#source_id\ttarget_id\n")
        for c in citations:
            fh.write(f"{c.source_id}\t{c.target_id}\n")
