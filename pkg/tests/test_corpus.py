import pytest

from citegraph.corpus import (
    CitationRecord,
    PaperRecord,
    corpus_summary,
    load_corpus,
    write_corpus,
)
from citegraph.errors import ConflictError, ParseError


def write(tmp_path, nodes, edges):
    n = tmp_path / "nodes.tsv"
    e = tmp_path / "edges.tsv"
    n.write_text(nodes, encoding="utf-8")
    e.write_text(edges, encoding="utf-8")
    return n, e


def test_minimal_corpus(tmp_path):
    n, e = write(tmp_path, "A\t2000\t\nB\t2000\t\n", "A\tX\nB\tX\n")
    papers, citations, report = load_corpus(n, e)
    assert papers == [PaperRecord("A", 2000), PaperRecord("B", 2000)]
    assert citations == [CitationRecord("A", "X"), CitationRecord("B", "X")]
    assert report.papers == 2 and report.citations == 2


def test_duplicate_citation_collapses(tmp_path):
    n, e = write(tmp_path, "A\t2000\t\n", "A\tX\nA\tX\n")
    _, citations, report = load_corpus(n, e)
    assert citations == [CitationRecord("A", "X")]
    assert report.duplicate_citations == 1


def test_five_row_fixture_report_counts(tmp_path):
    # hand-checked: one self-citation dropped, one duplicate collapsed
    n, e = write(
        tmp_path,
        "A\t2000\tbio\nB\t2000\tbio|chem\n",
        "A\tA\nA\tX\nB\tX\nB\tX\nB\tY\n",
    )
    papers, citations, report = load_corpus(n, e)
    assert report.citation_rows == 5
    assert report.self_citations == 1
    assert report.duplicate_citations == 1
    assert report.citations == 3
    assert [c.target_id for c in citations] == ["X", "X", "Y"]
    assert report.distinct_categories == 2
    assert report.category_labels == ["bio", "chem"]


def test_header_and_blank_lines_skipped(tmp_path):
    n, e = write(
        tmp_path,
        "#paper_id\tyear\tcategories\nA\t2000\tbio\n\n",
        "#source_id\ttarget_id\nA\tX\n",
    )
    papers, citations, _ = load_corpus(n, e)
    assert len(papers) == 1 and len(citations) == 1


def test_malformed_rows(tmp_path):
    n, e = write(tmp_path, "A\t2000\n", "A\tX\n")
    with pytest.raises(ParseError, match="nodes.tsv:1"):
        load_corpus(n, e)
    n, e = write(tmp_path, "A\tnineteen\t\n", "A\tX\n")
    with pytest.raises(ParseError, match="bad year"):
        load_corpus(n, e)
    n, e = write(tmp_path, "A\t2000\t\n", "A\tX\tY\n")
    with pytest.raises(ParseError, match="edges.tsv:1"):
        load_corpus(n, e)
    n, e = write(tmp_path, "A\t2000\t\n", "\tX\n")
    with pytest.raises(ParseError, match="empty paper id"):
        load_corpus(n, e)


def test_conflicting_duplicate_paper(tmp_path):
    n, e = write(tmp_path, "A\t2000\tbio\nA\t2001\tbio\n", "A\tX\n")
    with pytest.raises(ConflictError, match="'A'"):
        load_corpus(n, e)


def test_identical_duplicate_paper_row_collapses(tmp_path):
    n, e = write(tmp_path, "A\t2000\tbio\nA\t2000\tbio\n", "A\tX\n")
    papers, _, report = load_corpus(n, e)
    assert len(papers) == 1
    assert report.duplicate_paper_rows == 1


def test_duplicate_category_labels_dropped(tmp_path):
    n, e = write(tmp_path, "A\t2000\tbio|bio|chem\n", "A\tX\n")
    papers, _, report = load_corpus(n, e)
    assert papers[0].categories == ("bio", "chem")
    assert report.duplicate_category_labels == 1


def test_load_is_idempotent(tmp_path):
    n, e = write(
        tmp_path,
        "A\t2000\tbio\nB\t2001\tchem|bio\nC\t2000\t\n",
        "A\tX\nB\tX\nA\tB\nC\tY\n",
    )
    papers, citations, _ = load_corpus(n, e)
    n2 = tmp_path / "nodes2.tsv"
    e2 = tmp_path / "edges2.tsv"
    write_corpus(papers, citations, n2, e2)
    papers2, citations2, _ = load_corpus(n2, e2)
    assert papers2 == papers
    assert citations2 == citations


def test_summary_arithmetic():
    citations = [CitationRecord(s, f"{s}{i}") for s in "AB" for i in range(3)]
    summary = corpus_summary([], citations)
    assert summary.source_papers == 2
    assert summary.distinct_targets == 6
    assert summary.edges == 6
    assert summary.mean_references == 3.0


def test_summary_mean_refs_hand_count():
    citations = [CitationRecord("A", f"x{i}") for i in range(11)]
    citations += [CitationRecord("B", f"y{i}") for i in range(35)]
    assert corpus_summary([], citations).mean_references == 23.0


def test_summary_empty_corpus():
    summary = corpus_summary([], [])
    assert (
        summary.source_papers,
        summary.distinct_targets,
        summary.edges,
        summary.mean_references,
    ) == (0, 0, 0, 0.0)


def test_out_degree_sums_to_edge_count(tmp_path, rng):
    rows = []
    for s in range(20):
        for t in rng.choice(30, size=int(rng.integers(1, 6)), replace=False):
            rows.append(f"p{s}\tt{t}")
    n, e = write(
        tmp_path,
        "".join(f"p{s}\t2000\t\n" for s in range(20)),
        "\n".join(rows) + "\n",
    )
    _, citations, _ = load_corpus(n, e)
    out_degree = {}
    for c in citations:
        out_degree[c.source_id] = out_degree.get(c.source_id, 0) + 1
    assert sum(out_degree.values()) == len(citations)
