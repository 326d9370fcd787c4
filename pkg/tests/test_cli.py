import json
import subprocess
import sys

import pytest

from citegraph.cli import main


@pytest.fixture
def corpus(tmp_path):
    nodes = tmp_path / "nodes.tsv"
    edges = tmp_path / "edges.tsv"
    lines = []
    cats = ["alpha", "beta"]
    for i in range(12):
        lines.append(f"p{i}\t2000\t{cats[i % 2]}")
    for j in range(8):
        lines.append(f"r{j}\t1990\t{cats[j % 2]}")
    nodes.write_text("\n".join(lines) + "\n", encoding="utf-8")
    rows = []
    for i in range(12):
        for j in (i % 8, (i + 1) % 8, (i + 5) % 8):
            rows.append(f"p{i}\tr{j}")
    edges.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return nodes, edges


def run(args):
    return main([str(a) for a in args])


def test_distances_outputs_and_manifest(tmp_path, corpus, capsys):
    nodes, edges = corpus
    out = tmp_path / "run"
    code = run(["distances", "--nodes", nodes, "--edges", edges, "--year", "2000",
                "--sample-size", "8", "--reps", "3", "--seed", "11", "--out", out])
    assert code == 0
    # load report lands on stderr as one JSON line
    err = capsys.readouterr().err.strip()
    assert json.loads(err)["citations"] == 36
    summary = json.loads((out / "summary.json").read_text())
    assert summary["sample_size"] == 8
    assert (out / "histogram.csv").read_text().startswith("distance,probability")
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["subcommand"] == "distances"
    assert manifest["master_seed"] == 11
    assert sorted(manifest["outputs"]) == ["histogram.csv", "summary.json"]
    assert len(manifest["inputs"]) == 2
    assert all(len(i["sha256"]) == 64 for i in manifest["inputs"])


def test_report_flag_redirects_load_report(tmp_path, corpus, capsys):
    nodes, edges = corpus
    report = tmp_path / "report.json"
    code = run(["ingest-report", "--nodes", nodes, "--edges", edges,
                "--out", tmp_path / "o", "--report", report])
    assert code == 0
    assert capsys.readouterr().err == ""
    assert json.loads(report.read_text())["papers"] == 20


def test_ingest_report_summary(tmp_path, corpus):
    nodes, edges = corpus
    out = tmp_path / "o"
    assert run(["ingest-report", "--nodes", nodes, "--edges", edges, "--out", out]) == 0
    payload = json.loads((out / "report.json").read_text())
    assert payload["summary"]["source_papers"] == 12
    assert payload["summary"]["edges"] == 36
    assert payload["summary"]["mean_references"] == 3.0


def test_missing_file_is_usage_error(tmp_path, corpus):
    _, edges = corpus
    with pytest.raises(SystemExit) as exc:
        run(["distances", "--nodes", tmp_path / "nope.tsv", "--edges", edges,
             "--year", "2000", "--out", tmp_path / "o"])
    assert exc.value.code == 2


def test_unknown_flag_is_usage_error(corpus, tmp_path):
    nodes, edges = corpus
    with pytest.raises(SystemExit) as exc:
        run(["distances", "--nodes", nodes, "--edges", edges, "--year", "2000",
             "--out", tmp_path / "o", "--frobnicate"])
    assert exc.value.code == 2


def test_static_range_is_usage_error(corpus, tmp_path):
    nodes, edges = corpus
    with pytest.raises(SystemExit) as exc:
        run(["distances", "--nodes", nodes, "--edges", edges, "--year", "2000",
             "--sample-size", "1", "--out", tmp_path / "o"])
    assert exc.value.code == 2


def test_data_error_is_exit_one(corpus, tmp_path, capsys):
    nodes, edges = corpus
    code = run(["distances", "--nodes", nodes, "--edges", edges, "--year", "2000",
                "--sample-size", "500", "--reps", "1", "--out", tmp_path / "o"])
    assert code == 1
    err_lines = [l for l in capsys.readouterr().err.splitlines() if l.startswith("citegraph-error")]
    assert len(err_lines) == 1
    payload = json.loads(err_lines[0].split(" ", 1)[1])
    assert "exceeds" in payload["message"]


def test_nullmodel_and_snapshot_export(tmp_path, corpus):
    nodes, edges = corpus
    out = tmp_path / "null"
    code = run(["nullmodel", "--nodes", nodes, "--edges", edges, "--year", "2000",
                "--sample-size", "8", "--networks", "3", "--seed", "5",
                "--export-networks", "2", "--out", out])
    assert code == 0
    payload = json.loads((out / "null.json").read_text())
    assert payload["n_networks"] == 3
    assert len(payload["per_network_mean_distance"]) == 3
    assert (out / "network_00.cgsnap").exists()
    from citegraph.graph import load_snapshot

    net = load_snapshot(out / "network_00.cgsnap")
    assert net.n_edges == 36


def test_clustering_per_edge(tmp_path, corpus):
    nodes, edges = corpus
    out = tmp_path / "clu"
    code = run(["clustering", "--nodes", nodes, "--edges", edges, "--year", "2000",
                "--filter", "same-category", "--per-edge", "--out", out])
    assert code == 0
    payload = json.loads((out / "clustering.json").read_text())
    assert payload["edge_filter"] == "same-category"
    lines = (out / "edges.csv").read_text().splitlines()
    assert lines[0] == "source_id,target_id,observed,expected,coefficient,category_relation"
    assert len(lines) == 37


def test_impact_robustness_fields_pipeline(tmp_path, corpus):
    nodes, edges = corpus
    out1 = tmp_path / "impact"
    assert run(["impact", "--nodes", nodes, "--edges", edges, "--year", "2000",
                "--top-fractions", "0.25", "--out", out1]) == 0
    impact = json.loads((out1 / "impact.json").read_text())
    assert 0.0 <= impact["gini"] < 1.0
    assert (out1 / "lorenz.csv").exists()

    out2 = tmp_path / "rob"
    assert run(["robustness", "--nodes", nodes, "--edges", edges, "--year", "2000",
                "--sample-size", "8", "--reps", "2", "--fractions", "0,0.2",
                "--out", out2]) == 0
    rows = (out2 / "robustness.csv").read_text().splitlines()
    assert rows[1].startswith("0.0,")

    out3 = tmp_path / "fields"
    assert run(["fields", "--nodes", nodes, "--edges", edges, "--year", "2000",
                "--out", out3]) == 0
    assert (out3 / "citation_matrix.csv").exists()
    assert (out3 / "hh.csv").exists()

    out4 = tmp_path / "fd"
    assert run(["field-distances", "--nodes", nodes, "--edges", edges, "--year", "2000",
                "--anchor-sample", "6", "--out", out4]) == 0

    out5 = tmp_path / "pc"
    assert run(["pct-change", "--early", out4 / "distance_matrix.csv",
                "--late", out4 / "distance_matrix.csv", "--out", out5]) == 0
    payload = json.loads((out5 / "pct_change.json").read_text())
    assert payload["fraction_increased"] == 0.0


def test_synth_writes_corpus_files(tmp_path):
    config = {
        "epochs": 2,
        "sources_per_epoch": 50,
        "targets_pool": 40,
        "categories": 2,
        "refs_per_source": [4.0, 5.0],
        "attachment_strength": [0.5, 1.0],
        "cross_field_mixing": [0.1, 0.2],
        "master_seed": 3,
    }
    cfg_path = tmp_path / "synth.json"
    cfg_path.write_text(json.dumps(config))
    out = tmp_path / "data"
    assert run(["synth", "--config", cfg_path, "--out", out]) == 0
    assert (out / "epoch_00" / "nodes.tsv").exists()
    assert (out / "epoch_01" / "edges.tsv").exists()
    # generated data flows through the pipeline unchanged
    assert run(["distances", "--nodes", out / "epoch_00" / "nodes.tsv",
                "--edges", out / "epoch_00" / "edges.tsv", "--year", "2000",
                "--sample-size", "20", "--reps", "2", "--out", tmp_path / "run"]) == 0


def test_console_entry_point(tmp_path, corpus):
    nodes, edges = corpus
    result = subprocess.run(
        [sys.executable, "-m", "citegraph.cli", "distances", "--nodes", str(nodes),
         "--edges", str(edges), "--year", "2000", "--sample-size", "6",
         "--reps", "2", "--out", str(tmp_path / "sub")],
        capture_output=True, text=True,
    )
    assert result.returncode == 0, result.stderr
    assert (tmp_path / "sub" / "summary.json").exists()


def test_format_flag_restricts_outputs(tmp_path, corpus):
    nodes, edges = corpus
    out = tmp_path / "jsononly"
    assert run(["distances", "--nodes", nodes, "--edges", edges, "--year", "2000",
                "--sample-size", "6", "--reps", "2", "--format", "json",
                "--out", out]) == 0
    assert (out / "summary.json").exists()
    assert not (out / "histogram.csv").exists()
