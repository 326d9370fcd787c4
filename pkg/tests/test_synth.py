import numpy as np
import pytest

from citegraph.errors import ConfigurationError
from citegraph.fields import CategoryTable, citation_matrix, hh_by_category, citation_counts
from citegraph.graph import build_graph
from citegraph.synth import SynthConfig, generate_epoch, generate_series


def config(**overrides):
    base = dict(
        epochs=2,
        sources_per_epoch=400,
        targets_pool=300,
        categories=3,
        refs_per_source=(6.0, 8.0),
        attachment_strength=(0.0, 1.0),
        cross_field_mixing=(0.0, 0.3),
        master_seed=2024,
    )
    base.update(overrides)
    return SynthConfig(**base)


def epoch_graph(cfg, e):
    papers, citations = generate_epoch(cfg, e)
    graph = build_graph(papers, citations, cfg.base_year + e)
    return graph, CategoryTable.from_papers(papers)


def test_config_validation():
    with pytest.raises(ConfigurationError, match="one value per epoch"):
        config(refs_per_source=(6.0,))
    with pytest.raises(ConfigurationError, match="mixing"):
        config(cross_field_mixing=(0.0, 1.5))
    with pytest.raises(ConfigurationError, match="epochs"):
        config(epochs=0, refs_per_source=(), attachment_strength=(), cross_field_mixing=())


def test_zero_mixing_is_block_diagonal():
    graph, table = epoch_graph(config(), 0)
    m = citation_matrix(graph, table)
    for row in table.universe:
        assert m.cell(row, row) == pytest.approx(100.0)


def test_determinism_under_fixed_seed():
    cfg = config()
    a = generate_epoch(cfg, 1)
    b = generate_epoch(cfg, 1)
    assert a == b
    different = generate_epoch(config(master_seed=5), 1)
    assert different != a


def test_epochs_are_independent_cross_sections():
    corpora, manifest = generate_series(config())
    ids0 = {p.paper_id for p in corpora[0][0]}
    ids1 = {p.paper_id for p in corpora[1][0]}
    assert not ids0 & ids1
    assert [e["epoch"] for e in manifest["epochs"]] == [0, 1]
    assert manifest["config"]["master_seed"] == 2024


def test_reference_counts_track_epoch_mean():
    cfg = config(refs_per_source=(3.0, 12.0))
    g0, _ = epoch_graph(cfg, 0)
    g1, _ = epoch_graph(cfg, 1)
    mean0 = g0.n_edges / g0.n_sources
    mean1 = g1.n_edges / g1.n_sources
    assert 2.0 < mean0 < 4.0
    # duplicate-drop trims slightly below the Poisson mean
    assert 10.0 < mean1 < 12.5


def test_attachment_strength_makes_heavy_tail():
    flat_cfg = config(attachment_strength=(0.0, 0.0))
    rich_cfg = config(attachment_strength=(0.0, 4.0))
    flat_top, rich_top = [], []
    for seed in range(10):
        gf, _ = epoch_graph(
            SynthConfig(**{**flat_cfg.to_dict(), "master_seed": seed}), 1
        )
        gr, _ = epoch_graph(
            SynthConfig(**{**rich_cfg.to_dict(), "master_seed": seed}), 1
        )

        def top1_share(g):
            deg = np.sort(g.target_degrees())[::-1]
            k = max(1, deg.size // 100)
            return deg[:k].sum() / deg.sum()

        flat_top.append(top1_share(gf))
        rich_top.append(top1_share(gr))
    assert np.mean(rich_top) > np.mean(flat_top)


def test_uniform_mixing_drives_hh_to_reciprocal_k():
    k = 4
    cfg = SynthConfig(
        epochs=1,
        sources_per_epoch=2000,
        targets_pool=150,
        categories=k,
        refs_per_source=(8.0,),
        attachment_strength=(0.0,),
        cross_field_mixing=((k - 1) / k,),
        master_seed=7,
    )
    graph, table = epoch_graph(cfg, 0)
    rows = hh_by_category(citation_counts(graph, table))
    for _, hh_all, _, _ in rows:
        assert hh_all == pytest.approx(1.0 / k, rel=0.05)


def test_json_round_trip(tmp_path):
    cfg = config()
    path = tmp_path / "synth.json"
    import json

    path.write_text(json.dumps(cfg.to_dict()))
    assert SynthConfig.from_json(path) == cfg
    path.write_text(json.dumps({"bogus": 1}))
    with pytest.raises(ConfigurationError):
        SynthConfig.from_json(path)
