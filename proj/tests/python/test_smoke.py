import csv
import json

import pytest

import subconflict as sc


def test_polarity():
    assert sc.classify_polarity(3) == "positive"
    assert sc.classify_polarity(-1) == "negative"
    assert sc.classify_polarity(0) == "neutral"


def test_spearman_and_change_count():
    r = sc.spearman([1, 2, 3, 4, 5], [2, 1, 4, 3, 5])
    assert r["computable"]
    assert r["rho"] == pytest.approx(0.8)
    assert sc.change_count(["a", "a", None, "b"]) == 2


def test_louvain_two_cliques():
    edges = []
    for group in ("abcde", "fghij"):
        edges += [(x, y, 1.0) for i, x in enumerate(group) for y in group[i + 1:]]
    edges.append(("e", "f", 1.0))
    communities, q = sc.louvain(edges, seed=3)
    assert len(set(communities.values())) == 2
    assert communities["a"] == communities["e"] != communities["f"]
    assert q > 0.4


def test_config_round_trip_and_errors():
    cfg = sc.default_config()
    assert cfg["thresholds"]["min_sub_comments"] == 10
    with pytest.raises(sc.ConfigError):
        sc.run("ingest", {"thresholds": {"bogus": 1}})


def test_missing_artifact(tmp_path):
    with pytest.raises(sc.MissingArtifactError):
        sc.run("profiles", outdir=str(tmp_path))


def test_demo_run(tmp_path):
    sc.run("all", outdir=str(tmp_path))
    with open(tmp_path / "conflict_graph.csv") as f:
        rows = list(csv.DictReader(f))
    truth = json.loads(sc.generate_jsonl("demo")[1])
    assert len(rows) == len(truth["edges"])
    assert (tmp_path / "conflict_graph.graphml").exists()
