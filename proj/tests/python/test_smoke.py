"""Smoke tests for the python bindings: the main operations end to end."""

import numpy as np
import pytest

import structrank as sr


@pytest.fixture(scope="module")
def synthetic():
    g, roles, report = sr.generate_synthetic(5, 5, 5, 5, 10, 5, 10, 5, seed=3)
    return g, roles, report


def test_generate_synthetic_counts(synthetic):
    g, roles, report = synthetic
    assert g.node_count == 5 * 16 + 5 * 16 + 5 * 6 == 190
    assert len(roles) == g.node_count
    assert set(roles) <= {"w0", "w1", "w2", "s0", "s1", "s2", "ds0", "ds1"}
    assert report["join_edges"] > 0
    assert not report["join_incomplete"]


def test_graph_stats_and_edges(synthetic):
    g, _, _ = synthetic
    stats = g.stats()
    assert stats["node_count"] == g.node_count
    assert stats["component_count"] >= 1
    assert 0.0 <= stats["global_clustering"] <= 1.0
    assert g.degree(0) == len(g.neighbors(0))


def test_graph_load_roundtrip(tmp_path, synthetic):
    path = tmp_path / "edges.txt"
    path.write_text("a b\nb c\nc a\n")
    g = sr.Graph.load(str(path))
    assert g.node_count == 3
    assert g.edge_count == 3
    assert g.node_ids == ["a", "b", "c"]


def test_battery_shape_and_names(synthetic):
    g, _, _ = synthetic
    values, names = sr.extended_battery(g)
    assert values.shape == (g.node_count, 12)
    assert names == sr.battery_feature_names()
    assert np.isfinite(values).all()
    deg = sr.feature(g, "degree")
    np.testing.assert_array_equal(values[:, names.index("degree")], deg)


def test_evaluate_recovers_planted_dimension(synthetic):
    g, _, _ = synthetic
    deg = sr.feature(g, "degree")
    emb = sr.fixed_embedding(g, deg, dims=8, target_dim=2, seed=11)
    np.testing.assert_array_equal(emb[:, 2], deg)
    res = sr.evaluate(deg.reshape(-1, 1), emb, seed=42)
    assert res["psi_post"] < 0.05
    assert res["weights"][2] > 0.9
    assert res["psi_pre"] >= res["psi_post"]


def test_evaluate_noise_scores_badly(synthetic):
    g, _, _ = synthetic
    deg = sr.feature(g, "degree")
    emb = sr.random_embedding(g, dims=8, seed=5)
    res = sr.evaluate(deg.reshape(-1, 1), emb, seed=42)
    assert res["psi_post"] > 0.5


def test_evaluate_is_deterministic(synthetic):
    g, _, _ = synthetic
    deg = sr.feature(g, "degree")
    emb = sr.random_embedding(g, dims=4, seed=9)
    a = sr.evaluate(deg.reshape(-1, 1), emb, seed=7)
    b = sr.evaluate(deg.reshape(-1, 1), emb, seed=7)
    assert a["psi_post"] == b["psi_post"]
    np.testing.assert_array_equal(a["weights"], b["weights"])
    assert a["cluster_sizes"] == b["cluster_sizes"]


def test_embedding_csv_roundtrip(tmp_path, synthetic):
    g, _, _ = synthetic
    emb = sr.random_embedding(g, dims=3, seed=1)
    path = tmp_path / "emb.csv"
    lines = ["node_id,d0,d1,d2"]
    for i, node in enumerate(g.node_ids):
        lines.append(",".join([node] + [repr(v) for v in emb[i]]))
    path.write_text("\n".join(lines) + "\n")
    back = sr.load_embedding(str(path), g)
    np.testing.assert_allclose(back, emb, rtol=0, atol=0)


def test_rank_orders_embeddings(synthetic):
    g, _, _ = synthetic
    values, names = sr.extended_battery(g)
    deg = sr.feature(g, "degree")
    report = sr.rank(
        values[:, :2],
        names[:2],
        [("fixed", sr.fixed_embedding(g, deg, dims=6, seed=1)),
         ("noise", sr.random_embedding(g, dims=6, seed=2))],
        seed=5,
    )
    ranking = report["ranking"]
    assert [r["embedding"] for r in ranking] == ["fixed", "noise"]
    assert ranking[0]["mean_psi_post"] < ranking[1]["mean_psi_post"]
    assert len(report["rows"]) == 4


def test_convergence_study_shape(synthetic):
    g, _, _ = synthetic
    values, _ = sr.extended_battery(g)
    deg = sr.feature(g, "degree")
    emb = sr.fixed_embedding(g, deg, dims=4, seed=3)
    table = sr.convergence_study(values, emb, vary="pairs", grid=[0.5, 1.0], repeats=2, seed=1)
    assert len(table["points"]) == 2
    assert table["long_run_average"] == table["points"][-1]["mean_psi_post"]
