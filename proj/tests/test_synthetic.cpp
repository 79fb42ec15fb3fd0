#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "structrank/rng.hpp"
#include "structrank/synthetic.hpp"
#include "test_support.hpp"

using namespace structrank;

TEST_SUITE("synthetic") {

TEST_CASE("a single web subgraph has the expected layers and ring edges") {
    const auto rg = generate({1, 0, 0, 5, 10, 1, 1, 1, 3});
    CHECK(rg.graph.node_count() == 16);

    std::map<std::string, int> counts;
    for (const auto& r : rg.roles) ++counts[r];
    CHECK(counts["w0"] == 1);
    CHECK(counts["w1"] == 5);
    CHECK(counts["w2"] == 10);

    // spokes 5 + fan-out 10 + w1 ring 5 + w2 ring 10 = 30 intra edges
    CHECK(rg.report.subgraph_edges == 30);
    // boundary nodes join among themselves afterwards
    CHECK(rg.graph.edge_count() == 30 + rg.report.join_edges);
}

TEST_CASE("a star subgraph is the same radial tree without rings") {
    const auto rg = generate({0, 1, 0, 1, 1, 5, 10, 1, 3});
    CHECK(rg.graph.node_count() == 16);
    CHECK(rg.report.subgraph_edges == 15);  // 5 spokes + 10 fan-out
}

TEST_CASE("a lone dStar is a root plus clique whose join pool is saturated") {
    const auto rg = generate({0, 0, 1, 1, 1, 1, 1, 5, 3});
    CHECK(rg.graph.node_count() == 6);
    CHECK(rg.report.subgraph_edges == 15);  // 5 spokes + C(5,2)=10 clique edges
    CHECK(rg.graph.edge_count() == 15);     // every boundary pair already exists
    CHECK(rg.report.join_edges == 0);
    CHECK(rg.report.join_incomplete);
}

TEST_CASE("fewer than two boundary nodes is an error") {
    CHECK_THROWS_AS(generate({0, 0, 1, 1, 1, 1, 1, 1, 3}), std::runtime_error);
    CHECK_THROWS_AS(generate({0, 0, 0, 1, 1, 1, 1, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(generate({-1, 0, 1, 1, 1, 1, 1, 5, 3}), std::invalid_argument);
    CHECK_THROWS_AS(generate({1, 0, 0, 0, 1, 1, 1, 1, 3}), std::invalid_argument);
}

TEST_CASE("node count identity holds over random specs") {
    Rng rng(404);
    for (int trial = 0; trial < 40; ++trial) {
        SyntheticSpec spec;
        spec.n_web = static_cast<int>(rng.below(5));
        spec.n_star = static_cast<int>(rng.below(5));
        spec.n_dstar = static_cast<int>(rng.below(5));
        if (spec.n_web + spec.n_star + spec.n_dstar == 0) spec.n_web = 1;
        spec.k_w1 = 1 + static_cast<int>(rng.below(5));
        spec.k_w2 = 1 + static_cast<int>(rng.below(8));
        spec.k_s1 = 1 + static_cast<int>(rng.below(5));
        spec.k_s2 = 1 + static_cast<int>(rng.below(8));
        spec.k_ds1 = 2 + static_cast<int>(rng.below(6));
        spec.seed = rng.next();

        const std::size_t expected =
            static_cast<std::size_t>(spec.n_web) * (1 + spec.k_w1 + spec.k_w2) +
            static_cast<std::size_t>(spec.n_star) * (1 + spec.k_s1 + spec.k_s2) +
            static_cast<std::size_t>(spec.n_dstar) * (1 + spec.k_ds1);
        CHECK(spec.expected_node_count() == expected);
        const auto rg = generate(spec);
        CHECK(rg.graph.node_count() == expected);
        CHECK(rg.roles.size() == expected);
    }
}

TEST_CASE("every boundary node receives a join edge when the pool allows") {
    const auto rg = generate({3, 3, 3, 2, 4, 2, 4, 3, 15});
    REQUIRE_FALSE(rg.report.join_incomplete);

    // join edges are appended after the subgraph edges
    const auto& edges = rg.graph.edges();
    std::set<std::int32_t> covered;
    for (std::size_t i = rg.report.subgraph_edges; i < edges.size(); ++i) {
        covered.insert(edges[i].src);
        covered.insert(edges[i].dst);
    }
    for (std::size_t u = 0; u < rg.graph.node_count(); ++u) {
        const auto& role = rg.roles[u];
        if (role == "w2" || role == "s2" || role == "ds1")
            CHECK(covered.count(static_cast<std::int32_t>(u)) == 1);
    }
    CHECK(rg.report.join_edges == edges.size() - rg.report.subgraph_edges);
}

TEST_CASE("generation is deterministic per seed and distinct across seeds") {
    const SyntheticSpec spec{2, 2, 2, 3, 5, 3, 5, 3, 42};
    const auto a = generate(spec);
    const auto b = generate(spec);
    REQUIRE(a.graph.edge_count() == b.graph.edge_count());
    for (std::size_t i = 0; i < a.graph.edges().size(); ++i) {
        CHECK(a.graph.edges()[i].src == b.graph.edges()[i].src);
        CHECK(a.graph.edges()[i].dst == b.graph.edges()[i].dst);
    }

    SyntheticSpec other = spec;
    other.seed = 43;
    const auto c = generate(other);
    bool same = a.graph.edge_count() == c.graph.edge_count();
    if (same) {
        for (std::size_t i = 0; i < a.graph.edges().size(); ++i)
            if (a.graph.edges()[i].src != c.graph.edges()[i].src ||
                a.graph.edges()[i].dst != c.graph.edges()[i].dst) {
                same = false;
                break;
            }
    }
    CHECK_FALSE(same);
}

TEST_CASE("dStar boundary is denser than star leaves") {
    const auto rg = generate({0, 4, 4, 2, 6, 2, 6, 5, 8});
    double ds1 = 0.0, s2 = 0.0;
    int n_ds1 = 0, n_s2 = 0;
    for (std::size_t u = 0; u < rg.graph.node_count(); ++u) {
        if (rg.roles[u] == "ds1") {
            ds1 += static_cast<double>(rg.graph.degree(u));
            ++n_ds1;
        } else if (rg.roles[u] == "s2") {
            s2 += static_cast<double>(rg.graph.degree(u));
            ++n_s2;
        }
    }
    CHECK(ds1 / n_ds1 > s2 / n_s2);
}

TEST_CASE("exported labels and edge list round-trip") {
    const auto rg = generate({1, 1, 1, 2, 3, 2, 3, 3, 5});
    const std::string labels_path = "synth_labels_test.csv";
    const std::string edges_path = "synth_edges_test.txt";
    export_labels(rg, labels_path);
    export_edge_list(rg.graph, edges_path);

    std::ifstream labels(labels_path);
    std::string line;
    std::getline(labels, line);
    CHECK(line == "node_id,role");
    std::size_t rows = 0;
    const std::set<std::string> allowed = {"w0", "w1", "w2", "s0", "s1", "s2", "ds0", "ds1"};
    while (std::getline(labels, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        CHECK(allowed.count(line.substr(comma + 1)) == 1);
        ++rows;
    }
    CHECK(rows == rg.graph.node_count());

    const auto back = load_edge_list(edges_path, false);
    CHECK(back.node_count() == rg.graph.node_count());
    CHECK(back.edge_count() == rg.graph.edge_count());
    std::remove(labels_path.c_str());
    std::remove(edges_path.c_str());
}

}  // TEST_SUITE
