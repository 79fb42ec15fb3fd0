#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "structrank/embedding.hpp"
#include "structrank/eval.hpp"
#include "structrank/features.hpp"
#include "test_support.hpp"

using namespace structrank;
using namespace testsupport;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content) : path(name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("embedding") {

TEST_CASE("load reorders rows to graph node order") {
    const auto g = Graph::from_edge_pairs({"a", "b", "c"}, {{0, 1}, {1, 2}});
    TempFile sorted("emb_sorted.csv", "a,1,2,3,4\nb,5,6,7,8\nc,9,10,11,12\n");
    TempFile shuffled("emb_shuffled.csv", "c,9,10,11,12\na,1,2,3,4\nb,5,6,7,8\n");

    const auto e1 = load_embedding(sorted.path, g);
    CHECK(e1.dimension() == 4);
    CHECK(e1.values.rows() == 3);
    CHECK(e1.values(0, 0) == 1.0);
    CHECK(e1.values(2, 3) == 12.0);

    const auto e2 = load_embedding(shuffled.path, g);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 4; ++c) CHECK(e2.values(r, c) == e1.values(r, c));
}

TEST_CASE("missing node ids raise, extras are dropped with a count") {
    const auto g = Graph::from_edge_pairs({"a", "b", "c"}, {{0, 1}, {1, 2}});
    TempFile missing("emb_missing.csv", "a,1\nb,2\n");
    CHECK_THROWS_WITH_AS(load_embedding(missing.path, g), doctest::Contains("c"),
                         std::runtime_error);

    TempFile extra("emb_extra.csv", "a,1\nb,2\nc,3\nzz,4\n");
    const auto e = load_embedding(extra.path, g);
    CHECK(e.extra_rows_dropped == 1);
    CHECK(e.values.rows() == 3);
}

TEST_CASE("header detection and malformed cells") {
    const auto g = Graph::from_edge_pairs({"a", "b"}, {{0, 1}});
    TempFile with_header("emb_header.csv", "node_id,d0,d1\na,1,2\nb,3,4\n");
    const auto e = load_embedding(with_header.path, g);
    CHECK(e.dimension() == 2);
    CHECK(e.values(1, 1) == 4.0);

    TempFile bad("emb_bad.csv", "a,1,2\nb,3,oops\n");
    CHECK_THROWS_WITH_AS(load_embedding(bad.path, g), doctest::Contains("2"),
                         std::runtime_error);
}

TEST_CASE("save/load round-trips exactly") {
    const auto g = star_graph(4);
    const auto e = random_embedding(g, 6, 123);
    const std::string path = "emb_roundtrip.csv";
    save_embedding(e, g, path);
    const auto back = load_embedding(path, g);
    REQUIRE(back.dimension() == e.dimension());
    for (std::size_t r = 0; r < e.values.rows(); ++r)
        for (std::size_t c = 0; c < e.values.cols(); ++c)
            CHECK(back.values(r, c) == e.values(r, c));  // bit-exact via round-trip formatting
    std::remove(path.c_str());
}

TEST_CASE("fixed embedding copies the feature into the target dimension") {
    const auto g = star_graph(7);
    const auto deg = degree(g);

    const auto e = fixed_embedding(g, deg, 8, 0, 42);
    for (std::size_t u = 0; u < g.node_count(); ++u) {
        CHECK(e.values(u, 0) == deg[u]);
        for (std::size_t c = 1; c < 8; ++c) {
            CHECK(e.values(u, c) >= 0.0);
            CHECK(e.values(u, c) < 1.0);
        }
    }

    // exact correlation 1 with the source feature
    std::vector<double> col(g.node_count());
    for (std::size_t u = 0; u < g.node_count(); ++u) col[u] = e.values(u, 0);
    CHECK(*pearson(col, deg) == doctest::Approx(1.0).epsilon(1e-15));

    const auto one = fixed_embedding(g, deg, 1, 0, 42);
    for (std::size_t u = 0; u < g.node_count(); ++u) CHECK(one.values(u, 0) == deg[u]);
}

TEST_CASE("fixed embedding is deterministic and validates target_dim") {
    const auto g = path_graph(5);
    const auto deg = degree(g);
    const auto a = fixed_embedding(g, deg, 4, 2, 9);
    const auto b = fixed_embedding(g, deg, 4, 2, 9);
    CHECK(a.values.data() == b.values.data());
    CHECK_THROWS_AS(fixed_embedding(g, deg, 4, 4, 9), std::invalid_argument);
    CHECK_THROWS_AS(fixed_embedding(g, deg, 0, 0, 9), std::invalid_argument);
}

TEST_CASE("random embedding is reproducible, finite and seed-sensitive") {
    const auto g = path_graph(100);
    const auto a = random_embedding(g, 8, 7);
    const auto b = random_embedding(g, 8, 7);
    const auto c = random_embedding(g, 8, 8);
    CHECK(a.values.rows() == 100);
    CHECK(a.values.cols() == 8);
    CHECK(a.values.all_finite());
    CHECK(a.values.data() == b.values.data());
    CHECK(a.values.data() != c.values.data());
}

}  // TEST_SUITE
