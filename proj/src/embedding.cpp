#include "structrank/embedding.hpp"

#include <stdexcept>

#include "structrank/csv.hpp"
#include "structrank/rng.hpp"

namespace structrank {

EmbeddingMatrix load_embedding(const std::string& path, const Graph& g) {
    auto nm = csv::read_matrix(path);
    auto [values, dropped] = csv::align_rows(nm, g);
    EmbeddingMatrix out;
    out.values = std::move(values);
    out.source_name = path;
    out.extra_rows_dropped = dropped;
    if (out.values.cols() < 1) throw std::runtime_error(path + ": embedding has no dimensions");
    return out;
}

void save_embedding(const EmbeddingMatrix& e, const Graph& g, const std::string& path) {
    std::vector<std::string> names;
    for (std::size_t c = 0; c < e.values.cols(); ++c) names.push_back("d" + std::to_string(c));
    csv::write_matrix(path, g, e.values, names);
}

EmbeddingMatrix fixed_embedding(const Graph& g, std::span<const double> feature, std::size_t dims,
                                std::size_t target_dim, std::uint64_t seed) {
    if (dims < 1) throw std::invalid_argument("fixed_embedding: dims must be >= 1");
    if (target_dim >= dims)
        throw std::invalid_argument("fixed_embedding: target_dim " + std::to_string(target_dim) +
                                    " out of range for " + std::to_string(dims) + " dims");
    if (feature.size() != g.node_count())
        throw std::invalid_argument("fixed_embedding: feature length does not match graph");

    EmbeddingMatrix out;
    out.values = Matrix(g.node_count(), dims);
    out.source_name = "fixed";
    Rng rng(seed);
    for (std::size_t u = 0; u < g.node_count(); ++u) {
        for (std::size_t c = 0; c < dims; ++c)
            out.values(u, c) = c == target_dim ? feature[u] : rng.uniform01();
    }
    return out;
}

EmbeddingMatrix random_embedding(const Graph& g, std::size_t dims, std::uint64_t seed) {
    if (dims < 1) throw std::invalid_argument("random_embedding: dims must be >= 1");
    EmbeddingMatrix out;
    out.values = Matrix(g.node_count(), dims);
    out.source_name = "random";
    Rng rng(seed);
    for (auto& v : out.values.data()) v = rng.uniform01();
    return out;
}

}  // namespace structrank
