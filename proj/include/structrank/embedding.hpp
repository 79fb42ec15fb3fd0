#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "structrank/graph.hpp"
#include "structrank/matrix.hpp"

namespace structrank {

/// n x k embedding matrix, rows in graph node order.
struct EmbeddingMatrix {
    Matrix values;
    std::string source_name;
    std::size_t extra_rows_dropped = 0;

    std::size_t dimension() const { return values.cols(); }
};

/// Loads "node_id,d0,d1,..." (header optional). Rows are reordered to graph
/// node order; file ids not in the graph are dropped (counted); graph ids
/// missing from the file raise, naming the first 10.
EmbeddingMatrix load_embedding(const std::string& path, const Graph& g);

void save_embedding(const EmbeddingMatrix& e, const Graph& g, const std::string& path);

/// Copies `feature` into column target_dim and fills the other dims-1 columns
/// with seeded uniform[0,1) noise.
EmbeddingMatrix fixed_embedding(const Graph& g, std::span<const double> feature, std::size_t dims,
                                std::size_t target_dim, std::uint64_t seed);

/// All entries i.i.d. uniform[0,1); the structure-free negative control.
EmbeddingMatrix random_embedding(const Graph& g, std::size_t dims, std::uint64_t seed);

}  // namespace structrank
