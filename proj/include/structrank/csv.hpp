#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "structrank/graph.hpp"
#include "structrank/matrix.hpp"

namespace structrank::csv {

/// Shortest round-trip decimal representation.
std::string format_double(double v);

/// Strict double parse; throws with `context` prefixed on failure.
double parse_double(const std::string& token, const std::string& context);

struct NamedMatrix {
    std::vector<std::string> row_ids;
    std::vector<std::string> col_names;
    Matrix values;
    bool had_header = false;
};

/// Reads "id,v0,v1,..." rows. A header row is assumed when any value cell of
/// the first row fails to parse as a number; without one, columns are named
/// d0..d{k-1}.
NamedMatrix read_matrix(const std::string& path);

/// Reorders rows into graph node order. Throws listing up to the first 10
/// graph ids missing from the file; rows whose id is not in the graph are
/// dropped and counted.
std::pair<Matrix, std::size_t> align_rows(const NamedMatrix& m, const Graph& g);

/// Writes "node_id,<col_names...>" with full-precision values.
void write_matrix(const std::string& path, const Graph& g, const Matrix& values,
                  const std::vector<std::string>& col_names);

}  // namespace structrank::csv
