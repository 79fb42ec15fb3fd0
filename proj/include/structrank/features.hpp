#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "structrank/graph.hpp"
#include "structrank/matrix.hpp"

namespace structrank {

/// Named n x l matrix of structural node features, rows in graph node order.
struct FeatureMatrix {
    Matrix values;
    std::vector<std::string> names;

    std::size_t feature_count() const { return names.size(); }
    std::size_t column_index(const std::string& name) const;  // throws if absent
    std::vector<double> column_by_name(const std::string& name) const;
    FeatureMatrix select(const std::vector<std::string>& wanted) const;
};

std::vector<double> degree(const Graph& g);

/// 2*tri(u) / (deg(u)*(deg(u)-1)); 0 when deg(u) < 2.
std::vector<double> local_clustering(const Graph& g);

/// Exact Brandes betweenness normalized by (n-1)(n-2)/2. pivots > 0 switches
/// to a seeded source-sampled approximation (estimates scaled by n/pivots).
std::vector<double> betweenness(const Graph& g, std::size_t pivots = 0, std::uint64_t seed = 0);

/// (reachable-1) / sum of distances within u's component; 0 for isolated u.
std::vector<double> closeness(const Graph& g);

/// Sum of reciprocal distances; unreachable pairs contribute 0.
std::vector<double> harmonic(const Graph& g);

/// Power iteration with uniform teleport; dangling mass is redistributed
/// uniformly, so the column sums to 1. Throws if the L1 residual does not
/// drop below tol within max_iter iterations.
std::vector<double> pagerank(const Graph& g, double damping = 0.85, double tol = 1e-10,
                             int max_iter = 200);

/// Burt's constraint with p_uv = 1/deg(u); 0 for isolated nodes.
std::vector<double> burts_constraint(const Graph& g);

/// Shifted power iteration (A + I) on the largest component, L2-normalized;
/// entries outside that component are 0.
std::vector<double> eigenvector(const Graph& g, double tol = 1e-10, int max_iter = 1000);

std::vector<double> core_number(const Graph& g);
std::vector<double> triangle_count(const Graph& g);
std::vector<double> avg_neighbor_degree(const Graph& g);

/// Number of distinct nodes within distance <= 2, excluding the node itself.
std::vector<double> two_hop_size(const Graph& g);

/// Fixed, deterministic order of the 12-feature battery.
const std::vector<std::string>& battery_feature_names();

/// The 12-column battery in battery_feature_names() order.
FeatureMatrix extended_battery(const Graph& g, std::size_t betweenness_pivots = 0,
                               std::uint64_t seed = 0);

/// One battery column by name; throws on unknown names.
std::vector<double> feature_by_name(const Graph& g, const std::string& name);

/// CSV I/O ("node_id,<names...>", full-precision floats).
void save_features(const FeatureMatrix& f, const Graph& g, const std::string& path);
FeatureMatrix load_features(const std::string& path, const Graph& g);

}  // namespace structrank
