#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "structrank/graph.hpp"

namespace structrank {

/// The 8 generator parameters plus the RNG seed. A Web subgraph is a root
/// (w0) fanning out to a k_w1 ring (w1) whose nodes share k_w2 ring nodes
/// (w2) round-robin; a Star is the same radial tree without the rings; a
/// dStar is a root (ds0) plus a k_ds1 clique (ds1).
struct SyntheticSpec {
    int n_web = 0;
    int n_star = 0;
    int n_dstar = 0;
    int k_w1 = 1, k_w2 = 1;
    int k_s1 = 1, k_s2 = 1;
    int k_ds1 = 1;
    std::uint64_t seed = 0;

    std::size_t expected_node_count() const;
    void validate() const;  // throws std::invalid_argument
};

struct GenReport {
    std::size_t subgraph_edges = 0;
    std::size_t join_edges = 0;
    /// Set when some boundary node could not receive a join edge because no
    /// absent pair remained (e.g. a lone dStar whose clique already connects
    /// its whole boundary).
    bool join_incomplete = false;
};

struct RoleLabeledGraph {
    Graph graph;
    std::vector<std::string> roles;  // per node: w0,w1,w2,s0,s1,s2,ds0,ds1
    GenReport report;
};

/// Builds the subgraphs, then repeatedly picks two distinct boundary nodes
/// (w2/s2/ds1) uniformly at random and adds the edge if absent, until every
/// boundary node touches at least one join edge. Node ids are "0".."n-1".
/// Deterministic given spec.seed. Throws if fewer than 2 boundary nodes
/// exist.
RoleLabeledGraph generate(const SyntheticSpec& spec);

/// CSV "node_id,role".
void export_labels(const RoleLabeledGraph& rg, const std::string& path);

/// One "src dst" line per edge.
void export_edge_list(const Graph& g, const std::string& path);

}  // namespace structrank
