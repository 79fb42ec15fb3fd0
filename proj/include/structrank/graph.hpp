#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace structrank {

struct IngestReport {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges_dropped = 0;
    bool has_weights = false;
};

/// Immutable simple graph. Node ids are external string labels; internal
/// indices are 0..n-1, assigned in first-appearance order. Directed inputs
/// keep their directed edge count, but adjacency is always the undirected
/// projection — that is what every structural feature kernel consumes.
class Graph {
  public:
    struct InputEdge {
        std::int32_t src = 0;
        std::int32_t dst = 0;
        double weight = 1.0;
    };

    Graph() = default;

    /// Builds the graph, dropping self-loops and duplicate edges (for
    /// undirected graphs (u,v) and (v,u) are the same edge). Drops are
    /// counted in the ingest report.
    Graph(std::vector<std::string> node_ids, const std::vector<InputEdge>& edges, bool directed,
          bool has_weights = false);

    static Graph from_edge_pairs(std::vector<std::string> node_ids,
                                 const std::vector<std::pair<std::int32_t, std::int32_t>>& edges,
                                 bool directed = false);

    std::size_t node_count() const { return node_ids_.size(); }

    /// Unique edges as ingested: ordered pairs when directed, unordered
    /// otherwise.
    std::size_t edge_count() const { return edges_.size(); }

    /// Edges of the undirected projection.
    std::size_t undirected_edge_count() const { return undirected_edge_count_; }

    bool directed() const { return directed_; }
    bool has_weights() const { return ingest_.has_weights; }

    const std::vector<std::string>& node_ids() const { return node_ids_; }
    const std::string& node_id(std::size_t u) const { return node_ids_[u]; }
    std::optional<std::int32_t> index_of(const std::string& id) const;

    /// Sorted neighbor list in the undirected projection.
    const std::vector<std::int32_t>& neighbors(std::size_t u) const { return adj_[u]; }
    std::size_t degree(std::size_t u) const { return adj_[u].size(); }

    const std::vector<InputEdge>& edges() const { return edges_; }
    const IngestReport& ingest_report() const { return ingest_; }

  private:
    std::vector<std::string> node_ids_;
    std::unordered_map<std::string, std::int32_t> index_;
    std::vector<std::vector<std::int32_t>> adj_;
    std::vector<InputEdge> edges_;
    bool directed_ = false;
    std::size_t undirected_edge_count_ = 0;
    IngestReport ingest_;
};

enum class Delimiter { Auto, Space, Tab, Comma };

/// Parses "src dst [weight]" lines; '#' starts a comment. Auto delimiter
/// detection looks at the first data line (comma, then tab, else whitespace).
/// Malformed lines raise with the offending line number; a file with no data
/// lines raises.
Graph load_edge_list(const std::string& path, bool directed, Delimiter delimiter = Delimiter::Auto);

/// Same as load_edge_list but from a stream; `origin` names the source in
/// error messages.
Graph parse_edge_list(std::istream& in, bool directed, Delimiter delimiter,
                      const std::string& origin);

struct GraphStats {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::size_t min_degree = 0;
    std::size_t max_degree = 0;
    double avg_degree = 0.0;
    double median_degree = 0.0;
    std::size_t component_count = 0;
    std::size_t largest_component_size = 0;
    std::size_t isolated_node_count = 0;
    double global_clustering = 0.0;
    double avg_local_clustering = 0.0;
};

/// Degrees, components and clustering are computed on the undirected
/// projection; edge_count echoes Graph::edge_count(). Requires n >= 1.
GraphStats compute_stats(const Graph& g);

/// Per-node triangle counts on the undirected projection.
std::vector<std::int64_t> triangle_counts(const Graph& g);

/// Component id per node (ids are 0-based, assigned in node order) plus the
/// number of components.
std::pair<std::vector<std::int32_t>, std::size_t> connected_components(const Graph& g);

}  // namespace structrank
