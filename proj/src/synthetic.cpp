#include "structrank/synthetic.hpp"

#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "structrank/rng.hpp"

namespace structrank {

namespace {

inline std::uint64_t edge_key(std::int32_t a, std::int32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

struct Builder {
    std::vector<std::pair<std::int32_t, std::int32_t>> edges;
    std::unordered_set<std::uint64_t> present;
    std::vector<std::string> roles;
    std::vector<std::int32_t> boundary;
    std::int32_t next = 0;

    std::int32_t add_node(const std::string& role) {
        roles.push_back(role);
        return next++;
    }

    bool add_edge(std::int32_t a, std::int32_t b) {
        if (a == b) return false;
        if (!present.insert(edge_key(a, b)).second) return false;
        edges.emplace_back(a, b);
        return true;
    }

    void ring(const std::vector<std::int32_t>& layer) {
        if (layer.size() == 2) {
            add_edge(layer[0], layer[1]);
            return;
        }
        if (layer.size() < 3) return;
        for (std::size_t i = 0; i < layer.size(); ++i)
            add_edge(layer[i], layer[(i + 1) % layer.size()]);
    }

    // root -> every mid node; leaf j hangs off mid (j mod k1), round-robin
    void radial_tree(std::int32_t root, const std::vector<std::int32_t>& mid,
                     const std::vector<std::int32_t>& leaves) {
        for (auto m : mid) add_edge(root, m);
        for (std::size_t j = 0; j < leaves.size(); ++j)
            add_edge(mid[j % mid.size()], leaves[j]);
    }

    std::vector<std::int32_t> add_layer(const std::string& role, int count) {
        std::vector<std::int32_t> layer;
        layer.reserve(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i) layer.push_back(add_node(role));
        return layer;
    }
};

}  // namespace

std::size_t SyntheticSpec::expected_node_count() const {
    return static_cast<std::size_t>(n_web) * (1 + k_w1 + k_w2) +
           static_cast<std::size_t>(n_star) * (1 + k_s1 + k_s2) +
           static_cast<std::size_t>(n_dstar) * (1 + k_ds1);
}

void SyntheticSpec::validate() const {
    if (n_web < 0 || n_star < 0 || n_dstar < 0)
        throw std::invalid_argument("subgraph counts must be >= 0");
    if (n_web + n_star + n_dstar < 1)
        throw std::invalid_argument("need at least one subgraph");
    if (k_w1 < 1 || k_w2 < 1 || k_s1 < 1 || k_s2 < 1 || k_ds1 < 1)
        throw std::invalid_argument("layer sizes must be >= 1");
}

RoleLabeledGraph generate(const SyntheticSpec& spec) {
    spec.validate();
    Builder b;

    for (int i = 0; i < spec.n_web; ++i) {
        const auto root = b.add_node("w0");
        const auto mid = b.add_layer("w1", spec.k_w1);
        const auto leaves = b.add_layer("w2", spec.k_w2);
        b.radial_tree(root, mid, leaves);
        b.ring(mid);
        b.ring(leaves);
        b.boundary.insert(b.boundary.end(), leaves.begin(), leaves.end());
    }
    for (int i = 0; i < spec.n_star; ++i) {
        const auto root = b.add_node("s0");
        const auto mid = b.add_layer("s1", spec.k_s1);
        const auto leaves = b.add_layer("s2", spec.k_s2);
        b.radial_tree(root, mid, leaves);
        b.boundary.insert(b.boundary.end(), leaves.begin(), leaves.end());
    }
    for (int i = 0; i < spec.n_dstar; ++i) {
        const auto root = b.add_node("ds0");
        const auto layer = b.add_layer("ds1", spec.k_ds1);
        for (auto v : layer) b.add_edge(root, v);
        for (std::size_t a = 0; a < layer.size(); ++a)
            for (std::size_t c = a + 1; c < layer.size(); ++c) b.add_edge(layer[a], layer[c]);
        b.boundary.insert(b.boundary.end(), layer.begin(), layer.end());
    }

    GenReport report;
    report.subgraph_edges = b.edges.size();

    if (b.boundary.size() < 2)
        throw std::runtime_error("generate: need at least 2 boundary nodes to join subgraphs");

    // Join pass: uniform boundary pairs, edge added when absent, until every
    // boundary node touches a join edge. A stall triggers a feasibility scan
    // so fully saturated boundaries (e.g. one lone dStar clique) terminate.
    Rng rng(spec.seed);
    std::unordered_set<std::int32_t> uncovered(b.boundary.begin(), b.boundary.end());
    const std::uint64_t stall_window =
        std::max<std::uint64_t>(1000, 50 * b.boundary.size());
    std::uint64_t since_progress = 0;

    auto any_addable_pair = [&]() {
        for (auto u : uncovered)
            for (auto v : b.boundary)
                if (u != v && !b.present.count(edge_key(u, v))) return true;
        return false;
    };

    while (!uncovered.empty()) {
        const auto na = b.boundary[rng.below(b.boundary.size())];
        const auto nb = b.boundary[rng.below(b.boundary.size())];
        if (b.add_edge(na, nb)) {
            ++report.join_edges;
            uncovered.erase(na);
            uncovered.erase(nb);
            since_progress = 0;
        } else if (++since_progress >= stall_window) {
            if (!any_addable_pair()) {
                report.join_incomplete = true;
                break;
            }
            since_progress = 0;
        }
    }

    std::vector<std::string> ids;
    ids.reserve(b.roles.size());
    for (std::size_t u = 0; u < b.roles.size(); ++u) ids.push_back(std::to_string(u));

    RoleLabeledGraph out{Graph::from_edge_pairs(std::move(ids), b.edges, false),
                         std::move(b.roles), report};
    if (out.graph.node_count() != spec.expected_node_count())
        throw std::runtime_error("generate: node count mismatch (internal error)");
    return out;
}

void export_labels(const RoleLabeledGraph& rg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "node_id,role\n";
    for (std::size_t u = 0; u < rg.graph.node_count(); ++u)
        out << rg.graph.node_id(u) << "," << rg.roles[u] << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

void export_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    for (const auto& e : g.edges()) {
        out << g.node_id(static_cast<std::size_t>(e.src)) << " "
            << g.node_id(static_cast<std::size_t>(e.dst)) << "\n";
    }
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace structrank
