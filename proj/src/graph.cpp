#include "structrank/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace structrank {

namespace {

inline std::uint64_t pair_key(std::int32_t a, std::int32_t b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

}  // namespace

Graph::Graph(std::vector<std::string> node_ids, const std::vector<InputEdge>& edges, bool directed,
             bool has_weights)
    : node_ids_(std::move(node_ids)), directed_(directed) {
    const auto n = static_cast<std::int32_t>(node_ids_.size());
    index_.reserve(node_ids_.size());
    for (std::int32_t i = 0; i < n; ++i) {
        auto [it, fresh] = index_.emplace(node_ids_[i], i);
        if (!fresh) throw std::invalid_argument("duplicate node id '" + node_ids_[i] + "'");
    }
    ingest_.has_weights = has_weights;

    std::unordered_set<std::uint64_t> seen;
    std::unordered_set<std::uint64_t> seen_undirected;
    seen.reserve(edges.size() * 2);
    adj_.resize(node_ids_.size());

    for (const auto& e : edges) {
        if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (e.src == e.dst) {
            ++ingest_.self_loops_dropped;
            continue;
        }
        const auto lo = std::min(e.src, e.dst);
        const auto hi = std::max(e.src, e.dst);
        const auto key = directed_ ? pair_key(e.src, e.dst) : pair_key(lo, hi);
        if (!seen.insert(key).second) {
            ++ingest_.duplicate_edges_dropped;
            continue;
        }
        edges_.push_back(e);
        if (directed_) {
            if (seen_undirected.insert(pair_key(lo, hi)).second) {
                adj_[e.src].push_back(e.dst);
                adj_[e.dst].push_back(e.src);
                ++undirected_edge_count_;
            }
        } else {
            adj_[e.src].push_back(e.dst);
            adj_[e.dst].push_back(e.src);
            ++undirected_edge_count_;
        }
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

Graph Graph::from_edge_pairs(std::vector<std::string> node_ids,
                             const std::vector<std::pair<std::int32_t, std::int32_t>>& edges,
                             bool directed) {
    std::vector<InputEdge> in;
    in.reserve(edges.size());
    for (auto [u, v] : edges) in.push_back({u, v, 1.0});
    return Graph(std::move(node_ids), in, directed, false);
}

std::optional<std::int32_t> Graph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

namespace {

std::vector<std::string> tokenize(const std::string& line, Delimiter delim) {
    std::vector<std::string> out;
    if (delim == Delimiter::Space) {
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) out.push_back(tok);
        return out;
    }
    const char sep = delim == Delimiter::Comma ? ',' : '\t';
    std::size_t start = 0;
    for (;;) {
        std::size_t pos = line.find(sep, start);
        std::string tok =
            pos == std::string::npos ? line.substr(start) : line.substr(start, pos - start);
        // strip surrounding blanks and a trailing \r
        std::size_t b = tok.find_first_not_of(" \t\r");
        std::size_t e = tok.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : tok.substr(b, e - b + 1));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (out.size() == 1 && out[0].empty()) out.clear();
    return out;
}

Delimiter detect_delimiter(const std::string& line) {
    if (line.find(',') != std::string::npos) return Delimiter::Comma;
    if (line.find('\t') != std::string::npos) return Delimiter::Tab;
    return Delimiter::Space;
}

bool is_blank_or_comment(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (ch != ' ' && ch != '\t' && ch != '\r') return false;
    }
    return true;
}

}  // namespace

Graph parse_edge_list(std::istream& in, bool directed, Delimiter delimiter,
                      const std::string& origin) {
    std::vector<std::string> node_ids;
    std::unordered_map<std::string, std::int32_t> index;
    auto intern = [&](const std::string& id) {
        auto it = index.find(id);
        if (it != index.end()) return it->second;
        auto idx = static_cast<std::int32_t>(node_ids.size());
        node_ids.push_back(id);
        index.emplace(id, idx);
        return idx;
    };

    std::vector<Graph::InputEdge> edges;
    bool any_weight = false;
    std::string line;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        if (delimiter == Delimiter::Auto) delimiter = detect_delimiter(line);

        auto toks = tokenize(line, delimiter);
        if (toks.size() != 2 && toks.size() != 3)
            throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                     ": expected 2 or 3 fields, got " +
                                     std::to_string(toks.size()));
        for (const auto& t : toks)
            if (t.empty())
                throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": empty field");

        Graph::InputEdge e;
        e.src = intern(toks[0]);
        e.dst = intern(toks[1]);
        if (toks.size() == 3) {
            double w = 0.0;
            auto [ptr, ec] = std::from_chars(toks[2].data(), toks[2].data() + toks[2].size(), w);
            if (ec != std::errc{} || ptr != toks[2].data() + toks[2].size())
                throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                         ": invalid weight '" + toks[2] + "'");
            e.weight = w;
            any_weight = true;
        }
        edges.push_back(e);
    }

    if (edges.empty()) throw std::runtime_error(origin + ": no edges found");
    return Graph(std::move(node_ids), edges, directed, any_weight);
}

Graph load_edge_list(const std::string& path, bool directed, Delimiter delimiter) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    return parse_edge_list(in, directed, delimiter, path);
}

std::pair<std::vector<std::int32_t>, std::size_t> connected_components(const Graph& g) {
    const auto n = g.node_count();
    std::vector<std::int32_t> comp(n, -1);
    std::size_t count = 0;
    std::vector<std::int32_t> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (comp[start] >= 0) continue;
        const auto id = static_cast<std::int32_t>(count++);
        comp[start] = id;
        stack.push_back(static_cast<std::int32_t>(start));
        while (!stack.empty()) {
            auto u = stack.back();
            stack.pop_back();
            for (auto v : g.neighbors(u)) {
                if (comp[v] < 0) {
                    comp[v] = id;
                    stack.push_back(v);
                }
            }
        }
    }
    return {std::move(comp), count};
}

std::vector<std::int64_t> triangle_counts(const Graph& g) {
    const auto n = g.node_count();
    std::vector<std::int64_t> tri(n, 0);
    // neighbor lists are sorted; intersect per edge, counting each triangle
    // once via u < v < w
    for (std::size_t u = 0; u < n; ++u) {
        const auto& nu = g.neighbors(u);
        for (auto v : nu) {
            if (v <= static_cast<std::int32_t>(u)) continue;
            const auto& nv = g.neighbors(v);
            auto iu = std::upper_bound(nu.begin(), nu.end(), v);
            auto iv = std::upper_bound(nv.begin(), nv.end(), v);
            while (iu != nu.end() && iv != nv.end()) {
                if (*iu < *iv)
                    ++iu;
                else if (*iv < *iu)
                    ++iv;
                else {
                    ++tri[u];
                    ++tri[v];
                    ++tri[*iu];
                    ++iu;
                    ++iv;
                }
            }
        }
    }
    return tri;
}

GraphStats compute_stats(const Graph& g) {
    const auto n = g.node_count();
    if (n < 1) throw std::invalid_argument("compute_stats: graph has no nodes");

    GraphStats s;
    s.node_count = n;
    s.edge_count = g.edge_count();

    std::vector<std::size_t> degrees(n);
    for (std::size_t u = 0; u < n; ++u) degrees[u] = g.degree(u);
    auto sorted = degrees;
    std::sort(sorted.begin(), sorted.end());
    s.min_degree = sorted.front();
    s.max_degree = sorted.back();
    double deg_sum = 0.0;
    for (auto d : degrees) deg_sum += static_cast<double>(d);
    s.avg_degree = deg_sum / static_cast<double>(n);
    s.median_degree = (n % 2 == 1) ? static_cast<double>(sorted[n / 2])
                                   : (static_cast<double>(sorted[n / 2 - 1]) +
                                      static_cast<double>(sorted[n / 2])) /
                                         2.0;
    s.isolated_node_count =
        static_cast<std::size_t>(std::count(degrees.begin(), degrees.end(), std::size_t{0}));

    auto [comp, count] = connected_components(g);
    s.component_count = count;
    std::vector<std::size_t> comp_sizes(count, 0);
    for (auto c : comp) ++comp_sizes[c];
    s.largest_component_size = *std::max_element(comp_sizes.begin(), comp_sizes.end());

    auto tri = triangle_counts(g);
    std::int64_t closed = 0;  // 3 * triangle count, summed per corner
    double triads = 0.0;
    double local_sum = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
        const auto d = static_cast<double>(degrees[u]);
        closed += tri[u];
        triads += d * (d - 1.0) / 2.0;
        if (degrees[u] >= 2) local_sum += static_cast<double>(tri[u]) / (d * (d - 1.0) / 2.0);
    }
    s.global_clustering = triads > 0.0 ? static_cast<double>(closed) / triads : 0.0;
    s.avg_local_clustering = local_sum / static_cast<double>(n);
    return s;
}

}  // namespace structrank
