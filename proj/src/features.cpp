#include "structrank/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "structrank/csv.hpp"
#include "structrank/rng.hpp"

namespace structrank {

std::size_t FeatureMatrix::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    throw std::invalid_argument("unknown feature '" + name + "'");
}

std::vector<double> FeatureMatrix::column_by_name(const std::string& name) const {
    return values.column(column_index(name));
}

FeatureMatrix FeatureMatrix::select(const std::vector<std::string>& wanted) const {
    if (wanted.empty()) throw std::invalid_argument("feature selection is empty");
    FeatureMatrix out;
    out.values = Matrix(values.rows(), wanted.size());
    for (std::size_t c = 0; c < wanted.size(); ++c) {
        out.values.set_column(c, values.column(column_index(wanted[c])));
        out.names.push_back(wanted[c]);
    }
    return out;
}

std::vector<double> degree(const Graph& g) {
    std::vector<double> out(g.node_count());
    for (std::size_t u = 0; u < out.size(); ++u) out[u] = static_cast<double>(g.degree(u));
    return out;
}

std::vector<double> local_clustering(const Graph& g) {
    const auto tri = triangle_counts(g);
    std::vector<double> out(g.node_count(), 0.0);
    for (std::size_t u = 0; u < out.size(); ++u) {
        const auto d = static_cast<double>(g.degree(u));
        if (d >= 2.0) out[u] = 2.0 * static_cast<double>(tri[u]) / (d * (d - 1.0));
    }
    return out;
}

namespace {

// Single-source BFS; dist must be sized n and is reset lazily via the
// touched list. Returns visited nodes in discovery order.
void bfs(const Graph& g, std::int32_t src, std::vector<std::int32_t>& dist,
         std::vector<std::int32_t>& order) {
    order.clear();
    dist[src] = 0;
    order.push_back(src);
    std::size_t head = 0;
    while (head < order.size()) {
        auto u = order[head++];
        for (auto v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                order.push_back(v);
            }
        }
    }
}

void reset_dist(std::vector<std::int32_t>& dist, const std::vector<std::int32_t>& order) {
    for (auto u : order) dist[u] = -1;
}

// Brandes dependency accumulation for one source.
void brandes_source(const Graph& g, std::int32_t src, std::vector<double>& bc,
                    std::vector<std::int32_t>& dist, std::vector<double>& sigma,
                    std::vector<double>& delta, std::vector<std::int32_t>& order) {
    order.clear();
    dist[src] = 0;
    sigma[src] = 1.0;
    order.push_back(src);
    std::size_t head = 0;
    while (head < order.size()) {
        auto u = order[head++];
        for (auto v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                order.push_back(v);
            }
            if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        auto w = *it;
        for (auto v : g.neighbors(w)) {
            if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        }
        if (w != src) bc[w] += delta[w];
    }
    for (auto u : order) {
        dist[u] = -1;
        sigma[u] = 0.0;
        delta[u] = 0.0;
    }
}

}  // namespace

std::vector<double> betweenness(const Graph& g, std::size_t pivots, std::uint64_t seed) {
    const auto n = g.node_count();
    std::vector<double> bc(n, 0.0);
    if (n < 3) return bc;

    std::vector<std::int32_t> dist(n, -1), order;
    std::vector<double> sigma(n, 0.0), delta(n, 0.0);
    order.reserve(n);

    std::vector<std::int32_t> sources;
    double scale = 1.0;
    if (pivots > 0 && pivots < n) {
        // seeded sample of distinct sources; estimates scale by n/pivots
        std::vector<std::int32_t> all(n);
        std::iota(all.begin(), all.end(), 0);
        Rng rng(seed);
        for (std::size_t i = 0; i < pivots; ++i)
            std::swap(all[i], all[i + rng.below(n - i)]);
        sources.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(pivots));
        std::sort(sources.begin(), sources.end());
        scale = static_cast<double>(n) / static_cast<double>(pivots);
    } else {
        sources.resize(n);
        std::iota(sources.begin(), sources.end(), 0);
    }

    for (auto s : sources) brandes_source(g, s, bc, dist, sigma, delta, order);

    // each unordered pair is accumulated from both endpoints; the pair
    // normalization (n-1)(n-2)/2 then makes the maximum 1
    const double norm =
        static_cast<double>(n - 1) * static_cast<double>(n - 2);  // == 2 * (n-1)(n-2)/2
    for (auto& v : bc) v = v * scale / norm;
    return bc;
}

std::vector<double> closeness(const Graph& g) {
    const auto n = g.node_count();
    std::vector<double> out(n, 0.0);
    std::vector<std::int32_t> dist(n, -1), order;
    order.reserve(n);
    for (std::size_t u = 0; u < n; ++u) {
        bfs(g, static_cast<std::int32_t>(u), dist, order);
        if (order.size() > 1) {
            double total = 0.0;
            for (auto v : order) total += static_cast<double>(dist[v]);
            out[u] = static_cast<double>(order.size() - 1) / total;
        }
        reset_dist(dist, order);
    }
    return out;
}

std::vector<double> harmonic(const Graph& g) {
    const auto n = g.node_count();
    std::vector<double> out(n, 0.0);
    std::vector<std::int32_t> dist(n, -1), order;
    order.reserve(n);
    for (std::size_t u = 0; u < n; ++u) {
        bfs(g, static_cast<std::int32_t>(u), dist, order);
        double total = 0.0;
        for (auto v : order)
            if (dist[v] > 0) total += 1.0 / static_cast<double>(dist[v]);
        out[u] = total;
        reset_dist(dist, order);
    }
    return out;
}

std::vector<double> pagerank(const Graph& g, double damping, double tol, int max_iter) {
    const auto n = g.node_count();
    if (n == 0) throw std::invalid_argument("pagerank: empty graph");
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> x(n, inv_n), next(n, 0.0);

    for (int iter = 1; iter <= max_iter; ++iter) {
        double dangling = 0.0;
        for (std::size_t u = 0; u < n; ++u)
            if (g.degree(u) == 0) dangling += x[u];
        const double base = (1.0 - damping) * inv_n + damping * dangling * inv_n;
        std::fill(next.begin(), next.end(), base);
        for (std::size_t u = 0; u < n; ++u) {
            if (g.degree(u) == 0) continue;
            const double share = damping * x[u] / static_cast<double>(g.degree(u));
            for (auto v : g.neighbors(u)) next[v] += share;
        }
        double residual = 0.0;
        for (std::size_t u = 0; u < n; ++u) residual += std::abs(next[u] - x[u]);
        x.swap(next);
        if (residual < tol) return x;
    }
    throw std::runtime_error("pagerank did not converge within " + std::to_string(max_iter) +
                             " iterations");
}

std::vector<double> burts_constraint(const Graph& g) {
    const auto n = g.node_count();
    std::vector<double> out(n, 0.0);
    std::vector<double> inv_deg(n, 0.0);
    for (std::size_t u = 0; u < n; ++u)
        if (g.degree(u) > 0) inv_deg[u] = 1.0 / static_cast<double>(g.degree(u));

    std::vector<bool> is_nbr(n, false);  // membership in N(u), dense scratch
    for (std::size_t u = 0; u < n; ++u) {
        const auto& nu = g.neighbors(u);
        if (nu.empty()) continue;
        const double pu = inv_deg[u];  // p_uw = 1/deg(u) for every tie of u
        for (auto w : nu) is_nbr[w] = true;
        double c = 0.0;
        for (auto v : nu) {
            double indirect = 0.0;
            for (auto w : g.neighbors(v)) {
                if (w == static_cast<std::int32_t>(u) || w == v) continue;
                if (is_nbr[w]) indirect += pu * inv_deg[w];  // p_uw * p_wv
            }
            const double term = pu + indirect;
            c += term * term;
        }
        out[u] = c;
        for (auto w : nu) is_nbr[w] = false;
    }
    return out;
}

std::vector<double> eigenvector(const Graph& g, double tol, int max_iter) {
    const auto n = g.node_count();
    std::vector<double> out(n, 0.0);
    if (n == 0) return out;

    auto [comp, count] = connected_components(g);
    std::vector<std::size_t> sizes(count, 0);
    for (auto c : comp) ++sizes[c];
    const auto big =
        static_cast<std::int32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

    std::vector<std::int32_t> members;
    for (std::size_t u = 0; u < n; ++u)
        if (comp[u] == big) members.push_back(static_cast<std::int32_t>(u));
    const double init = 1.0 / std::sqrt(static_cast<double>(members.size()));

    std::vector<double> x(n, 0.0), next(n, 0.0);
    for (auto u : members) x[u] = init;

    for (int iter = 1; iter <= max_iter; ++iter) {
        // (A + I) x: the shift keeps bipartite components from oscillating
        for (auto u : members) {
            double acc = x[u];
            for (auto v : g.neighbors(u)) acc += x[v];
            next[u] = acc;
        }
        double norm = 0.0;
        for (auto u : members) norm += next[u] * next[u];
        norm = std::sqrt(norm);
        double diff = 0.0;
        for (auto u : members) {
            next[u] /= norm;
            diff = std::max(diff, std::abs(next[u] - x[u]));
            x[u] = next[u];
        }
        if (diff < tol) {
            for (auto u : members) out[u] = x[u];
            return out;
        }
    }
    throw std::runtime_error("eigenvector centrality did not converge within " +
                             std::to_string(max_iter) + " iterations");
}

std::vector<double> core_number(const Graph& g) {
    const auto n = g.node_count();
    std::vector<std::size_t> deg(n);
    std::size_t max_deg = 0;
    for (std::size_t u = 0; u < n; ++u) {
        deg[u] = g.degree(u);
        max_deg = std::max(max_deg, deg[u]);
    }
    // bucket sort by degree, then peel (Batagelj-Zaversnik)
    std::vector<std::size_t> bin(max_deg + 1, 0), pos(n), vert(n);
    for (std::size_t u = 0; u < n; ++u) ++bin[deg[u]];
    std::size_t start = 0;
    for (std::size_t d = 0; d <= max_deg; ++d) {
        auto width = bin[d];
        bin[d] = start;
        start += width;
    }
    for (std::size_t u = 0; u < n; ++u) {
        pos[u] = bin[deg[u]]++;
        vert[pos[u]] = u;
    }
    for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
    if (!bin.empty()) bin[0] = 0;

    std::vector<std::size_t> core = deg;
    for (std::size_t i = 0; i < n; ++i) {
        auto u = vert[i];
        for (auto v_signed : g.neighbors(u)) {
            auto v = static_cast<std::size_t>(v_signed);
            if (core[v] > core[u]) {
                auto dv = core[v];
                auto pv = pos[v];
                auto pw = bin[dv];
                auto w = vert[pw];
                if (v != w) {
                    std::swap(vert[pv], vert[pw]);
                    pos[v] = pw;
                    pos[w] = pv;
                }
                ++bin[dv];
                --core[v];
            }
        }
    }
    std::vector<double> out(n);
    for (std::size_t u = 0; u < n; ++u) out[u] = static_cast<double>(core[u]);
    return out;
}

std::vector<double> triangle_count(const Graph& g) {
    const auto tri = triangle_counts(g);
    std::vector<double> out(tri.size());
    for (std::size_t u = 0; u < tri.size(); ++u) out[u] = static_cast<double>(tri[u]);
    return out;
}

std::vector<double> avg_neighbor_degree(const Graph& g) {
    const auto n = g.node_count();
    std::vector<double> out(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        const auto& nu = g.neighbors(u);
        if (nu.empty()) continue;
        double acc = 0.0;
        for (auto v : nu) acc += static_cast<double>(g.degree(v));
        out[u] = acc / static_cast<double>(nu.size());
    }
    return out;
}

std::vector<double> two_hop_size(const Graph& g) {
    const auto n = g.node_count();
    std::vector<double> out(n, 0.0);
    std::vector<std::int32_t> mark(n, -1);
    for (std::size_t u = 0; u < n; ++u) {
        std::size_t count = 0;
        const auto ui = static_cast<std::int32_t>(u);
        mark[u] = ui;
        for (auto v : g.neighbors(u)) {
            if (mark[v] != ui) {
                mark[v] = ui;
                ++count;
            }
            for (auto w : g.neighbors(v)) {
                if (mark[w] != ui) {
                    mark[w] = ui;
                    ++count;
                }
            }
        }
        out[u] = static_cast<double>(count);
    }
    return out;
}

const std::vector<std::string>& battery_feature_names() {
    static const std::vector<std::string> names = {
        "degree",      "local_clustering", "betweenness",      "closeness",
        "harmonic",    "pagerank",         "burts_constraint", "eigenvector",
        "core_number", "triangles",        "avg_neighbor_degree", "two_hop_size"};
    return names;
}

std::vector<double> feature_by_name(const Graph& g, const std::string& name) {
    if (name == "degree") return degree(g);
    if (name == "local_clustering") return local_clustering(g);
    if (name == "betweenness") return betweenness(g);
    if (name == "closeness") return closeness(g);
    if (name == "harmonic") return harmonic(g);
    if (name == "pagerank") return pagerank(g);
    if (name == "burts_constraint") return burts_constraint(g);
    if (name == "eigenvector") return eigenvector(g);
    if (name == "core_number") return core_number(g);
    if (name == "triangles") return triangle_count(g);
    if (name == "avg_neighbor_degree") return avg_neighbor_degree(g);
    if (name == "two_hop_size") return two_hop_size(g);
    throw std::invalid_argument("unknown feature '" + name + "'");
}

FeatureMatrix extended_battery(const Graph& g, std::size_t betweenness_pivots,
                               std::uint64_t seed) {
    FeatureMatrix out;
    out.names = battery_feature_names();
    std::vector<std::vector<double>> cols;
    cols.reserve(out.names.size());
    for (const auto& name : out.names) {
        if (name == "betweenness")
            cols.push_back(betweenness(g, betweenness_pivots, seed));
        else
            cols.push_back(feature_by_name(g, name));
    }
    out.values = Matrix::from_columns(cols);
    if (!out.values.all_finite())
        throw std::runtime_error("extended_battery produced a non-finite value");
    return out;
}

void save_features(const FeatureMatrix& f, const Graph& g, const std::string& path) {
    csv::write_matrix(path, g, f.values, f.names);
}

FeatureMatrix load_features(const std::string& path, const Graph& g) {
    auto nm = csv::read_matrix(path);
    auto [values, dropped] = csv::align_rows(nm, g);
    (void)dropped;
    FeatureMatrix out;
    out.values = std::move(values);
    out.names = nm.col_names;
    return out;
}

}  // namespace structrank
