// Acceptance suite: one checkable criterion per case, each printing a single
// PASS/FAIL line. Run with no arguments for the full battery or pass
// criterion numbers to run a subset. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "structrank/embedding.hpp"
#include "structrank/eval.hpp"
#include "structrank/features.hpp"
#include "structrank/report.hpp"
#include "structrank/rng.hpp"
#include "structrank/synthetic.hpp"
#include "../test_support.hpp"

using namespace structrank;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

Matrix column_matrix(const std::vector<double>& v) {
    Matrix m(v.size(), 1);
    m.set_column(0, v);
    return m;
}

// the benchmark graph from the generator's reference parameterization:
// 200/200/200 subgraphs, layers (5,10), (5,10), (5) -> 7,600 nodes
const RoleLabeledGraph& benchmark_graph() {
    static const RoleLabeledGraph rg = generate({200, 200, 200, 5, 10, 5, 10, 5, 20240501});
    return rg;
}

// 1,000-node sibling used by the convergence criteria
const RoleLabeledGraph& kilo_graph() {
    static const RoleLabeledGraph rg = generate({20, 20, 60, 5, 10, 5, 10, 5, 998877});
    return rg;
}

const FeatureMatrix& benchmark_battery() {
    static const FeatureMatrix fm = extended_battery(benchmark_graph().graph);
    return fm;
}

struct Criterion {
    int number;
    std::string title;
    std::function<bool(std::string&)> run;
};

// ---------------------------------------------------------------------------
// 1. weight collapse onto the planted dimension
bool criterion_weight_collapse(std::string& detail) {
    const auto start = Clock::now();
    const auto& rg = benchmark_graph();
    const auto deg = column_matrix(degree(rg.graph));

    int hits = 0;
    double worst_psi = 0.0, worst_w0 = 1.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto emb = fixed_embedding(rg.graph, deg.column(0), 8, 0, 1000 + seed);
        EvalParams params;
        params.seed = seed;
        const auto res = evaluate(deg, emb.values, params);
        worst_psi = std::max(worst_psi, res.psi_post);
        worst_w0 = std::min(worst_w0, res.weights[0]);
        if (res.psi_post < 0.05 && res.weights[0] > 0.95) ++hits;
    }
    const double elapsed = seconds_since(start);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d/10 seeds collapsed (worst psi_post %.3g, worst w0 %.3g), %.1fs",
                  hits, worst_psi, worst_w0, elapsed);
    detail = buf;
    return hits >= 9 && elapsed < 120.0;
}

// 2. node-count identity of the generator
bool criterion_node_count(std::string& detail) {
    const auto start = Clock::now();
    const auto rg = generate({200, 200, 200, 5, 10, 5, 10, 5, 1});
    if (rg.graph.node_count() != 7600) {
        detail = "reference spec produced " + std::to_string(rg.graph.node_count()) + " nodes";
        return false;
    }

    Rng rng(31337);
    for (int trial = 0; trial < 100; ++trial) {
        SyntheticSpec spec;
        spec.n_web = static_cast<int>(rng.below(6));
        spec.n_star = static_cast<int>(rng.below(6));
        spec.n_dstar = static_cast<int>(rng.below(6));
        if (spec.n_web + spec.n_star + spec.n_dstar == 0) spec.n_star = 1;
        spec.k_w1 = 1 + static_cast<int>(rng.below(6));
        spec.k_w2 = 1 + static_cast<int>(rng.below(10));
        spec.k_s1 = 1 + static_cast<int>(rng.below(6));
        spec.k_s2 = 1 + static_cast<int>(rng.below(10));
        spec.k_ds1 = 2 + static_cast<int>(rng.below(7));
        spec.seed = rng.next();
        const std::size_t expected =
            static_cast<std::size_t>(spec.n_web) * (1 + spec.k_w1 + spec.k_w2) +
            static_cast<std::size_t>(spec.n_star) * (1 + spec.k_s1 + spec.k_s2) +
            static_cast<std::size_t>(spec.n_dstar) * (1 + spec.k_ds1);
        const auto g = generate(spec);
        if (g.graph.node_count() != expected) {
            detail = "random spec trial " + std::to_string(trial) + " mismatched";
            return false;
        }
    }
    const double elapsed = seconds_since(start);
    char buf[120];
    std::snprintf(buf, sizeof(buf), "7600 nodes exact, 100 random specs hold, %.1fs", elapsed);
    detail = buf;
    return elapsed < 10.0;
}

// 3. noise embeddings reconstruct nothing
bool criterion_negative_control(std::string& detail) {
    const auto& rg = benchmark_graph();
    const auto& battery = benchmark_battery();

    double min_psi = 1.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto emb = random_embedding(rg.graph, 8, 5000 + seed);
        for (std::size_t f = 0; f < battery.feature_count(); ++f) {
            const auto col = column_matrix(battery.values.column(f));
            EvalParams params;
            params.seed = seed;
            const auto res = evaluate(col, emb.values, params);
            min_psi = std::min(min_psi, res.psi_post);
            if (res.psi_post <= 0.9) {
                detail = "feature " + battery.names[f] + " seed " + std::to_string(seed) +
                         " scored psi_post " + std::to_string(res.psi_post);
                return false;
            }
        }
    }
    detail = "12 features x 5 seeds all psi_post > 0.9 (min " + std::to_string(min_psi) + ")";
    return true;
}

// 4./5. psi_post stability in the cluster count and the pair budget
bool criterion_convergence(VaryParam vary, std::string& detail) {
    const auto start = Clock::now();
    const auto& rg = kilo_graph();
    const auto battery = extended_battery(rg.graph);
    const auto emb = fixed_embedding(rg.graph, battery.column_by_name("degree"), 8, 0, 51);

    EvalParams base;
    base.seed = 7;
    const std::vector<double> grid =
        vary == VaryParam::Clusters ? std::vector<double>{0.05, 0.5} : std::vector<double>{0.3, 1.0};
    const auto table = convergence_study(battery.values, emb.values, vary, grid, 10, base);

    const double small = table.points.front().mean_psi_post;
    const double large = table.points.back().mean_psi_post;
    const double rel = std::abs(small - large) / std::abs(large);
    const double elapsed = seconds_since(start);
    char buf[200];
    std::snprintf(buf, sizeof(buf),
                  "mean psi_post %.4f @%.2f vs %.4f @%.2f, relative gap %.1f%%, %.1fs", small,
                  grid.front(), large, grid.back(), 100.0 * rel, elapsed);
    detail = buf;
    const bool in_time = vary == VaryParam::Pairs || elapsed < 300.0;
    return rel < 0.10 && in_time;
}

// 6. affine transforms of the inputs leave psi unchanged
bool criterion_affine_invariance(std::string& detail) {
    const auto rg = generate({5, 5, 5, 5, 10, 5, 10, 5, 321});
    const auto battery = extended_battery(rg.graph);
    const auto emb = fixed_embedding(rg.graph, battery.column_by_name("degree"), 8, 0, 13);

    EvalParams params;
    params.seed = 1001;
    const auto base = evaluate(battery.values, emb.values, params);

    Rng rng(20260809);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        Matrix f2 = battery.values;
        Matrix e2 = emb.values;
        auto transform = [&](Matrix& m) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                double a = 0.0;
                while (std::abs(a) < 1e-3) a = 4.0 * rng.uniform01() - 2.0;
                const double b = 20.0 * rng.uniform01() - 10.0;
                for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = a * m(r, c) + b;
            }
        };
        transform(f2);
        transform(e2);
        const auto moved = evaluate(f2, e2, params);
        worst = std::max(worst, std::abs(moved.psi_post - base.psi_post));
        worst = std::max(worst, std::abs(moved.psi_pre - base.psi_pre));
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "50 transforms, worst |delta psi| = %.3g", worst);
    detail = buf;
    return worst < 1e-6;
}

// 7. psi(w) == psi(c*w)
bool criterion_weight_scaling(std::string& detail) {
    const auto rg = generate({4, 4, 4, 4, 8, 4, 8, 4, 17});
    const auto battery = extended_battery(rg.graph);
    const auto emb = random_embedding(rg.graph, 8, 23);
    const auto fs = standardize(battery.values, Scaler::Standard);
    const auto es = standardize(emb.values, Scaler::Standard);
    const auto cl = cluster_features(fs, 10, 3);
    const auto ps = sample_pairs(cl, 0.5, 2000, 4);
    std::vector<NodePair> pairs = ps.within;
    pairs.insert(pairs.end(), ps.between.begin(), ps.between.end());
    const auto d_f = feature_distances(fs, pairs);

    Rng rng(515);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> w(8);
        for (auto& v : w) v = rng.uniform01();
        const double c = std::exp(6.0 * rng.uniform01() - 3.0);  // scales in [e^-3, e^3]
        auto cw = w;
        for (auto& v : cw) v *= c;
        const double a = psi(d_f, embedded_distances(es, w, pairs));
        const double b = psi(d_f, embedded_distances(es, cw, pairs));
        worst = std::max(worst, std::abs(a - b));
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "100 (w, c) pairs, worst |psi(w)-psi(cw)| = %.3g", worst);
    detail = buf;
    return worst < 1e-12;
}

// 8. psi against the raw-moment Pearson reference
bool criterion_pearson_oracle(std::string& detail) {
    Rng rng(271828);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t len = 2 + rng.below(99);
        std::vector<double> x(len), y(len);
        for (auto& v : x) v = rng.uniform01();
        for (auto& v : y) v = rng.uniform01();
        // occasionally correlate them so r spans the range
        if (trial % 3 == 0)
            for (std::size_t i = 0; i < len; ++i) y[i] = 0.7 * x[i] + 0.3 * y[i];
        const double r = testsupport::pearson_reference(x, y);
        const double want = 1.0 - r * r;
        worst = std::max(worst, std::abs(psi(x, y) - want));
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "1000 vector pairs, worst |delta| = %.3g", worst);
    detail = buf;
    return worst < 1e-12;
}

// 9. exact centrality kernels against pair-summation references
bool criterion_centrality_oracle(std::string& detail) {
    Rng rng(909090);
    double worst = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(6));
        const auto g = testsupport::random_connected_graph(n, rng);
        const auto bc = betweenness(g);
        const auto bc_ref = testsupport::betweenness_reference(g);
        const auto cl = closeness(g);
        const auto cl_ref = testsupport::closeness_reference(g);
        const auto ha = harmonic(g);
        const auto ha_ref = testsupport::harmonic_reference(g);
        const auto lc = local_clustering(g);
        const auto lc_ref = testsupport::local_clustering_reference(g);
        for (int v = 0; v < n; ++v) {
            worst = std::max(worst, std::abs(bc[v] - bc_ref[v]));
            worst = std::max(worst, std::abs(cl[v] - cl_ref[v]));
            worst = std::max(worst, std::abs(ha[v] - ha_ref[v]));
            worst = std::max(worst, std::abs(lc[v] - lc_ref[v]));
        }
        if (worst > 1e-9) {
            detail = "trial " + std::to_string(trial) + " diverged by " + std::to_string(worst);
            return false;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "500 random graphs (n<=7), worst |delta| = %.3g", worst);
    detail = buf;
    return true;
}

// 10. the first within draw follows p(i); the m-hat/m-bar caps always hold
bool criterion_sampling_law(std::string& detail) {
    // profile (10, 20, 30): pair pools 45, 190, 435 (total 670)
    Clustering cl;
    cl.sizes = {10, 20, 30};
    cl.assignment.clear();
    for (int j = 0; j < 3; ++j)
        for (int i = 0; i < cl.sizes[j]; ++i) cl.assignment.push_back(j);

    const int trials = 10000;
    std::vector<int> hits(3, 0);
    for (int t = 0; t < trials; ++t) {
        const auto ps = sample_pairs(cl, 1.0, 1, 777000 + t);
        if (ps.within.size() != 1) {
            detail = "expected exactly one first draw";
            return false;
        }
        ++hits[cl.assignment[ps.within[0].first]];
    }
    const double expected[3] = {45.0 / 670.0 * trials, 190.0 / 670.0 * trials,
                                435.0 / 670.0 * trials};
    double chi2 = 0.0;
    for (int j = 0; j < 3; ++j) {
        const double d = hits[j] - expected[j];
        chi2 += d * d / expected[j];
    }
    const double critical = 9.210340;  // chi-square df=2, alpha=0.01

    // cap check over random profiles
    Rng rng(1010);
    for (int trial = 0; trial < 200; ++trial) {
        const int s = 2 + static_cast<int>(rng.below(8));
        Clustering c2;
        c2.sizes.assign(s, 0);
        c2.assignment.clear();
        for (int j = 0; j < s; ++j) {
            c2.sizes[j] = 1 + static_cast<std::int64_t>(rng.below(12));
            for (int i = 0; i < c2.sizes[j]; ++i) c2.assignment.push_back(j);
        }
        const double p = rng.uniform01();
        const auto budget = 1 + static_cast<std::int64_t>(rng.below(500));
        const auto ps = sample_pairs(c2, p, budget, rng.next());
        std::int64_t within_pool = 0, between_pool = 0;
        for (int a = 0; a < s; ++a) {
            within_pool += c2.sizes[a] * (c2.sizes[a] - 1) / 2;
            for (int b = a + 1; b < s; ++b) between_pool += c2.sizes[a] * c2.sizes[b];
        }
        const auto m_hat =
            std::min(static_cast<std::int64_t>(std::floor(p * budget)), within_pool);
        const auto m_bar =
            std::min(static_cast<std::int64_t>(std::floor((1.0 - p) * budget)), between_pool);
        if (static_cast<std::int64_t>(ps.within.size()) != m_hat ||
            static_cast<std::int64_t>(ps.between.size()) != m_bar) {
            detail = "caps violated on profile trial " + std::to_string(trial);
            return false;
        }
    }

    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "chi2 = %.3f < %.3f over 10^4 draws; caps hold on 200 profiles", chi2,
                  critical);
    detail = buf;
    return chi2 < critical;
}

// 11. byte-identical rank output under a repeated seed
bool criterion_determinism(std::string& detail) {
    const auto rg = generate({5, 5, 5, 5, 10, 5, 10, 5, 64});
    const auto battery = extended_battery(rg.graph);
    const auto fixed = fixed_embedding(rg.graph, battery.column_by_name("degree"), 8, 0, 5);
    const auto noise = random_embedding(rg.graph, 8, 6);

    EvalParams params;
    params.seed = 2025;
    const auto a = render_report(
        rank(battery, {{"fixed", fixed.values}, {"random", noise.values}}, params, false, 4),
        ReportFormat::Json);
    const auto b = render_report(
        rank(battery, {{"fixed", fixed.values}, {"random", noise.values}}, params, false, 3),
        ReportFormat::Json);
    detail = a == b ? "two full rank runs rendered " + std::to_string(a.size()) +
                          " identical JSON bytes"
                    : "JSON outputs differ";
    return a == b;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "fixed-embedding weight collapse", criterion_weight_collapse},
        {2, "synthetic node count identity", criterion_node_count},
        {3, "random-embedding negative control", criterion_negative_control},
        {4, "psi convergence in cluster count",
         [](std::string& d) { return criterion_convergence(VaryParam::Clusters, d); }},
        {5, "psi convergence in pair budget",
         [](std::string& d) { return criterion_convergence(VaryParam::Pairs, d); }},
        {6, "affine invariance", criterion_affine_invariance},
        {7, "weight-scaling invariance", criterion_weight_scaling},
        {8, "pearson oracle", criterion_pearson_oracle},
        {9, "centrality oracle", criterion_centrality_oracle},
        {10, "pair-sampling law", criterion_sampling_law},
        {11, "rank determinism", criterion_determinism},
    };

    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));

    int failures = 0;
    for (auto& c : criteria) {
        if (!wanted.empty() && !wanted.count(c.number)) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& ex) {
            detail = std::string("exception: ") + ex.what();
        }
        std::printf("%s  %2d. %s — %s\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(),
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
