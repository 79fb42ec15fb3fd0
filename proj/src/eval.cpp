#include "structrank/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "structrank/rng.hpp"

namespace structrank {

namespace {

// rng stream ids within one evaluation
constexpr std::uint64_t kStreamKmeans = 1;
constexpr std::uint64_t kStreamSampling = 2;
constexpr std::uint64_t kStreamOptimizer = 3;

std::vector<double> weighted_distances(const Matrix& sq_diffs, const std::vector<double>& w) {
    std::vector<double> out(sq_diffs.rows());
    for (std::size_t p = 0; p < sq_diffs.rows(); ++p) {
        const auto row = sq_diffs.row(p);
        double acc = 0.0;
        for (std::size_t a = 0; a < row.size(); ++a) acc += w[a] * row[a];
        out[p] = std::sqrt(std::max(acc, 0.0));
    }
    return out;
}

// uniform draw from the probability simplex (normalized exponentials)
std::vector<double> simplex_sample(std::size_t k, Rng& rng) {
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& v : w) {
        v = -std::log(1.0 - rng.uniform01());
        total += v;
    }
    for (auto& v : w) v /= total;
    return w;
}

}  // namespace

int EvalParams::resolved_clusters(std::size_t n) const {
    if (clusters.has_value()) {
        if (*clusters < 2) throw std::invalid_argument("clusters must be >= 2");
        if (static_cast<std::size_t>(*clusters) > n)
            throw std::invalid_argument("clusters exceeds the node count");
        return *clusters;
    }
    // round(sqrt(n)) half-up, clamped to [2, n]
    auto s = static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(n)) + 0.5));
    s = std::max<std::int64_t>(2, std::min<std::int64_t>(s, static_cast<std::int64_t>(n)));
    return static_cast<int>(s);
}

std::int64_t EvalParams::resolved_pair_budget(std::size_t n, int s) const {
    if (pair_budget.has_value()) {
        if (*pair_budget < 1) throw std::invalid_argument("pair budget must be >= 1");
        return *pair_budget;
    }
    const auto quota =
        static_cast<std::int64_t>(static_cast<double>(n) * static_cast<double>(n) / s);
    return std::max<std::int64_t>(1, std::min<std::int64_t>(100000, quota));
}

WeightOptimum optimize_weights(const std::vector<double>& d_f, const Matrix& pair_sq_diffs,
                               const OptSettings& opt, std::uint64_t seed) {
    const auto k = pair_sq_diffs.cols();
    if (k < 1) throw std::invalid_argument("optimize_weights: embedding has no dimensions");
    if (pair_sq_diffs.rows() != d_f.size())
        throw std::invalid_argument("optimize_weights: pair count mismatch");
    if (d_f.size() < 2) throw std::invalid_argument("optimize_weights: need at least 2 pairs");
    if (opt.restarts < 1) throw std::invalid_argument("optimize_weights: restarts must be >= 1");

    auto objective = [&](const std::vector<double>& w) {
        return psi(d_f, weighted_distances(pair_sq_diffs, w));
    };

    BoxMinimizeOptions box;
    box.tol = opt.tol;
    box.max_iter = opt.max_iter;
    box.fd_step = opt.fd_step;

    Rng rng(seed);
    WeightOptimum out;
    BoxMinimizeResult best;
    double best_start_psi = 1.0;
    bool have_best = false;

    for (int r = 0; r < opt.restarts; ++r) {
        auto w0 = simplex_sample(k, rng);
        const double psi0 = objective(w0);
        auto res = minimize_box(objective, std::move(w0), 0.0, 1.0, box);
        if (!have_best || res.fx < best.fx) {
            best = std::move(res);
            best_start_psi = psi0;
            have_best = true;
        }
    }

    out.trace.iterations = best.iterations;
    out.trace.converged = best.converged;
    out.trace.restarts_used = opt.restarts;
    out.trace.psi_init = best_start_psi;

    double total = 0.0;
    for (double v : best.x) total += v;
    if (total <= 1e-12) {
        // every dimension pushed to zero: no weighting helps
        out.trace.degenerate = true;
        out.weights.assign(k, 1.0 / static_cast<double>(k));
    } else {
        out.weights = best.x;
        for (auto& v : out.weights) v /= total;
    }

    const auto d_e = weighted_distances(pair_sq_diffs, out.weights);
    out.psi_post = psi(d_f, d_e);
    const auto r_post = pearson(d_f, d_e);
    out.r_post = r_post.value_or(0.0);
    return out;
}

EvalResult evaluate(const Matrix& features, const Matrix& embedding, const EvalParams& params) {
    const auto n = features.rows();
    if (n == 0) throw std::invalid_argument("evaluate: empty feature matrix");
    if (embedding.rows() != n)
        throw std::invalid_argument("evaluate: feature and embedding row counts differ");
    if (features.cols() < 1 || embedding.cols() < 1)
        throw std::invalid_argument("evaluate: need at least one feature and one dimension");

    const auto fs = standardize(features, params.scaler);
    const auto es = standardize(embedding, params.scaler);

    const int s = params.resolved_clusters(n);
    const auto budget = params.resolved_pair_budget(n, s);

    EvalResult out;
    const auto cl = cluster_features(fs, s, derive_seed(params.seed, kStreamKmeans));
    out.cluster_sizes = cl.sizes;

    const auto sample =
        sample_pairs(cl, params.within_frac, budget, derive_seed(params.seed, kStreamSampling));
    out.m_within = static_cast<std::int64_t>(sample.within.size());
    out.m_between = static_cast<std::int64_t>(sample.between.size());
    out.sample_short = sample.within_short || sample.between_short;

    std::vector<NodePair> pairs;
    pairs.reserve(sample.total());
    pairs.insert(pairs.end(), sample.within.begin(), sample.within.end());
    pairs.insert(pairs.end(), sample.between.begin(), sample.between.end());
    if (pairs.size() < 2)
        throw std::runtime_error("evaluate: sampled fewer than 2 node pairs (graph too small "
                                 "or clustering degenerate)");

    const auto d_f = feature_distances(fs, pairs);
    const auto sq_diffs = pair_squared_diffs(es, pairs);

    const auto k = embedding.cols();
    const std::vector<double> uniform(k, 1.0 / static_cast<double>(k));
    const auto d_e_pre = weighted_distances(sq_diffs, uniform);
    out.psi_pre = psi(d_f, d_e_pre);
    out.r_pre = pearson(d_f, d_e_pre).value_or(0.0);

    auto opt =
        optimize_weights(d_f, sq_diffs, params.opt, derive_seed(params.seed, kStreamOptimizer));
    out.psi_post = opt.psi_post;
    out.r_post = opt.r_post;
    out.weights = std::move(opt.weights);
    out.optimizer = opt.trace;
    return out;
}

}  // namespace structrank
