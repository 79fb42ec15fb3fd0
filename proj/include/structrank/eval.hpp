#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "structrank/matrix.hpp"
#include "structrank/optimize.hpp"

namespace structrank {

enum class Scaler { MinMax, Standard };

struct OptSettings {
    double tol = 1e-8;
    int max_iter = 200;
    int restarts = 3;
    double fd_step = 1e-6;
};

/// Pipeline parameters. Unset values resolve to the size-dependent defaults:
/// s = round(sqrt(n)) clamped to [2, n], c = min(1e5, floor(n^2 / s)).
struct EvalParams {
    std::optional<int> clusters;              // s
    double within_frac = 0.5;                 // p
    std::optional<std::int64_t> pair_budget;  // c
    Scaler scaler = Scaler::Standard;
    std::uint64_t seed = 0;
    OptSettings opt;

    int resolved_clusters(std::size_t n) const;
    std::int64_t resolved_pair_budget(std::size_t n, int s) const;
};

struct Clustering {
    std::vector<std::int32_t> assignment;  // node -> cluster id in 0..s-1
    std::vector<std::int64_t> sizes;       // sums to n
    int iterations = 0;
    bool converged = false;
};

using NodePair = std::pair<std::int32_t, std::int32_t>;

struct PairSample {
    std::vector<NodePair> within;   // endpoints share a cluster
    std::vector<NodePair> between;  // endpoints in different clusters
    bool within_short = false;      // attempt cap hit before reaching the target
    bool between_short = false;

    std::size_t total() const { return within.size() + between.size(); }
};

struct OptimizerTrace {
    int iterations = 0;
    bool converged = false;
    int restarts_used = 0;
    bool degenerate = false;  // all-zero optimum; uniform weights substituted
    double psi_init = 1.0;    // psi at the winning restart's start point
};

struct EvalResult {
    double psi_pre = 1.0;   // psi at uniform weights 1/k
    double psi_post = 1.0;  // psi at the optimized weights
    double r_pre = 0.0;
    double r_post = 0.0;
    std::vector<double> weights;  // non-negative, L1-normalized
    std::vector<std::int64_t> cluster_sizes;
    std::int64_t m_within = 0;
    std::int64_t m_between = 0;
    OptimizerTrace optimizer;
    bool sample_short = false;
};

/// Column-wise rescaling. MinMax maps each column onto [0,1]; Standard maps to
/// mean 0, population stdev 1. Constant columns become all-zero either way.
Matrix standardize(const Matrix& m, Scaler scaler);

/// Lloyd's k-means with k-means++ seeding on the standardized feature matrix,
/// Euclidean metric. At most 300 iterations or max centroid shift < 1e-6;
/// empty clusters are re-seeded from the farthest point. Deterministic given
/// seed (ties break toward lower indices).
Clustering cluster_features(const Matrix& standardized, int s, std::uint64_t seed);

/// Draws min{floor(p*c), within-pool} unique within-cluster pairs (cluster
/// chosen with probability proportional to its remaining pair count, then a
/// uniform pair inside it) and min{floor((1-p)*c), between-pool} unique
/// between-cluster pairs (cluster pair proportional to remaining cross count,
/// then one uniform node from each). Duplicates are rejected; the rejection
/// loop gives up after 100x the requested count and flags the short sample.
PairSample sample_pairs(const Clustering& cl, double within_frac, std::int64_t pair_budget,
                        std::uint64_t seed);

/// Euclidean distance per pair in feature space.
std::vector<double> feature_distances(const Matrix& f, const std::vector<NodePair>& pairs);

/// Weighted Euclidean distance per pair: sqrt(sum_a w_a (e_ia - e_ja)^2).
std::vector<double> embedded_distances(const Matrix& e, const std::vector<double>& weights,
                                       const std::vector<NodePair>& pairs);

/// Pearson correlation; nullopt when either vector has zero variance. Throws
/// on length mismatch or fewer than 2 elements.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

/// psi = 1 - r^2, clamped to [0,1]; defined as 1 when r is undefined.
double psi(const std::vector<double>& d_f, const std::vector<double>& d_e);

/// Per-pair squared coordinate differences; rows follow `pairs`, columns the
/// embedding dimensions. Precomputed once so the optimizer's objective is a
/// matrix-vector product.
Matrix pair_squared_diffs(const Matrix& e, const std::vector<NodePair>& pairs);

struct WeightOptimum {
    std::vector<double> weights;  // L1-normalized
    double psi_post = 1.0;
    double r_post = 0.0;
    OptimizerTrace trace;
};

/// Minimizes psi over the box [0,1]^k from `restarts` seeded uniform-simplex
/// starts; the best run wins and its weights are L1-renormalized (psi is
/// invariant under positive scaling of w).
WeightOptimum optimize_weights(const std::vector<double>& d_f, const Matrix& pair_sq_diffs,
                               const OptSettings& opt, std::uint64_t seed);

/// The full pipeline: standardize both matrices, cluster the feature space,
/// sample pairs, score psi at uniform weights, then optimize the weights.
/// Deterministic given params.seed.
EvalResult evaluate(const Matrix& features, const Matrix& embedding, const EvalParams& params);

}  // namespace structrank
