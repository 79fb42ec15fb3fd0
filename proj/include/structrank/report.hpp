#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "structrank/eval.hpp"
#include "structrank/features.hpp"
#include "structrank/matrix.hpp"

namespace structrank {

inline constexpr const char* kVersion = "0.1.0";

struct NamedEmbedding {
    std::string name;
    Matrix values;
};

struct RankRow {
    std::string embedding_name;
    std::string feature_name;
    EvalResult result;
    std::string error;  // non-empty when this pair's evaluation failed

    bool failed() const { return !error.empty(); }
};

struct EmbeddingAggregate {
    std::string embedding_name;
    std::optional<double> mean_psi_post;  // empty when every row failed
    std::size_t failed_rows = 0;
};

struct RankingReport {
    std::vector<RankRow> rows;                   // grouped by ranked embedding order
    std::vector<EmbeddingAggregate> aggregates;  // ascending mean psi_post, name tie-break
    EvalParams params;
    std::string version;

    bool any_failures() const;
};

/// Evaluates every (embedding, feature) pair — one column at a time, or the
/// whole battery as a single block when joint is set — and ranks embeddings
/// by mean psi_post. Every pair uses params.seed, so a single-pair rank
/// matches a direct evaluate() call. Per-pair failures are recorded in-row.
/// workers = 0 picks the hardware concurrency.
RankingReport rank(const FeatureMatrix& battery, const std::vector<NamedEmbedding>& embeddings,
                   const EvalParams& params, bool joint = false, int workers = 0);

enum class VaryParam { Clusters, Pairs };

struct ConvergencePoint {
    double fraction = 0.0;
    std::int64_t value = 0;  // the s or c actually used
    double mean_psi_post = 0.0;
    double stdev_psi_post = 0.0;
    int repeats = 0;
};

struct ConvergenceTable {
    VaryParam vary = VaryParam::Clusters;
    std::vector<ConvergencePoint> points;  // ascending fraction
    double long_run_average = 0.0;         // mean at the largest fraction
};

/// For each grid fraction x sets s = ceil(x*n) (or c = ceil(x*n)) with the
/// other parameters at their defaults, runs `repeats` seeds derived from
/// params.seed by counter split (shared across grid points), and reports
/// mean/stdev of psi_post.
ConvergenceTable convergence_study(const Matrix& features, const Matrix& embedding,
                                   VaryParam vary, std::vector<double> grid, int repeats,
                                   const EvalParams& base, int workers = 0);

enum class ReportFormat { Json, Csv, Markdown };

std::string render_report(const RankingReport& r, ReportFormat fmt);
void emit_report(const RankingReport& r, ReportFormat fmt, const std::string& path);

std::string render_convergence(const ConvergenceTable& t, ReportFormat fmt);

/// {psi_pre, psi_post, weights, r_pre, r_post, m_within, m_between,
///  cluster_sizes, optimizer:{iterations, converged, restarts_used}}
std::string eval_result_json(const EvalResult& r, int indent = 2);

}  // namespace structrank
