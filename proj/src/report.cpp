#include "structrank/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "structrank/csv.hpp"
#include "structrank/rng.hpp"

namespace structrank {

namespace {

using nlohmann::json;

json eval_result_to_json(const EvalResult& r) {
    json j;
    j["psi_pre"] = r.psi_pre;
    j["psi_post"] = r.psi_post;
    j["r_pre"] = r.r_pre;
    j["r_post"] = r.r_post;
    j["weights"] = r.weights;
    j["m_within"] = r.m_within;
    j["m_between"] = r.m_between;
    j["cluster_sizes"] = r.cluster_sizes;
    j["sample_short"] = r.sample_short;
    j["optimizer"] = {{"iterations", r.optimizer.iterations},
                      {"converged", r.optimizer.converged},
                      {"restarts_used", r.optimizer.restarts_used},
                      {"degenerate", r.optimizer.degenerate}};
    return j;
}

json params_to_json(const EvalParams& p) {
    json j;
    j["clusters"] = p.clusters.has_value() ? json(*p.clusters) : json(nullptr);
    j["pair_budget"] = p.pair_budget.has_value() ? json(*p.pair_budget) : json(nullptr);
    j["within_frac"] = p.within_frac;
    j["scaler"] = p.scaler == Scaler::Standard ? "standard" : "minmax";
    j["seed"] = p.seed;
    j["restarts"] = p.opt.restarts;
    j["opt_tol"] = p.opt.tol;
    j["opt_max_iter"] = p.opt.max_iter;
    return j;
}

// run one job per (embedding, feature) pair on a small worker pool; results
// land in preallocated slots so the output is independent of scheduling
template <typename Job>
void run_jobs(std::size_t count, int workers, Job&& job) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const auto i = cursor.fetch_add(1);
                if (i >= count) return;
                job(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

bool RankingReport::any_failures() const {
    return std::any_of(rows.begin(), rows.end(), [](const RankRow& r) { return r.failed(); });
}

RankingReport rank(const FeatureMatrix& battery, const std::vector<NamedEmbedding>& embeddings,
                   const EvalParams& params, bool joint, int workers) {
    if (embeddings.empty()) throw std::invalid_argument("rank: no embeddings given");
    if (battery.feature_count() == 0) throw std::invalid_argument("rank: empty feature battery");

    struct Pair {
        std::size_t emb;
        std::string feature_name;
        Matrix features;
    };
    std::vector<Pair> jobs;
    for (std::size_t e = 0; e < embeddings.size(); ++e) {
        if (joint) {
            jobs.push_back({e, "joint", battery.values});
        } else {
            for (std::size_t f = 0; f < battery.feature_count(); ++f) {
                Matrix col(battery.values.rows(), 1);
                col.set_column(0, battery.values.column(f));
                jobs.push_back({e, battery.names[f], std::move(col)});
            }
        }
    }

    std::vector<RankRow> rows(jobs.size());
    run_jobs(jobs.size(), workers, [&](std::size_t i) {
        const auto& jb = jobs[i];
        RankRow row;
        row.embedding_name = embeddings[jb.emb].name;
        row.feature_name = jb.feature_name;
        try {
            // every pair shares params.seed, so a one-pair rank reproduces a
            // direct evaluate() call
            row.result = evaluate(jb.features, embeddings[jb.emb].values, params);
        } catch (const std::exception& ex) {
            row.error = ex.what();
        }
        rows[i] = std::move(row);
    });

    RankingReport report;
    report.params = params;
    report.version = kVersion;

    for (std::size_t e = 0; e < embeddings.size(); ++e) {
        EmbeddingAggregate agg;
        agg.embedding_name = embeddings[e].name;
        double total = 0.0;
        std::size_t ok = 0;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (jobs[i].emb != e) continue;
            if (rows[i].failed()) {
                ++agg.failed_rows;
            } else {
                total += rows[i].result.psi_post;
                ++ok;
            }
        }
        if (ok > 0) agg.mean_psi_post = total / static_cast<double>(ok);
        report.aggregates.push_back(std::move(agg));
    }
    std::sort(report.aggregates.begin(), report.aggregates.end(),
              [](const EmbeddingAggregate& a, const EmbeddingAggregate& b) {
                  const bool ha = a.mean_psi_post.has_value();
                  const bool hb = b.mean_psi_post.has_value();
                  if (ha != hb) return ha;  // failed embeddings sink to the bottom
                  if (ha && *a.mean_psi_post != *b.mean_psi_post)
                      return *a.mean_psi_post < *b.mean_psi_post;
                  return a.embedding_name < b.embedding_name;
              });

    // rows grouped by ranked embedding, feature order preserved within
    for (const auto& agg : report.aggregates) {
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (embeddings[jobs[i].emb].name == agg.embedding_name)
                report.rows.push_back(rows[i]);
        }
    }
    return report;
}

ConvergenceTable convergence_study(const Matrix& features, const Matrix& embedding,
                                   VaryParam vary, std::vector<double> grid, int repeats,
                                   const EvalParams& base, int workers) {
    if (grid.empty()) throw std::invalid_argument("convergence_study: empty grid");
    for (double x : grid)
        if (!(x > 0.0) || x > 1.0)
            throw std::invalid_argument("convergence_study: grid fractions must lie in (0,1]");
    if (repeats < 1) throw std::invalid_argument("convergence_study: repeats must be >= 1");
    std::sort(grid.begin(), grid.end());

    const auto n = features.rows();
    ConvergenceTable table;
    table.vary = vary;
    table.points.resize(grid.size());

    struct Job {
        std::size_t point;
        int repeat;
    };
    std::vector<Job> jobs;
    for (std::size_t p = 0; p < grid.size(); ++p)
        for (int r = 0; r < repeats; ++r) jobs.push_back({p, r});
    std::vector<double> psi_post(jobs.size(), 0.0);

    std::vector<std::exception_ptr> errors(jobs.size());
    run_jobs(jobs.size(), workers, [&](std::size_t i) {
        try {
            const auto [p, r] = jobs[i];
            EvalParams params = base;
            // repeat seeds split off the master by counter; shared across grid
            // points so the curves use common random numbers
            params.seed = derive_seed(base.seed, static_cast<std::uint64_t>(r));
            const auto scaled =
                std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(
                                              grid[p] * static_cast<double>(n))));
            if (vary == VaryParam::Clusters) {
                params.clusters = static_cast<int>(
                    std::max<std::int64_t>(2, std::min<std::int64_t>(
                                                  scaled, static_cast<std::int64_t>(n))));
                params.pair_budget.reset();  // re-resolved from the actual s
            } else {
                params.pair_budget = scaled;
            }
            psi_post[i] = evaluate(features, embedding, params).psi_post;
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);

    for (std::size_t p = 0; p < grid.size(); ++p) {
        auto& point = table.points[p];
        point.fraction = grid[p];
        point.repeats = repeats;
        const auto scaled = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::ceil(grid[p] * static_cast<double>(n))));
        if (vary == VaryParam::Clusters)
            point.value = std::max<std::int64_t>(
                2, std::min<std::int64_t>(scaled, static_cast<std::int64_t>(n)));
        else
            point.value = scaled;

        double mean = 0.0;
        for (std::size_t i = 0; i < jobs.size(); ++i)
            if (jobs[i].point == p) mean += psi_post[i];
        mean /= repeats;
        double var = 0.0;
        for (std::size_t i = 0; i < jobs.size(); ++i) {
            if (jobs[i].point != p) continue;
            const double d = psi_post[i] - mean;
            var += d * d;
        }
        point.mean_psi_post = mean;
        point.stdev_psi_post = repeats > 1 ? std::sqrt(var / (repeats - 1)) : 0.0;
    }
    table.long_run_average = table.points.back().mean_psi_post;
    return table;
}

std::string eval_result_json(const EvalResult& r, int indent) {
    return eval_result_to_json(r).dump(indent);
}

std::string render_report(const RankingReport& r, ReportFormat fmt) {
    if (fmt == ReportFormat::Json) {
        json j;
        j["version"] = r.version;
        j["params"] = params_to_json(r.params);
        j["ranking"] = json::array();
        for (const auto& agg : r.aggregates) {
            json a;
            a["embedding"] = agg.embedding_name;
            a["mean_psi_post"] =
                agg.mean_psi_post.has_value() ? json(*agg.mean_psi_post) : json(nullptr);
            a["failed_rows"] = agg.failed_rows;
            j["ranking"].push_back(std::move(a));
        }
        j["rows"] = json::array();
        for (const auto& row : r.rows) {
            json rj;
            rj["embedding"] = row.embedding_name;
            rj["feature"] = row.feature_name;
            if (row.failed())
                rj["error"] = row.error;
            else
                rj["result"] = eval_result_to_json(row.result);
            j["rows"].push_back(std::move(rj));
        }
        return j.dump(2) + "\n";
    }

    if (fmt == ReportFormat::Csv) {
        std::size_t max_k = 0;
        for (const auto& row : r.rows)
            if (!row.failed()) max_k = std::max(max_k, row.result.weights.size());
        std::ostringstream out;
        out << "embedding,feature,psi_pre,psi_post,r_pre,r_post,m_within,m_between,error";
        for (std::size_t i = 0; i < max_k; ++i) out << ",w" << i;
        out << "\n";
        for (const auto& row : r.rows) {
            out << row.embedding_name << "," << row.feature_name << ",";
            if (row.failed()) {
                out << ",,,,,," << row.error;
                for (std::size_t i = 0; i < max_k; ++i) out << ",";
            } else {
                const auto& res = row.result;
                out << csv::format_double(res.psi_pre) << "," << csv::format_double(res.psi_post)
                    << "," << csv::format_double(res.r_pre) << ","
                    << csv::format_double(res.r_post) << "," << res.m_within << ","
                    << res.m_between << ",";
                for (std::size_t i = 0; i < max_k; ++i) {
                    out << ",";
                    if (i < res.weights.size()) out << csv::format_double(res.weights[i]);
                }
            }
            out << "\n";
        }
        return out.str();
    }

    // markdown: ranking summary plus one table row per evaluated pair
    std::ostringstream out;
    out << "| rank | embedding | mean psi_post |\n|---:|---|---:|\n";
    for (std::size_t i = 0; i < r.aggregates.size(); ++i) {
        const auto& agg = r.aggregates[i];
        out << "| " << (i + 1) << " | " << agg.embedding_name << " | ";
        if (agg.mean_psi_post.has_value())
            out << csv::format_double(*agg.mean_psi_post);
        else
            out << "failed";
        out << " |\n";
    }
    out << "\n| embedding | feature | psi_pre | psi_post |\n|---|---|---:|---:|\n";
    for (const auto& row : r.rows) {
        out << "| " << row.embedding_name << " | " << row.feature_name << " | ";
        if (row.failed())
            out << "error: " << row.error << " | |\n";
        else
            out << csv::format_double(row.result.psi_pre) << " | "
                << csv::format_double(row.result.psi_post) << " |\n";
    }
    return out.str();
}

void emit_report(const RankingReport& r, ReportFormat fmt, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << render_report(r, fmt);
    if (!out) throw std::runtime_error(path + ": write failed");
}

std::string render_convergence(const ConvergenceTable& t, ReportFormat fmt) {
    if (fmt == ReportFormat::Json) {
        json j;
        j["vary"] = t.vary == VaryParam::Clusters ? "clusters" : "pairs";
        j["long_run_average"] = t.long_run_average;
        j["points"] = json::array();
        for (const auto& p : t.points) {
            j["points"].push_back({{"fraction", p.fraction},
                                   {"value", p.value},
                                   {"mean_psi_post", p.mean_psi_post},
                                   {"stdev_psi_post", p.stdev_psi_post},
                                   {"repeats", p.repeats}});
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    if (fmt == ReportFormat::Csv) {
        out << "fraction,value,mean_psi_post,stdev_psi_post,repeats,long_run_average\n";
        for (const auto& p : t.points)
            out << csv::format_double(p.fraction) << "," << p.value << ","
                << csv::format_double(p.mean_psi_post) << ","
                << csv::format_double(p.stdev_psi_post) << "," << p.repeats << ","
                << csv::format_double(t.long_run_average) << "\n";
        return out.str();
    }
    out << "| fraction | " << (t.vary == VaryParam::Clusters ? "s" : "c")
        << " | mean psi_post | stdev |\n|---:|---:|---:|---:|\n";
    for (const auto& p : t.points)
        out << "| " << csv::format_double(p.fraction) << " | " << p.value << " | "
            << csv::format_double(p.mean_psi_post) << " | "
            << csv::format_double(p.stdev_psi_post) << " |\n";
    return out.str();
}

}  // namespace structrank
