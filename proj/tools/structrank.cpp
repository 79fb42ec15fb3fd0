// structrank: score and rank structural node embeddings by how well weighted
// embedding-space distances reconstruct distances in a structural node
// feature space.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "structrank/csv.hpp"
#include "structrank/embedding.hpp"
#include "structrank/eval.hpp"
#include "structrank/features.hpp"
#include "structrank/graph.hpp"
#include "structrank/report.hpp"
#include "structrank/synthetic.hpp"

namespace {

using nlohmann::json;
using namespace structrank;

struct GraphOptions {
    std::string path;
    bool directed = false;
    std::string delimiter = "auto";
};

void add_graph_options(CLI::App* cmd, GraphOptions& opts) {
    cmd->add_option("--graph", opts.path, "edge list file (src dst [weight], '#' comments)")
        ->required();
    cmd->add_flag("--directed", opts.directed,
                  "treat the input as directed (features use the undirected projection)");
    cmd->add_option("--delimiter", opts.delimiter, "auto|space|tab|comma")
        ->check(CLI::IsMember({"auto", "space", "tab", "comma"}));
}

Delimiter parse_delimiter(const std::string& d) {
    if (d == "space") return Delimiter::Space;
    if (d == "tab") return Delimiter::Tab;
    if (d == "comma") return Delimiter::Comma;
    return Delimiter::Auto;
}

Graph load_graph(const GraphOptions& opts) {
    return load_edge_list(opts.path, opts.directed, parse_delimiter(opts.delimiter));
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error(out_path + ": cannot open for writing");
    out << text;
    if (!out) throw std::runtime_error(out_path + ": write failed");
}

struct EvalFlags {
    std::optional<int> clusters;
    std::optional<std::int64_t> pairs;
    double within_frac = 0.5;
    std::string scaler = "standard";
    std::uint64_t seed = 0;
    int restarts = 3;
};

void add_eval_flags(CLI::App* cmd, EvalFlags& flags) {
    cmd->add_option("--clusters", flags.clusters, "cluster count s (default round(sqrt(n)))");
    cmd->add_option("--pairs", flags.pairs, "pair budget c (default min(1e5, n^2/s))");
    cmd->add_option("--within-frac", flags.within_frac, "within-cluster pair fraction p")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--scaler", flags.scaler, "standard|minmax")
        ->check(CLI::IsMember({"standard", "minmax"}));
    cmd->add_option("--seed", flags.seed, "master RNG seed");
    cmd->add_option("--restarts", flags.restarts, "optimizer restarts")->check(CLI::Range(1, 100));
}

EvalParams to_params(const EvalFlags& flags) {
    EvalParams p;
    p.clusters = flags.clusters;
    p.pair_budget = flags.pairs;
    p.within_frac = flags.within_frac;
    p.scaler = flags.scaler == "minmax" ? Scaler::MinMax : Scaler::Standard;
    p.seed = flags.seed;
    p.opt.restarts = flags.restarts;
    return p;
}

json ingest_to_json(const Graph& g) {
    const auto& rep = g.ingest_report();
    json j;
    j["self_loops_dropped"] = rep.self_loops_dropped;
    j["duplicate_edges_dropped"] = rep.duplicate_edges_dropped;
    j["has_weights"] = rep.has_weights;
    j["weights_used"] = false;  // weights are carried through but no feature consumes them
    j["directed_input"] = g.directed();
    j["projected_to_undirected"] = g.directed();
    return j;
}

FeatureMatrix load_or_compute_features(const Graph& g, const std::string& features_path,
                                       const std::vector<std::string>& feature_names) {
    FeatureMatrix fm = features_path.empty() ? extended_battery(g)
                                             : load_features(features_path, g);
    if (!feature_names.empty()) fm = fm.select(feature_names);
    return fm;
}

int cmd_stats(const GraphOptions& gopts, const std::string& out_path) {
    const auto g = load_graph(gopts);
    const auto s = compute_stats(g);
    json j;
    j["node_count"] = s.node_count;
    j["edge_count"] = s.edge_count;
    j["min_degree"] = s.min_degree;
    j["max_degree"] = s.max_degree;
    j["avg_degree"] = s.avg_degree;
    j["median_degree"] = s.median_degree;
    j["component_count"] = s.component_count;
    j["largest_component_size"] = s.largest_component_size;
    j["isolated_node_count"] = s.isolated_node_count;
    j["global_clustering"] = s.global_clustering;
    j["avg_local_clustering"] = s.avg_local_clustering;
    j["ingest"] = ingest_to_json(g);
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unsupervised scoring and ranking of structural node embeddings"};
    app.require_subcommand(1);

    // ---- stats ----
    GraphOptions stats_graph;
    std::string stats_out;
    auto* stats_cmd = app.add_subcommand("stats", "ingest a graph and print basic statistics");
    add_graph_options(stats_cmd, stats_graph);
    stats_cmd->add_option("--out", stats_out, "output path (default stdout)");

    // ---- features ----
    GraphOptions feat_graph;
    std::string feat_out;
    std::size_t feat_pivots = 0;
    std::uint64_t feat_seed = 0;
    auto* feat_cmd = app.add_subcommand("features", "compute the 12-feature structural battery");
    add_graph_options(feat_cmd, feat_graph);
    feat_cmd->add_option("--out", feat_out, "output CSV path")->required();
    feat_cmd->add_option("--betweenness-pivots", feat_pivots,
                         "approximate betweenness with this many sampled sources (0 = exact)");
    feat_cmd->add_option("--seed", feat_seed, "seed for pivot sampling");

    // ---- baseline ----
    auto* base_cmd = app.add_subcommand("baseline", "generate synthetic baseline embeddings");
    base_cmd->require_subcommand(1);

    GraphOptions fixed_graph;
    std::string fixed_feature = "degree", fixed_out;
    std::size_t fixed_dims = 8, fixed_target = 0;
    std::uint64_t fixed_seed = 0;
    auto* fixed_cmd = base_cmd->add_subcommand(
        "fixed", "copy one feature into a dimension, fill the rest with noise");
    add_graph_options(fixed_cmd, fixed_graph);
    fixed_cmd->add_option("--feature", fixed_feature, "battery feature name to copy");
    fixed_cmd->add_option("--dims", fixed_dims, "embedding dimension")->check(CLI::PositiveNumber);
    fixed_cmd->add_option("--target-dim", fixed_target, "dimension holding the feature copy");
    fixed_cmd->add_option("--seed", fixed_seed, "RNG seed");
    fixed_cmd->add_option("--out", fixed_out, "output CSV path")->required();

    GraphOptions random_graph_opt;
    std::string random_out;
    std::size_t random_dims = 8;
    std::uint64_t random_seed = 0;
    auto* random_cmd = base_cmd->add_subcommand("random", "uniform noise embedding");
    add_graph_options(random_cmd, random_graph_opt);
    random_cmd->add_option("--dims", random_dims, "embedding dimension")
        ->check(CLI::PositiveNumber);
    random_cmd->add_option("--seed", random_seed, "RNG seed");
    random_cmd->add_option("--out", random_out, "output CSV path")->required();

    // ---- evaluate ----
    GraphOptions eval_graph;
    std::string eval_features_path, eval_embedding_path, eval_out;
    std::vector<std::string> eval_feature_names;
    EvalFlags eval_flags;
    auto* eval_cmd =
        app.add_subcommand("evaluate", "score one embedding against a feature block");
    add_graph_options(eval_cmd, eval_graph);
    eval_cmd->add_option("--features", eval_features_path,
                         "feature CSV (default: computed 12-feature battery)");
    eval_cmd->add_option("--embedding", eval_embedding_path, "embedding CSV")->required();
    eval_cmd->add_option("--feature-name", eval_feature_names,
                         "restrict to these feature columns (repeatable)");
    add_eval_flags(eval_cmd, eval_flags);
    eval_cmd->add_option("--out", eval_out, "result JSON path (default stdout)");

    // ---- synth ----
    SyntheticSpec synth_spec;
    std::string synth_graph_out, synth_labels_out;
    auto* synth_cmd = app.add_subcommand("synth", "generate the Web/Star/dStar benchmark graph");
    synth_cmd->add_option("--nw", synth_spec.n_web, "number of Web subgraphs")->required();
    synth_cmd->add_option("--ns", synth_spec.n_star, "number of Star subgraphs")->required();
    synth_cmd->add_option("--nds", synth_spec.n_dstar, "number of dStar subgraphs")->required();
    synth_cmd->add_option("--kw1", synth_spec.k_w1, "Web middle layer size")->required();
    synth_cmd->add_option("--kw2", synth_spec.k_w2, "Web leaf layer size")->required();
    synth_cmd->add_option("--ks1", synth_spec.k_s1, "Star middle layer size")->required();
    synth_cmd->add_option("--ks2", synth_spec.k_s2, "Star leaf layer size")->required();
    synth_cmd->add_option("--kds1", synth_spec.k_ds1, "dStar clique layer size")->required();
    synth_cmd->add_option("--seed", synth_spec.seed, "RNG seed");
    synth_cmd->add_option("--out-graph", synth_graph_out, "edge list output path")->required();
    synth_cmd->add_option("--out-labels", synth_labels_out, "role CSV output path")->required();

    // ---- rank ----
    GraphOptions rank_graph;
    std::string rank_features_path, rank_out, rank_format = "json";
    std::vector<std::string> rank_embedding_specs, rank_feature_names;
    bool rank_joint = false;
    int rank_workers = 0;
    EvalFlags rank_flags;
    auto* rank_cmd =
        app.add_subcommand("rank", "evaluate many embeddings and rank by mean psi_post");
    add_graph_options(rank_cmd, rank_graph);
    rank_cmd->add_option("--features", rank_features_path,
                         "feature CSV (default: computed 12-feature battery)");
    rank_cmd
        ->add_option("--embedding", rank_embedding_specs,
                     "NAME=PATH embedding CSV (repeatable)")
        ->required();
    rank_cmd->add_option("--feature-name", rank_feature_names,
                         "restrict to these feature columns (repeatable)");
    rank_cmd->add_flag("--joint", rank_joint, "evaluate all features as one block per embedding");
    rank_cmd->add_option("--workers", rank_workers, "worker threads (0 = hardware)");
    rank_cmd->add_option("--format", rank_format, "json|csv|markdown")
        ->check(CLI::IsMember({"json", "csv", "markdown"}));
    add_eval_flags(rank_cmd, rank_flags);
    rank_cmd->add_option("--out", rank_out, "output path (default stdout)");

    // ---- converge ----
    GraphOptions conv_graph;
    std::string conv_features_path, conv_embedding_path, conv_out, conv_format = "csv";
    std::string conv_vary = "clusters";
    std::vector<std::string> conv_feature_names;
    std::vector<double> conv_grid;
    int conv_repeats = 5, conv_workers = 0;
    EvalFlags conv_flags;
    auto* conv_cmd = app.add_subcommand(
        "converge", "psi_post stability as cluster count or pair budget grows");
    add_graph_options(conv_cmd, conv_graph);
    conv_cmd->add_option("--features", conv_features_path,
                         "feature CSV (default: computed 12-feature battery)");
    conv_cmd->add_option("--embedding", conv_embedding_path, "embedding CSV")->required();
    conv_cmd->add_option("--feature-name", conv_feature_names,
                         "restrict to these feature columns (repeatable)");
    conv_cmd->add_option("--vary", conv_vary, "clusters|pairs")
        ->check(CLI::IsMember({"clusters", "pairs"}));
    conv_cmd->add_option("--grid", conv_grid, "fractions of n in (0,1]")
        ->required()
        ->delimiter(',');
    conv_cmd->add_option("--repeats", conv_repeats, "seeds per grid point")
        ->check(CLI::PositiveNumber);
    conv_cmd->add_option("--workers", conv_workers, "worker threads (0 = hardware)");
    conv_cmd->add_option("--format", conv_format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    add_eval_flags(conv_cmd, conv_flags);
    conv_cmd->add_option("--out", conv_out, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (stats_cmd->parsed()) return cmd_stats(stats_graph, stats_out);

        if (feat_cmd->parsed()) {
            const auto g = load_graph(feat_graph);
            const auto fm = extended_battery(g, feat_pivots, feat_seed);
            save_features(fm, g, feat_out);
            json j;
            j["nodes"] = g.node_count();
            j["features"] = fm.names;
            j["betweenness_pivots"] = feat_pivots;
            j["betweenness_exact"] = feat_pivots == 0 || feat_pivots >= g.node_count();
            j["ingest"] = ingest_to_json(g);
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (fixed_cmd->parsed()) {
            const auto g = load_graph(fixed_graph);
            const auto column = feature_by_name(g, fixed_feature);
            const auto e = fixed_embedding(g, column, fixed_dims, fixed_target, fixed_seed);
            save_embedding(e, g, fixed_out);
            return 0;
        }
        if (random_cmd->parsed()) {
            const auto g = load_graph(random_graph_opt);
            const auto e = random_embedding(g, random_dims, random_seed);
            save_embedding(e, g, random_out);
            return 0;
        }

        if (eval_cmd->parsed()) {
            const auto g = load_graph(eval_graph);
            const auto fm = load_or_compute_features(g, eval_features_path, eval_feature_names);
            const auto em = load_embedding(eval_embedding_path, g);
            const auto result = evaluate(fm.values, em.values, to_params(eval_flags));
            write_output(eval_result_json(result) + "\n", eval_out);
            return 0;
        }

        if (synth_cmd->parsed()) {
            const auto rg = generate(synth_spec);
            export_edge_list(rg.graph, synth_graph_out);
            export_labels(rg, synth_labels_out);
            json j;
            j["nodes"] = rg.graph.node_count();
            j["edges"] = rg.graph.edge_count();
            j["subgraph_edges"] = rg.report.subgraph_edges;
            j["join_edges"] = rg.report.join_edges;
            j["join_incomplete"] = rg.report.join_incomplete;
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (rank_cmd->parsed()) {
            const auto g = load_graph(rank_graph);
            const auto fm = load_or_compute_features(g, rank_features_path, rank_feature_names);
            std::vector<NamedEmbedding> embeddings;
            for (const auto& spec : rank_embedding_specs) {
                const auto eq = spec.find('=');
                if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
                    throw std::runtime_error("--embedding expects NAME=PATH, got '" + spec + "'");
                auto em = load_embedding(spec.substr(eq + 1), g);
                embeddings.push_back({spec.substr(0, eq), std::move(em.values)});
            }
            const auto report =
                rank(fm, embeddings, to_params(rank_flags), rank_joint, rank_workers);
            ReportFormat fmt = rank_format == "csv"        ? ReportFormat::Csv
                               : rank_format == "markdown" ? ReportFormat::Markdown
                                                           : ReportFormat::Json;
            write_output(render_report(report, fmt), rank_out);
            return report.any_failures() ? 2 : 0;
        }

        if (conv_cmd->parsed()) {
            const auto g = load_graph(conv_graph);
            const auto fm = load_or_compute_features(g, conv_features_path, conv_feature_names);
            const auto em = load_embedding(conv_embedding_path, g);
            const auto table = convergence_study(fm.values, em.values,
                                                 conv_vary == "pairs" ? VaryParam::Pairs
                                                                      : VaryParam::Clusters,
                                                 conv_grid, conv_repeats, to_params(conv_flags),
                                                 conv_workers);
            write_output(render_convergence(table, conv_format == "json" ? ReportFormat::Json
                                                                         : ReportFormat::Csv),
                         conv_out);
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "structrank: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
