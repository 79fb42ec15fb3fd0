#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>

#include "structrank/embedding.hpp"
#include "structrank/eval.hpp"
#include "structrank/features.hpp"
#include "structrank/graph.hpp"
#include "structrank/report.hpp"
#include "structrank/synthetic.hpp"

namespace py = pybind11;
using namespace structrank;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const DoubleArray& arr) {
    const auto buf = arr.request();
    if (buf.ndim != 2) throw std::invalid_argument("expected a 2-D array");
    Matrix m(static_cast<std::size_t>(buf.shape[0]), static_cast<std::size_t>(buf.shape[1]));
    const auto* src = static_cast<const double*>(buf.ptr);
    std::copy(src, src + m.rows() * m.cols(), m.data().begin());
    return m;
}

py::array_t<double> to_array(const Matrix& m) {
    py::array_t<double> arr({m.rows(), m.cols()});
    auto buf = arr.request();
    std::copy(m.data().begin(), m.data().end(), static_cast<double*>(buf.ptr));
    return arr;
}

py::array_t<double> to_array_1d(const std::vector<double>& v) {
    py::array_t<double> arr(static_cast<py::ssize_t>(v.size()));
    auto buf = arr.request();
    std::copy(v.begin(), v.end(), static_cast<double*>(buf.ptr));
    return arr;
}

std::vector<double> to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    const auto buf = arr.request();
    if (buf.ndim != 1) throw std::invalid_argument("expected a 1-D array");
    const auto* src = static_cast<const double*>(buf.ptr);
    return {src, src + buf.shape[0]};
}

EvalParams make_params(std::optional<int> clusters, std::optional<std::int64_t> pairs,
                       double within_frac, const std::string& scaler, std::uint64_t seed,
                       int restarts, double tol, int max_iter) {
    EvalParams p;
    p.clusters = clusters;
    p.pair_budget = pairs;
    p.within_frac = within_frac;
    if (scaler == "standard")
        p.scaler = Scaler::Standard;
    else if (scaler == "minmax")
        p.scaler = Scaler::MinMax;
    else
        throw std::invalid_argument("scaler must be 'standard' or 'minmax'");
    p.seed = seed;
    p.opt.restarts = restarts;
    p.opt.tol = tol;
    p.opt.max_iter = max_iter;
    return p;
}

py::dict result_to_dict(const EvalResult& r) {
    py::dict d;
    d["psi_pre"] = r.psi_pre;
    d["psi_post"] = r.psi_post;
    d["r_pre"] = r.r_pre;
    d["r_post"] = r.r_post;
    d["weights"] = to_array_1d(r.weights);
    d["m_within"] = r.m_within;
    d["m_between"] = r.m_between;
    d["cluster_sizes"] = r.cluster_sizes;
    d["sample_short"] = r.sample_short;
    py::dict opt;
    opt["iterations"] = r.optimizer.iterations;
    opt["converged"] = r.optimizer.converged;
    opt["restarts_used"] = r.optimizer.restarts_used;
    opt["degenerate"] = r.optimizer.degenerate;
    d["optimizer"] = opt;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Scoring and ranking of structural node embeddings";
    m.attr("__version__") = kVersion;

    py::class_<Graph>(m, "Graph")
        .def_static(
            "load",
            [](const std::string& path, bool directed, const std::string& delimiter) {
                Delimiter d = Delimiter::Auto;
                if (delimiter == "space") d = Delimiter::Space;
                else if (delimiter == "tab") d = Delimiter::Tab;
                else if (delimiter == "comma") d = Delimiter::Comma;
                else if (delimiter != "auto")
                    throw std::invalid_argument("delimiter must be auto|space|tab|comma");
                return load_edge_list(path, directed, d);
            },
            py::arg("path"), py::arg("directed") = false, py::arg("delimiter") = "auto")
        .def_static(
            "from_edges",
            [](std::vector<std::string> node_ids,
               const std::vector<std::pair<std::int32_t, std::int32_t>>& edges, bool directed) {
                return Graph::from_edge_pairs(std::move(node_ids), edges, directed);
            },
            py::arg("node_ids"), py::arg("edges"), py::arg("directed") = false)
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def_property_readonly("directed", &Graph::directed)
        .def_property_readonly("node_ids", &Graph::node_ids)
        .def("degree", &Graph::degree, py::arg("node"))
        .def("neighbors", [](const Graph& g, std::size_t u) { return g.neighbors(u); },
             py::arg("node"))
        .def("stats",
             [](const Graph& g) {
                 const auto s = compute_stats(g);
                 py::dict d;
                 d["node_count"] = s.node_count;
                 d["edge_count"] = s.edge_count;
                 d["min_degree"] = s.min_degree;
                 d["max_degree"] = s.max_degree;
                 d["avg_degree"] = s.avg_degree;
                 d["median_degree"] = s.median_degree;
                 d["component_count"] = s.component_count;
                 d["largest_component_size"] = s.largest_component_size;
                 d["isolated_node_count"] = s.isolated_node_count;
                 d["global_clustering"] = s.global_clustering;
                 d["avg_local_clustering"] = s.avg_local_clustering;
                 return d;
             })
        .def("__repr__", [](const Graph& g) {
            return "<structrank.Graph n=" + std::to_string(g.node_count()) +
                   " m=" + std::to_string(g.edge_count()) + ">";
        });

    m.def("battery_feature_names", [] { return battery_feature_names(); });
    m.def(
        "feature",
        [](const Graph& g, const std::string& name) { return to_array_1d(feature_by_name(g, name)); },
        py::arg("graph"), py::arg("name"), "One battery feature column by name");
    m.def(
        "extended_battery",
        [](const Graph& g) {
            const auto fm = extended_battery(g);
            return py::make_tuple(to_array(fm.values), fm.names);
        },
        py::arg("graph"), "The 12-feature battery as (values, names)");

    m.def(
        "fixed_embedding",
        [](const Graph& g, const DoubleArray& feature, std::size_t dims, std::size_t target_dim,
           std::uint64_t seed) {
            return to_array(fixed_embedding(g, to_vector(feature), dims, target_dim, seed).values);
        },
        py::arg("graph"), py::arg("feature"), py::arg("dims") = 8, py::arg("target_dim") = 0,
        py::arg("seed") = 0);
    m.def(
        "random_embedding",
        [](const Graph& g, std::size_t dims, std::uint64_t seed) {
            return to_array(random_embedding(g, dims, seed).values);
        },
        py::arg("graph"), py::arg("dims") = 8, py::arg("seed") = 0);
    m.def(
        "load_embedding",
        [](const std::string& path, const Graph& g) {
            return to_array(load_embedding(path, g).values);
        },
        py::arg("path"), py::arg("graph"));

    m.def(
        "evaluate",
        [](const DoubleArray& features, const DoubleArray& embedding, std::optional<int> clusters,
           std::optional<std::int64_t> pairs, double within_frac, const std::string& scaler,
           std::uint64_t seed, int restarts, double tol, int max_iter) {
            const auto params =
                make_params(clusters, pairs, within_frac, scaler, seed, restarts, tol, max_iter);
            return result_to_dict(evaluate(to_matrix(features), to_matrix(embedding), params));
        },
        py::arg("features"), py::arg("embedding"), py::arg("clusters") = std::nullopt,
        py::arg("pairs") = std::nullopt, py::arg("within_frac") = 0.5,
        py::arg("scaler") = "standard", py::arg("seed") = 0, py::arg("restarts") = 3,
        py::arg("tol") = 1e-8, py::arg("max_iter") = 200,
        "Score how well weighted embedding distances reconstruct feature distances");

    m.def(
        "generate_synthetic",
        [](int nw, int ns, int nds, int kw1, int kw2, int ks1, int ks2, int kds1,
           std::uint64_t seed) {
            SyntheticSpec spec{nw, ns, nds, kw1, kw2, ks1, ks2, kds1, seed};
            auto rg = generate(spec);
            py::dict report;
            report["subgraph_edges"] = rg.report.subgraph_edges;
            report["join_edges"] = rg.report.join_edges;
            report["join_incomplete"] = rg.report.join_incomplete;
            return py::make_tuple(std::move(rg.graph), rg.roles, report);
        },
        py::arg("nw"), py::arg("ns"), py::arg("nds"), py::arg("kw1") = 5, py::arg("kw2") = 10,
        py::arg("ks1") = 5, py::arg("ks2") = 10, py::arg("kds1") = 5, py::arg("seed") = 0,
        "Web/Star/dStar benchmark graph as (graph, roles, report)");

    m.def(
        "rank",
        [](const DoubleArray& features, const std::vector<std::string>& feature_names,
           const std::vector<std::pair<std::string, DoubleArray>>& embeddings,
           std::optional<int> clusters, std::optional<std::int64_t> pairs, double within_frac,
           const std::string& scaler, std::uint64_t seed, int restarts, double tol, int max_iter,
           bool joint, int workers) {
            FeatureMatrix fm;
            fm.values = to_matrix(features);
            fm.names = feature_names;
            if (fm.names.size() != fm.values.cols())
                throw std::invalid_argument("feature_names length != feature column count");
            std::vector<NamedEmbedding> embs;
            for (const auto& [name, arr] : embeddings) embs.push_back({name, to_matrix(arr)});
            const auto params =
                make_params(clusters, pairs, within_frac, scaler, seed, restarts, tol, max_iter);
            const auto report = rank(fm, embs, params, joint, workers);

            py::list ranking;
            for (const auto& agg : report.aggregates) {
                py::dict a;
                a["embedding"] = agg.embedding_name;
                if (agg.mean_psi_post.has_value())
                    a["mean_psi_post"] = *agg.mean_psi_post;
                else
                    a["mean_psi_post"] = py::none();
                a["failed_rows"] = agg.failed_rows;
                ranking.append(std::move(a));
            }
            py::list rows;
            for (const auto& row : report.rows) {
                py::dict rd;
                rd["embedding"] = row.embedding_name;
                rd["feature"] = row.feature_name;
                if (row.failed())
                    rd["error"] = row.error;
                else
                    rd["result"] = result_to_dict(row.result);
                rows.append(std::move(rd));
            }
            py::dict out;
            out["version"] = report.version;
            out["ranking"] = ranking;
            out["rows"] = rows;
            return out;
        },
        py::arg("features"), py::arg("feature_names"), py::arg("embeddings"),
        py::arg("clusters") = std::nullopt, py::arg("pairs") = std::nullopt,
        py::arg("within_frac") = 0.5, py::arg("scaler") = "standard", py::arg("seed") = 0,
        py::arg("restarts") = 3, py::arg("tol") = 1e-8, py::arg("max_iter") = 200,
        py::arg("joint") = false, py::arg("workers") = 0,
        "Evaluate every (embedding, feature) pair and rank embeddings by mean psi_post");

    m.def(
        "convergence_study",
        [](const DoubleArray& features, const DoubleArray& embedding, const std::string& vary,
           const std::vector<double>& grid, int repeats, std::uint64_t seed, int workers) {
            EvalParams base;
            base.seed = seed;
            const auto table = convergence_study(
                to_matrix(features), to_matrix(embedding),
                vary == "pairs" ? VaryParam::Pairs : VaryParam::Clusters, grid, repeats, base,
                workers);
            py::list points;
            for (const auto& p : table.points) {
                py::dict d;
                d["fraction"] = p.fraction;
                d["value"] = p.value;
                d["mean_psi_post"] = p.mean_psi_post;
                d["stdev_psi_post"] = p.stdev_psi_post;
                d["repeats"] = p.repeats;
                points.append(std::move(d));
            }
            py::dict out;
            out["vary"] = vary;
            out["points"] = points;
            out["long_run_average"] = table.long_run_average;
            return out;
        },
        py::arg("features"), py::arg("embedding"), py::arg("vary") = "clusters",
        py::arg("grid") = std::vector<double>{0.02, 0.05, 0.1, 0.3, 1.0}, py::arg("repeats") = 5,
        py::arg("seed") = 0, py::arg("workers") = 0);
}
