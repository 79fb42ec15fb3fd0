#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "structrank/eval.hpp"

namespace structrank {

std::vector<double> feature_distances(const Matrix& f, const std::vector<NodePair>& pairs) {
    std::vector<double> out(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto ri = f.row(static_cast<std::size_t>(pairs[p].first));
        const auto rj = f.row(static_cast<std::size_t>(pairs[p].second));
        double acc = 0.0;
        for (std::size_t a = 0; a < ri.size(); ++a) {
            const double d = ri[a] - rj[a];
            acc += d * d;
        }
        out[p] = std::sqrt(acc);
    }
    return out;
}

std::vector<double> embedded_distances(const Matrix& e, const std::vector<double>& weights,
                                       const std::vector<NodePair>& pairs) {
    if (weights.size() != e.cols())
        throw std::invalid_argument("embedded_distances: weight length != embedding dimension");
    std::vector<double> out(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto ri = e.row(static_cast<std::size_t>(pairs[p].first));
        const auto rj = e.row(static_cast<std::size_t>(pairs[p].second));
        double acc = 0.0;
        for (std::size_t a = 0; a < ri.size(); ++a) {
            const double d = ri[a] - rj[a];
            acc += weights[a] * d * d;
        }
        out[p] = std::sqrt(std::max(acc, 0.0));
    }
    return out;
}

Matrix pair_squared_diffs(const Matrix& e, const std::vector<NodePair>& pairs) {
    Matrix out(pairs.size(), e.cols());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto ri = e.row(static_cast<std::size_t>(pairs[p].first));
        const auto rj = e.row(static_cast<std::size_t>(pairs[p].second));
        for (std::size_t a = 0; a < ri.size(); ++a) {
            const double d = ri[a] - rj[a];
            out(p, a) = d * d;
        }
    }
    return out;
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    if (x.size() < 2) throw std::invalid_argument("pearson: need at least 2 elements");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

double psi(const std::vector<double>& d_f, const std::vector<double>& d_e) {
    const auto r = pearson(d_f, d_e);
    if (!r.has_value()) return 1.0;  // degenerate distances reconstruct nothing
    return std::clamp(1.0 - *r * *r, 0.0, 1.0);
}

}  // namespace structrank
