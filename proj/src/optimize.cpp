#include "structrank/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace structrank {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

struct HistoryPair {
    std::vector<double> s, y;
    double rho;
};

// Two-loop recursion; returns the quasi-Newton direction -H*g.
std::vector<double> lbfgs_direction(const std::vector<double>& g,
                                    const std::deque<HistoryPair>& hist) {
    std::vector<double> q = g;
    std::vector<double> alpha(hist.size());
    for (std::size_t idx = hist.size(); idx-- > 0;) {
        alpha[idx] = hist[idx].rho * dot(hist[idx].s, q);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[idx] * hist[idx].y[i];
    }
    if (!hist.empty()) {
        const auto& last = hist.back();
        const double yy = dot(last.y, last.y);
        const double gamma = yy > 0.0 ? dot(last.s, last.y) / yy : 1.0;
        for (auto& v : q) v *= gamma;
    }
    for (std::size_t idx = 0; idx < hist.size(); ++idx) {
        const double beta = hist[idx].rho * dot(hist[idx].y, q);
        for (std::size_t i = 0; i < q.size(); ++i) q[i] += hist[idx].s[i] * (alpha[idx] - beta);
    }
    for (auto& v : q) v = -v;
    return q;
}

}  // namespace

BoxMinimizeResult minimize_box(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, double lo, double hi,
                               const BoxMinimizeOptions& opts) {
    if (lo >= hi) throw std::invalid_argument("minimize_box: lo must be < hi");
    const auto k = x0.size();
    if (k == 0) throw std::invalid_argument("minimize_box: empty start point");

    auto clamp_point = [&](std::vector<double>& x) {
        for (auto& v : x) v = std::clamp(v, lo, hi);
    };

    // central differences, clipped at the box (one-sided at an active bound)
    auto gradient = [&](const std::vector<double>& x) {
        std::vector<double> g(k, 0.0);
        std::vector<double> probe = x;
        for (std::size_t i = 0; i < k; ++i) {
            const double xp = std::min(hi, x[i] + opts.fd_step);
            const double xm = std::max(lo, x[i] - opts.fd_step);
            probe[i] = xp;
            const double fp = f(probe);
            probe[i] = xm;
            const double fm = f(probe);
            probe[i] = x[i];
            g[i] = (fp - fm) / (xp - xm);
        }
        return g;
    };

    clamp_point(x0);
    std::vector<double> x = x0;
    double fx = f(x);
    BoxMinimizeResult best{x, fx, 0, false};

    std::vector<double> g = gradient(x);
    std::deque<HistoryPair> hist;

    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        best.iterations = iter;
        std::vector<double> dir = lbfgs_direction(g, hist);

        bool accepted = false;
        std::vector<double> xn(k);
        double fn = fx;
        for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
            if (attempt == 1) {
                // quasi-Newton direction failed along the projected path;
                // retry as plain projected gradient descent
                hist.clear();
                for (std::size_t i = 0; i < k; ++i) dir[i] = -g[i];
            }
            double step = 1.0;
            for (int halving = 0; halving < 60; ++halving, step *= 0.5) {
                double moved = 0.0;
                for (std::size_t i = 0; i < k; ++i) {
                    xn[i] = std::clamp(x[i] + step * dir[i], lo, hi);
                    moved = std::max(moved, std::abs(xn[i] - x[i]));
                }
                if (moved == 0.0) break;  // fully blocked by the bounds
                fn = f(xn);
                double gd = 0.0;  // directional derivative along the projected step
                for (std::size_t i = 0; i < k; ++i) gd += g[i] * (xn[i] - x[i]);
                if (gd < 0.0 && fn <= fx + 1e-4 * gd) {
                    accepted = true;
                    break;
                }
            }
        }
        if (!accepted) {
            best.converged = true;  // no descent step exists at this resolution
            break;
        }

        std::vector<double> gn = gradient(xn);
        HistoryPair pair;
        pair.s.resize(k);
        pair.y.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            pair.s[i] = xn[i] - x[i];
            pair.y[i] = gn[i] - g[i];
        }
        const double sy = dot(pair.s, pair.y);
        if (sy > 1e-12) {
            pair.rho = 1.0 / sy;
            hist.push_back(std::move(pair));
            if (static_cast<int>(hist.size()) > opts.history) hist.pop_front();
        }

        const double decrease = fx - fn;
        x = std::move(xn);
        xn.resize(k);
        fx = fn;
        g = std::move(gn);
        if (fx < best.fx) {
            best.x = x;
            best.fx = fx;
        }
        if (decrease < opts.tol) {
            best.converged = true;
            break;
        }
    }

    return best;
}

}  // namespace structrank
