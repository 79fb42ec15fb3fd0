#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "structrank/eval.hpp"
#include "structrank/rng.hpp"

namespace structrank {

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

// k-means++: each next centroid sampled proportionally to the squared
// distance to the nearest one already chosen.
Matrix kmeanspp_init(const Matrix& x, int s, Rng& rng) {
    const auto n = x.rows();
    Matrix centroids(static_cast<std::size_t>(s), x.cols());
    std::vector<double> d2(n, 0.0);

    auto first = rng.below(n);
    for (std::size_t c = 0; c < x.cols(); ++c) centroids(0, c) = x(first, c);
    for (std::size_t i = 0; i < n; ++i) d2[i] = sq_dist(x.row(i), centroids.row(0));

    for (int j = 1; j < s; ++j) {
        double total = 0.0;
        for (double v : d2) total += v;
        std::size_t pick;
        if (total <= 0.0) {
            pick = rng.below(n);  // all points sit on existing centroids
        } else {
            const double t = rng.uniform01() * total;
            double run = 0.0;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i) {
                run += d2[i];
                if (run > t) {
                    pick = i;
                    break;
                }
            }
        }
        for (std::size_t c = 0; c < x.cols(); ++c)
            centroids(static_cast<std::size_t>(j), c) = x(pick, c);
        for (std::size_t i = 0; i < n; ++i)
            d2[i] = std::min(d2[i], sq_dist(x.row(i), centroids.row(static_cast<std::size_t>(j))));
    }
    return centroids;
}

// nearest centroid, ties toward the lower index
std::int32_t nearest(const Matrix& centroids, std::span<const double> p, double* dist_out) {
    std::int32_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < centroids.rows(); ++j) {
        const double d = sq_dist(p, centroids.row(j));
        if (d < best_d) {
            best_d = d;
            best = static_cast<std::int32_t>(j);
        }
    }
    if (dist_out) *dist_out = best_d;
    return best;
}

}  // namespace

Clustering cluster_features(const Matrix& standardized, int s, std::uint64_t seed) {
    const auto n = standardized.rows();
    if (s < 1) throw std::invalid_argument("cluster_features: s must be >= 1");
    if (static_cast<std::size_t>(s) > n)
        throw std::invalid_argument("cluster_features: s exceeds the node count");

    constexpr int kMaxIter = 300;
    constexpr double kShiftTol = 1e-6;

    Rng rng(seed);
    Matrix centroids = kmeanspp_init(standardized, s, rng);

    Clustering cl;
    cl.assignment.assign(n, 0);
    cl.sizes.assign(static_cast<std::size_t>(s), 0);
    std::vector<double> point_d2(n, 0.0);

    for (int iter = 1; iter <= kMaxIter; ++iter) {
        cl.iterations = iter;
        std::fill(cl.sizes.begin(), cl.sizes.end(), 0);
        for (std::size_t i = 0; i < n; ++i) {
            cl.assignment[i] = nearest(centroids, standardized.row(i), &point_d2[i]);
            ++cl.sizes[cl.assignment[i]];
        }

        // re-seed empty clusters from the farthest point (from donors that
        // keep at least one member)
        for (int j = 0; j < s; ++j) {
            if (cl.sizes[j] > 0) continue;
            std::size_t far = n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (cl.sizes[cl.assignment[i]] < 2) continue;
                if (point_d2[i] > far_d) {
                    far_d = point_d2[i];
                    far = i;
                }
            }
            if (far == n) continue;  // nothing to steal, cluster stays empty
            --cl.sizes[cl.assignment[far]];
            cl.assignment[far] = j;
            ++cl.sizes[j];
            for (std::size_t c = 0; c < centroids.cols(); ++c)
                centroids(static_cast<std::size_t>(j), c) = standardized(far, c);
            point_d2[far] = 0.0;
        }

        Matrix next(centroids.rows(), centroids.cols());
        for (std::size_t i = 0; i < n; ++i) {
            const auto j = static_cast<std::size_t>(cl.assignment[i]);
            for (std::size_t c = 0; c < next.cols(); ++c) next(j, c) += standardized(i, c);
        }
        double shift = 0.0;
        for (int j = 0; j < s; ++j) {
            const auto js = static_cast<std::size_t>(j);
            if (cl.sizes[js] == 0) {
                for (std::size_t c = 0; c < next.cols(); ++c) next(js, c) = centroids(js, c);
                continue;
            }
            const double inv = 1.0 / static_cast<double>(cl.sizes[js]);
            for (std::size_t c = 0; c < next.cols(); ++c) next(js, c) *= inv;
            shift = std::max(shift, std::sqrt(sq_dist(next.row(js), centroids.row(js))));
        }
        centroids = std::move(next);
        if (shift < kShiftTol) {
            cl.converged = true;
            break;
        }
    }

    // final assignment against the settled centroids
    std::fill(cl.sizes.begin(), cl.sizes.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        cl.assignment[i] = nearest(centroids, standardized.row(i), nullptr);
        ++cl.sizes[cl.assignment[i]];
    }
    return cl;
}

}  // namespace structrank
