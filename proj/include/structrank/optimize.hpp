#pragma once

#include <functional>
#include <vector>

namespace structrank {

struct BoxMinimizeOptions {
    double tol = 1e-8;      // stop when the per-step decrease of f falls below this
    int max_iter = 200;
    double fd_step = 1e-6;  // central-difference step, clipped at the box
    int history = 10;       // L-BFGS memory
};

struct BoxMinimizeResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Projected L-BFGS over the box [lo, hi]^k with finite-difference gradients.
/// Monotone: the returned point is the best evaluated, so fx never exceeds
/// f(x0).
BoxMinimizeResult minimize_box(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, double lo, double hi,
                               const BoxMinimizeOptions& opts = {});

}  // namespace structrank
