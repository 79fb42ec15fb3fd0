#include <cmath>
#include <stdexcept>

#include "structrank/eval.hpp"

namespace structrank {

Matrix standardize(const Matrix& m, Scaler scaler) {
    if (!m.all_finite()) throw std::invalid_argument("standardize: non-finite input");
    Matrix out(m.rows(), m.cols());
    const auto n = m.rows();
    if (n == 0) return out;

    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (scaler == Scaler::MinMax) {
            double lo = m(0, c), hi = m(0, c);
            for (std::size_t r = 1; r < n; ++r) {
                lo = std::min(lo, m(r, c));
                hi = std::max(hi, m(r, c));
            }
            if (hi > lo) {
                const double span = hi - lo;
                for (std::size_t r = 0; r < n; ++r) out(r, c) = (m(r, c) - lo) / span;
            }
            // constant column: stays all-zero
        } else {
            double mean = 0.0;
            for (std::size_t r = 0; r < n; ++r) mean += m(r, c);
            mean /= static_cast<double>(n);
            double var = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                const double d = m(r, c) - mean;
                var += d * d;
            }
            var /= static_cast<double>(n);  // population variance
            if (var > 0.0) {
                const double inv_sd = 1.0 / std::sqrt(var);
                for (std::size_t r = 0; r < n; ++r) out(r, c) = (m(r, c) - mean) * inv_sd;
            }
        }
    }
    return out;
}

}  // namespace structrank
