#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "structrank/eval.hpp"
#include "structrank/rng.hpp"

namespace structrank {

namespace {

// Fenwick tree over non-negative int64 weights; find() maps a uniform draw in
// [0, total) to the owning index.
class Fenwick {
  public:
    explicit Fenwick(const std::vector<std::int64_t>& weights)
        : n_(weights.size()), tree_(weights.size() + 1, 0), total_(0) {
        for (std::size_t i = 0; i < n_; ++i) {
            tree_[i + 1] += weights[i];
            const std::size_t parent = (i + 1) + ((i + 1) & (~i));
            if (parent <= n_) tree_[parent] += tree_[i + 1];
            total_ += weights[i];
        }
    }

    void add(std::size_t i, std::int64_t delta) {
        total_ += delta;
        for (std::size_t k = i + 1; k <= n_; k += k & (0 - k)) tree_[k] += delta;
    }

    std::int64_t total() const { return total_; }

    std::size_t find(std::int64_t value) const {
        std::size_t idx = 0;
        std::size_t mask = 1;
        while (mask * 2 <= n_) mask *= 2;
        for (; mask > 0; mask /= 2) {
            const std::size_t next = idx + mask;
            if (next <= n_ && tree_[next] <= value) {
                idx = next;
                value -= tree_[next];
            }
        }
        return idx;  // 0-based index
    }

  private:
    std::size_t n_;
    std::vector<std::int64_t> tree_;
    std::int64_t total_;
};

inline std::uint64_t pair_key(std::int32_t a, std::int32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

inline std::uint64_t cluster_pair_key(std::int32_t i, std::int32_t j) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
           static_cast<std::uint32_t>(j);
}

}  // namespace

PairSample sample_pairs(const Clustering& cl, double within_frac, std::int64_t pair_budget,
                        std::uint64_t seed) {
    if (within_frac < 0.0 || within_frac > 1.0)
        throw std::invalid_argument("sample_pairs: within fraction must lie in [0,1]");
    if (pair_budget < 1) throw std::invalid_argument("sample_pairs: pair budget must be >= 1");

    const auto s = cl.sizes.size();
    const auto n = cl.assignment.size();
    std::vector<std::vector<std::int32_t>> members(s);
    for (std::size_t i = 0; i < s; ++i)
        members[i].reserve(static_cast<std::size_t>(cl.sizes[i]));
    for (std::size_t u = 0; u < n; ++u)
        members[cl.assignment[u]].push_back(static_cast<std::int32_t>(u));

    Rng rng(seed);
    PairSample out;
    std::unordered_set<std::uint64_t> seen;

    // --- within-cluster pairs -----------------------------------------
    std::vector<std::int64_t> pool(s);
    std::int64_t pool_total = 0;
    for (std::size_t i = 0; i < s; ++i) {
        pool[i] = cl.sizes[i] * (cl.sizes[i] - 1) / 2;
        pool_total += pool[i];
    }
    const auto m_within = std::min(
        static_cast<std::int64_t>(std::floor(within_frac * static_cast<double>(pair_budget))),
        pool_total);

    if (m_within > 0) {
        Fenwick remaining(pool);  // weight_i = C(c_i,2) - x_i
        out.within.reserve(static_cast<std::size_t>(m_within));
        seen.reserve(static_cast<std::size_t>(m_within) * 2);
        const std::int64_t attempt_cap = 100 * m_within;
        std::int64_t attempts = 0;
        while (static_cast<std::int64_t>(out.within.size()) < m_within &&
               attempts < attempt_cap) {
            ++attempts;
            const auto i = remaining.find(
                static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(remaining.total()))));
            const auto& mem = members[i];
            const auto a = rng.below(mem.size());
            auto b = rng.below(mem.size() - 1);
            if (b >= a) ++b;
            const auto u = mem[a];
            const auto v = mem[b];
            if (!seen.insert(pair_key(u, v)).second) continue;  // duplicate, discard
            out.within.emplace_back(std::min(u, v), std::max(u, v));
            remaining.add(i, -1);
        }
        out.within_short = static_cast<std::int64_t>(out.within.size()) < m_within;
    }

    // --- between-cluster pairs ----------------------------------------
    std::int64_t cross_total = 0;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) cross_total += cl.sizes[i] * cl.sizes[j];
    const auto m_between = std::min(
        static_cast<std::int64_t>(
            std::floor((1.0 - within_frac) * static_cast<double>(pair_budget))),
        cross_total);

    // An attempt draws one node pair after the cluster pair has been chosen
    // with probability proportional to c_i*c_j - x_ij; only duplicates burn
    // attempts. Up to a few thousand clusters the cluster-pair weights are
    // held exactly in a Fenwick tree; beyond that they are realized by
    // proposing i ~ c_i, j ~ c_j and thinning by x_ij/(c_i*c_j), which keeps
    // memory at O(s) with the identical accepted-pair distribution.
    constexpr std::size_t kExactPairClusterLimit = 2048;

    if (m_between > 0 && s <= kExactPairClusterLimit) {
        std::vector<std::int64_t> weights;
        std::vector<std::pair<std::int32_t, std::int32_t>> cluster_pairs;
        weights.reserve(s * (s - 1) / 2);
        cluster_pairs.reserve(s * (s - 1) / 2);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = i + 1; j < s; ++j) {
                weights.push_back(cl.sizes[i] * cl.sizes[j]);
                cluster_pairs.emplace_back(static_cast<std::int32_t>(i),
                                           static_cast<std::int32_t>(j));
            }
        Fenwick remaining(weights);
        out.between.reserve(static_cast<std::size_t>(m_between));
        const std::int64_t attempt_cap = 100 * m_between;
        std::int64_t attempts = 0;
        while (static_cast<std::int64_t>(out.between.size()) < m_between &&
               attempts < attempt_cap) {
            ++attempts;
            const auto idx = remaining.find(
                static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(remaining.total()))));
            const auto [i, j] = cluster_pairs[idx];
            const auto u = members[i][rng.below(members[i].size())];
            const auto v = members[j][rng.below(members[j].size())];
            if (!seen.insert(pair_key(u, v)).second) continue;  // duplicate, discard
            out.between.emplace_back(std::min(u, v), std::max(u, v));
            remaining.add(idx, -1);
        }
        out.between_short = static_cast<std::int64_t>(out.between.size()) < m_between;
    } else if (m_between > 0) {
        std::unordered_map<std::uint64_t, std::int64_t> sampled_cross;  // x_ij, accepted only
        out.between.reserve(static_cast<std::size_t>(m_between));
        const std::int64_t attempt_cap = 100 * m_between;
        const std::int64_t proposal_cap = 1000 * m_between + 1000000;
        std::int64_t attempts = 0, proposals = 0;
        while (static_cast<std::int64_t>(out.between.size()) < m_between &&
               attempts < attempt_cap && proposals < proposal_cap) {
            ++proposals;
            auto i = cl.assignment[rng.below(n)];  // node-uniform draw = cluster ~ c_i
            auto j = cl.assignment[rng.below(n)];
            if (i == j) continue;
            if (i > j) std::swap(i, j);
            const auto key = cluster_pair_key(i, j);
            const std::int64_t capacity = cl.sizes[i] * cl.sizes[j];
            auto it = sampled_cross.find(key);
            const std::int64_t x_ij = it == sampled_cross.end() ? 0 : it->second;
            if (x_ij > 0 &&
                static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(capacity))) < x_ij)
                continue;  // thinning; realizes the c_i*c_j - x_ij law
            ++attempts;
            const auto u = members[i][rng.below(members[i].size())];
            const auto v = members[j][rng.below(members[j].size())];
            if (!seen.insert(pair_key(u, v)).second) continue;
            out.between.emplace_back(std::min(u, v), std::max(u, v));
            ++sampled_cross[key];
        }
        out.between_short = static_cast<std::int64_t>(out.between.size()) < m_between;
    }

    return out;
}

}  // namespace structrank
