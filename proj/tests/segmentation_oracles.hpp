#ifndef TNET_TESTS_SEGMENTATION_ORACLES_HPP
#define TNET_TESTS_SEGMENTATION_ORACLES_HPP

// Exhaustive-enumeration oracles for the segmentation searches. They visit
// every admissible breakpoint vector explicitly and accumulate totals
// right-to-left, which makes totals bitwise comparable with the dynamic
// programs for the same vector.

#include <limits>
#include <vector>

#include "tnet/segmentation.hpp"

namespace tnet_tests {

struct FixedKOracle {
    const tnet::SegmentCosts& costs;
    int min_size;
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_breaks;
    std::vector<int> current;

    void recurse(int a, int remaining) {
        const int gamma = costs.size();
        if (remaining == 0) {
            double total = costs.cost(a, gamma);
            for (int i = static_cast<int>(current.size()) - 1; i >= 0; --i) {
                int prev = i == 0 ? 0 : current[i - 1];
                total = costs.cost(prev, current[i]) + total;
            }
            if (total < best || (total == best && current < best_breaks)) {
                best = total;
                best_breaks = current;
            }
            return;
        }
        for (int b = a + min_size; b <= gamma - remaining * min_size; ++b) {
            current.push_back(b);
            recurse(b, remaining - 1);
            current.pop_back();
        }
    }
};

inline std::vector<int> oracle_fixed_k(const std::vector<double>& y, int k, int min_size = 2) {
    tnet::SegmentCosts costs(y);
    FixedKOracle oracle{costs, min_size};
    oracle.recurse(0, k);
    return oracle.best_breaks;
}

/// Enumerates breakpoint vectors from the rightmost segment inward so the
/// running totals are built with the same association as the search:
/// total = (cost(0,b1) + beta) + ((cost(b1,b2) + beta) + ... + cost(bk, gamma)).
/// Evaluates several penalties in one sweep.
struct PenalizedOracle {
    const tnet::SegmentCosts& costs;
    int min_size;
    std::vector<double> betas;
    std::vector<double> best;
    std::vector<std::vector<int>> best_breaks;
    std::vector<int> stack; // breaks right-to-left (descending)

    void run() {
        const int gamma = costs.size();
        best.assign(betas.size(), std::numeric_limits<double>::infinity());
        best_breaks.assign(betas.size(), {});
        std::vector<double> whole(betas.size(), costs.cost(0, gamma));
        candidate(whole);
        for (int b = min_size; b + min_size <= gamma; ++b) {
            stack.push_back(b);
            std::vector<double> totals(betas.size(), costs.cost(b, gamma));
            recurse(b, totals);
            stack.pop_back();
        }
    }

    void recurse(int r, const std::vector<double>& totals) {
        // Close with the leading segment [0, r).
        if (r >= min_size) {
            std::vector<double> closed(betas.size());
            for (std::size_t i = 0; i < betas.size(); ++i)
                closed[i] = (costs.cost(0, r) + betas[i]) + totals[i];
            candidate(closed);
        }
        for (int p = min_size; p + min_size <= r; ++p) {
            stack.push_back(p);
            std::vector<double> extended(betas.size());
            for (std::size_t i = 0; i < betas.size(); ++i)
                extended[i] = (costs.cost(p, r) + betas[i]) + totals[i];
            recurse(p, extended);
            stack.pop_back();
        }
    }

    void candidate(const std::vector<double>& totals) {
        for (std::size_t i = 0; i < betas.size(); ++i) {
            if (totals[i] > best[i]) continue;
            std::vector<int> vec(stack.rbegin(), stack.rend());
            if (totals[i] < best[i] || vec < best_breaks[i]) {
                best[i] = totals[i];
                best_breaks[i] = std::move(vec);
            }
        }
    }
};

inline std::vector<std::vector<int>> oracle_penalized_multi(const std::vector<double>& y,
                                                            const std::vector<double>& betas,
                                                            int min_size = 2) {
    tnet::SegmentCosts costs(y);
    PenalizedOracle oracle{costs, min_size, betas, {}, {}, {}};
    oracle.run();
    return oracle.best_breaks;
}

inline std::vector<int> oracle_penalized(const std::vector<double>& y, double beta,
                                         int min_size = 2) {
    return oracle_penalized_multi(y, {beta}, min_size)[0];
}

} // namespace tnet_tests

#endif
