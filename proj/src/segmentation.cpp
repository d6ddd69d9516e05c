#include "tnet/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tnet {

SegmentCosts::SegmentCosts(const std::vector<double>& y, const std::vector<double>* x)
    : n_(static_cast<int>(y.size())) {
    if (x && static_cast<int>(x->size()) != n_)
        throw DataError("abscissa length differs from signal length");
    sx_.assign(n_ + 1, 0.0);
    sxx_.assign(n_ + 1, 0.0);
    sy_.assign(n_ + 1, 0.0);
    syy_.assign(n_ + 1, 0.0);
    sxy_.assign(n_ + 1, 0.0);
    for (int i = 0; i < n_; ++i) {
        double xi = x ? (*x)[i] : static_cast<double>(i);
        sx_[i + 1] = sx_[i] + xi;
        sxx_[i + 1] = sxx_[i] + xi * xi;
        sy_[i + 1] = sy_[i] + y[i];
        syy_[i + 1] = syy_[i] + y[i] * y[i];
        sxy_[i + 1] = sxy_[i] + xi * y[i];
    }
}

double SegmentCosts::cost(int a, int b) const {
    if (a < 0 || b > n_ || b - a < 2)
        throw DataError("segment [" + std::to_string(a) + ", " + std::to_string(b) +
                        ") too short for an affine fit");
    const double n = static_cast<double>(b - a);
    const double sx = sx_[b] - sx_[a];
    const double sy = sy_[b] - sy_[a];
    const double vx = (sxx_[b] - sxx_[a]) - sx * sx / n;
    const double vy = (syy_[b] - syy_[a]) - sy * sy / n;
    const double cxy = (sxy_[b] - sxy_[a]) - sx * sy / n;
    double rss = vx > 0.0 ? vy - cxy * cxy / vx : vy;
    return rss > 0.0 ? rss : 0.0;
}

double linear_cost(const std::vector<double>& y, int a, int b, const std::vector<double>* x) {
    return SegmentCosts(y, x).cost(a, b);
}

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Segmentation segment_fixed_k(const std::vector<double>& y, int k, int min_size,
                             const std::vector<double>* x) {
    const int gamma = static_cast<int>(y.size());
    if (min_size < 2)
        throw DataError("min_size must be at least 2 for an affine fit");
    if (k < 1)
        throw DataError("breakpoint count must be at least 1");
    if (gamma < (k + 1) * min_size)
        throw DataError("signal of length " + std::to_string(gamma) + " cannot hold " +
                        std::to_string(k) + " breakpoints with min_size " +
                        std::to_string(min_size));
    SegmentCosts costs(y, x);

    // suffix[j][a]: optimal cost of splitting [a, gamma) into j+1 segments.
    // Scanning candidate breaks in ascending order with strict improvement
    // keeps the smallest minimizer, so front-to-back reconstruction yields
    // the lexicographically smallest optimal breakpoint vector.
    std::vector<std::vector<double>> suffix(k + 1, std::vector<double>(gamma + 1, kInf));
    std::vector<std::vector<int>> arg(k + 1, std::vector<int>(gamma + 1, -1));
    for (int a = 0; a + min_size <= gamma; ++a) suffix[0][a] = costs.cost(a, gamma);
    for (int j = 1; j <= k; ++j) {
        for (int a = 0; a + (j + 1) * min_size <= gamma; ++a) {
            for (int b = a + min_size; b <= gamma - j * min_size; ++b) {
                if (suffix[j - 1][b] == kInf) continue;
                double cand = costs.cost(a, b) + suffix[j - 1][b];
                if (cand < suffix[j][a]) {
                    suffix[j][a] = cand;
                    arg[j][a] = b;
                }
            }
        }
    }

    Segmentation seg;
    seg.fixed_k = k;
    int a = 0;
    for (int j = k; j >= 1; --j) {
        int b = arg[j][a];
        seg.breakpoints.push_back(b);
        a = b;
    }
    int prev = 0;
    for (int b : seg.breakpoints) {
        seg.total_cost += costs.cost(prev, b);
        prev = b;
    }
    seg.total_cost += costs.cost(prev, gamma);
    return seg;
}

Segmentation segment_penalized(const std::vector<double>& y, double beta, int min_size,
                               const std::vector<double>* x) {
    const int gamma = static_cast<int>(y.size());
    if (min_size < 2)
        throw DataError("min_size must be at least 2 for an affine fit");
    if (!(beta > 0.0))
        throw DataError("penalty must be positive");
    if (gamma < min_size)
        throw DataError("signal too short to segment");
    SegmentCosts costs(y, x);

    // suffix[a]: optimal cost (segments + beta per internal break) of [a, gamma).
    // The no-break option is evaluated first, so on exact ties shorter
    // breakpoint vectors win, then smaller break positions.
    std::vector<double> suffix(gamma + 1, kInf);
    std::vector<int> arg(gamma + 1, gamma);
    for (int a = gamma - min_size; a >= 0; --a) {
        suffix[a] = costs.cost(a, gamma);
        arg[a] = gamma;
        for (int b = a + min_size; b + min_size <= gamma; ++b) {
            double cand = (costs.cost(a, b) + beta) + suffix[b];
            if (cand < suffix[a]) {
                suffix[a] = cand;
                arg[a] = b;
            }
        }
    }

    Segmentation seg;
    seg.penalty_beta = beta;
    int a = 0;
    while (arg[a] != gamma) {
        seg.breakpoints.push_back(arg[a]);
        a = arg[a];
    }
    int prev = 0;
    for (int b : seg.breakpoints) {
        seg.total_cost += costs.cost(prev, b);
        prev = b;
    }
    seg.total_cost += costs.cost(prev, gamma);
    return seg;
}

double hausdorff(const std::vector<double>& truth, const std::vector<double>& prediction) {
    if (truth.empty() || prediction.empty())
        throw DataError("Hausdorff distance is undefined for empty breakpoint sets");
    auto directed = [](const std::vector<double>& from, const std::vector<double>& to) {
        double worst = 0.0;
        for (double a : from) {
            double best = kInf;
            for (double b : to) best = std::min(best, std::abs(a - b));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(truth, prediction), directed(prediction, truth));
}

} // namespace tnet
