#ifndef TNET_SEGMENTATION_HPP
#define TNET_SEGMENTATION_HPP

#include <optional>
#include <vector>

#include "tnet/common.hpp"

namespace tnet {

/// Breakpoint set of an offline segmentation. Breakpoints are strictly
/// increasing interior indices: a breakpoint b splits ... [.., b) [b, ..) ...
/// `total_cost` is the sum of per-segment costs, penalty excluded.
struct Segmentation {
    std::vector<int> breakpoints;
    double total_cost = 0.0;
    std::optional<double> penalty_beta;
    std::optional<int> fixed_k;
};

/// O(1) least-squares segment costs backed by prefix sums. The fit abscissa
/// defaults to the sample index; pass explicit abscissae for wall-clock fits.
class SegmentCosts {
public:
    explicit SegmentCosts(const std::vector<double>& y,
                          const std::vector<double>* x = nullptr);

    /// Residual sum of squares of the affine fit on y[a..b), b - a >= 2.
    double cost(int a, int b) const;
    int size() const { return n_; }

private:
    int n_;
    std::vector<double> sx_, sxx_, sy_, syy_, sxy_;
};

/// Residual sum of squares of the least-squares affine fit on y[a..b).
double linear_cost(const std::vector<double>& y, int a, int b,
                   const std::vector<double>* x = nullptr);

/// Globally optimal segmentation with exactly k breakpoints (dynamic
/// programming over suffixes); ties resolved toward the lexicographically
/// smallest breakpoint vector.
Segmentation segment_fixed_k(const std::vector<double>& y, int k, int min_size = 2,
                             const std::vector<double>* x = nullptr);

/// Optimal-partition search minimizing total cost + beta * |breakpoints|.
/// May return an empty breakpoint set.
Segmentation segment_penalized(const std::vector<double>& y, double beta, int min_size = 2,
                               const std::vector<double>* x = nullptr);

/// Hausdorff distance between two non-empty breakpoint sets: the larger of
/// the two directed max-min distances.
double hausdorff(const std::vector<double>& truth, const std::vector<double>& prediction);

} // namespace tnet

#endif
