#ifndef TNET_DIFFUSION_HPP
#define TNET_DIFFUSION_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "tnet/common.hpp"
#include "tnet/linkstream.hpp"

namespace tnet {

/// Combinatorial Laplacian L = D - A of an unweighted static graph.
struct Laplacian {
    Eigen::MatrixXd matrix;
    std::vector<int> degrees;
};

Laplacian laplacian(const StaticGraph& graph);

/// exp(-lambda * L * tau) via symmetric eigendecomposition. Symmetric,
/// doubly stochastic; tau = 0 gives the identity.
Eigen::MatrixXd heat_kernel_static(const Laplacian& lap, double lambda, double tau);

/// Row-stochastic transition matrix of inhomogeneous heat diffusion between
/// two times. `min_entry_pre_clamp` records the most negative entry seen in
/// any constituent exponential before clamping, as a numerics diagnostic.
struct TransitionKernel {
    Eigen::MatrixXd matrix;
    double t1 = 0.0;
    double t2 = 0.0;
    double rate_lambda = 0.0;
    Direction direction = Direction::Forward;
    double min_entry_pre_clamp = 0.0;
};

/// Per-interval heat kernels over the temporal grid for one diffusion rate.
/// Intervals [grid[k], grid[k+1]) partition [0, t_max); every matrix is
/// symmetric and doubly stochastic.
struct KernelStore {
    double rate_lambda = 0.0;
    std::vector<double> grid;
    std::vector<Eigen::MatrixXd> matrices;
};

/// Caches the symmetric eigendecomposition of each grid interval's
/// Laplacian so kernels for any rate and any sub-window are two dense
/// products away. All state is immutable after construction.
class DiffusionEngine {
public:
    explicit DiffusionEngine(LinkStream stream);

    const LinkStream& stream() const { return stream_; }
    const std::vector<double>& grid() const { return grid_; }

    /// Forward kernel over [t1, t2] in this engine's stream time.
    TransitionKernel kernel(double lambda, double t1, double t2) const;

    /// Heat kernel of grid interval k over a duration tau <= its length.
    Eigen::MatrixXd interval_kernel(int k, double lambda, double tau, double* min_pre_clamp = nullptr) const;

    KernelStore inter_transition_store(double lambda) const;

private:
    LinkStream stream_;
    std::vector<double> grid_;
    struct IntervalEig {
        Eigen::MatrixXd vecs;
        Eigen::VectorXd vals;
    };
    std::vector<IntervalEig> eigs_;
};

KernelStore inter_transition_matrices(const LinkStream& stream, double lambda);

/// Composed kernel over [t1, t2]. Backward kernels are built from the
/// time-reversed stream over the reflected window and reported against the
/// original t1, t2.
TransitionKernel kernel(const LinkStream& stream, double lambda, double t1, double t2,
                        Direction direction = Direction::Forward);

/// Store-backed composition; t1 and t2 must lie on the store's grid.
TransitionKernel kernel(const KernelStore& store, double lambda, double t1, double t2,
                        Direction direction = Direction::Forward);

/// Binary round-trip of a kernel store (bit-exact doubles, little-endian).
void save_store(const KernelStore& store, const std::string& path);
KernelStore load_store(const std::string& path);

} // namespace tnet

#endif
