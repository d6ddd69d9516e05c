#include "tnet/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include <Eigen/Dense>

namespace tnet {

namespace {

constexpr double kClampTolerance = 1e-12;
constexpr double kEigResidualRel = 1e-9;

/// Clamp tiny negative entries from floating-point cancellation; anything
/// more negative than the tolerance is a real integrity failure.
void clamp_nonnegative(Eigen::MatrixXd& m, double* min_pre_clamp) {
    double lo = m.minCoeff();
    if (min_pre_clamp) *min_pre_clamp = std::min(*min_pre_clamp, lo);
    if (lo >= 0.0) return;
    if (lo < -kClampTolerance)
        throw NumericalError("kernel entry " + std::to_string(lo) +
                             " below clamp tolerance -1e-12");
    m = m.cwiseMax(0.0);
}

Eigen::MatrixXd exp_from_eig(const Eigen::MatrixXd& vecs, const Eigen::VectorXd& vals,
                             double lambda_tau, double* min_pre_clamp) {
    Eigen::VectorXd ex = (-lambda_tau * vals.array()).exp();
    Eigen::MatrixXd k = vecs * ex.asDiagonal() * vecs.transpose();
    clamp_nonnegative(k, min_pre_clamp);
    return k;
}

} // namespace

Laplacian laplacian(const StaticGraph& graph) {
    const int n = graph.node_count;
    Laplacian lap;
    lap.matrix = Eigen::MatrixXd::Zero(n, n);
    lap.degrees.assign(n, 0);
    for (const auto& [u, v] : graph.edges) {
        lap.matrix(u, v) = -1.0;
        lap.matrix(v, u) = -1.0;
        ++lap.degrees[u];
        ++lap.degrees[v];
    }
    for (int i = 0; i < n; ++i) lap.matrix(i, i) = lap.degrees[i];
    return lap;
}

namespace {

void check_eig_residual(const Eigen::MatrixXd& L, const Eigen::MatrixXd& Q,
                        const Eigen::VectorXd& w) {
    double norm_l = L.cwiseAbs().rowwise().sum().maxCoeff();
    if (norm_l == 0.0) return;
    Eigen::MatrixXd resid = L * Q - Q * w.asDiagonal();
    double r = resid.cwiseAbs().rowwise().sum().maxCoeff();
    if (r > kEigResidualRel * norm_l)
        throw NumericalError("Laplacian eigendecomposition residual too large");
}

} // namespace

Eigen::MatrixXd heat_kernel_static(const Laplacian& lap, double lambda, double tau) {
    if (!(lambda > 0.0))
        throw DataError("diffusion rate must be positive");
    if (tau < 0.0)
        throw DataError("duration must be nonnegative");
    const Eigen::Index n = lap.matrix.rows();
    if (tau == 0.0) return Eigen::MatrixXd::Identity(n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap.matrix);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigendecomposition failed");
    check_eig_residual(lap.matrix, es.eigenvectors(), es.eigenvalues());
    return exp_from_eig(es.eigenvectors(), es.eigenvalues(), lambda * tau, nullptr);
}

DiffusionEngine::DiffusionEngine(LinkStream stream) : stream_(std::move(stream)) {
    grid_ = temporal_grid(stream_).times;
    // Drop zero-length intervals (coincident endpoints are already unique in
    // the grid, so this is only about the trivial single-point case).
    eigs_.reserve(grid_.size() - 1);
    for (std::size_t k = 0; k + 1 < grid_.size(); ++k) {
        StaticGraph g = instantaneous_graph(stream_, grid_[k]);
        Laplacian lap = laplacian(g);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap.matrix);
        if (es.info() != Eigen::Success)
            throw NumericalError("eigendecomposition failed on grid interval " + std::to_string(k));
        check_eig_residual(lap.matrix, es.eigenvectors(), es.eigenvalues());
        eigs_.push_back({es.eigenvectors(), es.eigenvalues()});
    }
}

Eigen::MatrixXd DiffusionEngine::interval_kernel(int k, double lambda, double tau,
                                                 double* min_pre_clamp) const {
    return exp_from_eig(eigs_[k].vecs, eigs_[k].vals, lambda * tau, min_pre_clamp);
}

TransitionKernel DiffusionEngine::kernel(double lambda, double t1, double t2) const {
    if (!(lambda > 0.0))
        throw DataError("diffusion rate must be positive");
    if (t1 > t2)
        throw DataError("kernel requires t1 <= t2");
    if (t1 < 0.0 || t2 > stream_.t_max())
        throw DataError("kernel window outside time domain");

    const int n = stream_.node_count();
    TransitionKernel out;
    out.t1 = t1;
    out.t2 = t2;
    out.rate_lambda = lambda;
    out.direction = Direction::Forward;
    out.matrix = Eigen::MatrixXd::Identity(n, n);
    if (t1 == t2) return out;

    // Chronological left-to-right product over grid segments intersecting
    // [t1, t2]; partial boundary segments reuse the cached decompositions.
    auto it = std::upper_bound(grid_.begin(), grid_.end(), t1);
    std::size_t k = static_cast<std::size_t>(it - grid_.begin()) - 1;
    double pos = t1;
    bool first = true;
    while (pos < t2) {
        double seg_end = std::min(grid_[k + 1], t2);
        double tau = seg_end - pos;
        if (tau > 0.0) {
            Eigen::MatrixXd step = interval_kernel(static_cast<int>(k), lambda, tau,
                                                   &out.min_entry_pre_clamp);
            if (first) {
                out.matrix = std::move(step);
                first = false;
            } else {
                out.matrix = out.matrix * step;
            }
        }
        pos = seg_end;
        ++k;
    }
    return out;
}

KernelStore DiffusionEngine::inter_transition_store(double lambda) const {
    if (!(lambda > 0.0))
        throw DataError("diffusion rate must be positive");
    KernelStore store;
    store.rate_lambda = lambda;
    store.grid = grid_;
    store.matrices.reserve(eigs_.size());
    for (std::size_t k = 0; k + 1 < grid_.size(); ++k) {
        double ignored = 0.0;
        store.matrices.push_back(
            interval_kernel(static_cast<int>(k), lambda, grid_[k + 1] - grid_[k], &ignored));
    }
    return store;
}

KernelStore inter_transition_matrices(const LinkStream& stream, double lambda) {
    return DiffusionEngine(stream).inter_transition_store(lambda);
}

TransitionKernel kernel(const LinkStream& stream, double lambda, double t1, double t2,
                        Direction direction) {
    if (direction == Direction::Forward)
        return DiffusionEngine(stream).kernel(lambda, t1, t2);
    TransitionKernel k = DiffusionEngine(reverse(stream))
                             .kernel(lambda, stream.t_max() - t2, stream.t_max() - t1);
    k.t1 = t1;
    k.t2 = t2;
    k.direction = Direction::Backward;
    return k;
}

TransitionKernel kernel(const KernelStore& store, double lambda, double t1, double t2,
                        Direction direction) {
    if (lambda != store.rate_lambda)
        throw DataError("kernel store was built for a different diffusion rate");
    if (t1 > t2)
        throw DataError("kernel requires t1 <= t2");
    auto grid_index = [&](double t) {
        auto it = std::lower_bound(store.grid.begin(), store.grid.end(), t);
        if (it == store.grid.end() || *it != t)
            throw DataError("store-backed kernels require grid-aligned times");
        return static_cast<std::size_t>(it - store.grid.begin());
    };
    std::size_t a = grid_index(t1), b = grid_index(t2);
    const Eigen::Index n = store.matrices.empty()
                               ? 0
                               : store.matrices.front().rows();
    TransitionKernel out;
    out.t1 = t1;
    out.t2 = t2;
    out.rate_lambda = lambda;
    out.direction = direction;
    out.matrix = Eigen::MatrixXd::Identity(n, n);
    if (a == b) return out;
    if (direction == Direction::Forward) {
        out.matrix = store.matrices[a];
        for (std::size_t k = a + 1; k < b; ++k) out.matrix = out.matrix * store.matrices[k];
    } else {
        // Time reversal visits the same symmetric factors in reverse order.
        out.matrix = store.matrices[b - 1];
        for (std::size_t k = b - 1; k-- > a;) out.matrix = out.matrix * store.matrices[k];
    }
    return out;
}

// --- persistence -----------------------------------------------------------
//
// Layout (little-endian):
//   bytes 0..7   magic "TNKSTORE"
//   u32          version (1)
//   u32          N
//   f64          lambda
//   u64          grid point count (m+1)
//   f64 * (m+1)  grid times
//   f64 * m*N*N  matrices, row-major, chronological order

namespace {
constexpr char kMagic[8] = {'T', 'N', 'K', 'S', 'T', 'O', 'R', 'E'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_raw(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::ifstream& in, const std::string& what) {
    T v;
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw DataError("kernel store file truncated while reading " + what);
    return v;
}
} // namespace

void save_store(const KernelStore& store, const std::string& path) {
    if (store.grid.size() != store.matrices.size() + 1)
        throw DataError("inconsistent kernel store: grid/matrix count mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write kernel store: " + path);
    out.write(kMagic, sizeof(kMagic));
    write_raw(out, kVersion);
    const std::uint32_t n = store.matrices.empty()
                                ? 0u
                                : static_cast<std::uint32_t>(store.matrices.front().rows());
    write_raw(out, n);
    write_raw(out, store.rate_lambda);
    write_raw(out, static_cast<std::uint64_t>(store.grid.size()));
    for (double t : store.grid) write_raw(out, t);
    for (const auto& m : store.matrices) {
        if (m.rows() != n || m.cols() != n)
            throw DataError("inconsistent kernel store: matrix shape mismatch");
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) write_raw(out, m(i, j));
    }
}

KernelStore load_store(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open kernel store: " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw DataError("not a kernel store file: " + path);
    auto version = read_raw<std::uint32_t>(in, "version");
    if (version != kVersion)
        throw DataError("unsupported kernel store version " + std::to_string(version));
    auto n = read_raw<std::uint32_t>(in, "node count");
    KernelStore store;
    store.rate_lambda = read_raw<double>(in, "lambda");
    auto grid_size = read_raw<std::uint64_t>(in, "grid size");
    if (grid_size < 2)
        throw DataError("kernel store grid must have at least two points");
    store.grid.resize(grid_size);
    for (auto& t : store.grid) t = read_raw<double>(in, "grid time");
    store.matrices.reserve(grid_size - 1);
    for (std::uint64_t k = 0; k + 1 < grid_size; ++k) {
        Eigen::MatrixXd m(n, n);
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = 0; j < n; ++j)
                m(i, j) = read_raw<double>(in, "matrix entry");
        store.matrices.push_back(std::move(m));
    }
    char extra;
    if (in.read(&extra, 1))
        throw DataError("trailing bytes in kernel store: " + path);
    return store;
}

} // namespace tnet
