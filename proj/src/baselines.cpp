#include "tnet/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "tnet/diffusion.hpp"

namespace tnet {

FrobeniusSignal frobenius_signal(const SnapshotSequence& snaps, int ell) {
    if (ell < 1)
        throw DataError("Frobenius window length must be at least 1");
    const int count = snaps.size();
    if (count <= ell)
        throw DataError("snapshot sequence shorter than the Frobenius window");

    std::vector<double> norms(count);
    for (int t = 0; t < count; ++t) norms[t] = snaps.snapshots[t].norm();

    FrobeniusSignal sig;
    sig.window_len_ell = ell;
    sig.values.reserve(count - ell);
    for (int t = ell; t < count; ++t) {
        double acc = 0.0;
        int used = 0;
        for (int j = 1; j <= ell; ++j) {
            const bool z_t = norms[t] == 0.0, z_p = norms[t - j] == 0.0;
            if (z_t && z_p) {
                ++used; // both empty: distance 0
            } else if (z_t || z_p) {
                continue; // undefined normalization: skip and renormalize
            } else {
                acc += (snaps.snapshots[t] - snaps.snapshots[t - j]).squaredNorm() /
                       (norms[t] * norms[t - j]);
                ++used;
            }
        }
        sig.values.push_back(used > 0 ? acc / used : 0.0);
    }
    return sig;
}

std::vector<Eigen::VectorXd> lad_signatures(const SnapshotSequence& snaps, int k) {
    const int n = snaps.node_count();
    if (k < 1 || k > n)
        throw DataError("signature size must be in [1, N]");
    std::vector<Eigen::VectorXd> sigs;
    sigs.reserve(snaps.size());
    for (const auto& A : snaps.snapshots) {
        StaticGraph g;
        g.node_count = n;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (A(u, v) != 0.0) g.edges.push_back({u, v});
        // L is symmetric PSD, so its singular values are its eigenvalues.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(g).matrix,
                                                          Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw NumericalError("eigendecomposition failed on snapshot Laplacian");
        Eigen::VectorXd top(k);
        for (int i = 0; i < k; ++i) top[i] = es.eigenvalues()[n - 1 - i];
        double norm = top.norm();
        if (norm > 0.0) top /= norm;
        sigs.push_back(std::move(top));
    }
    return sigs;
}

LadScore lad_scores(const std::vector<Eigen::VectorXd>& signatures, int window_len) {
    if (window_len < 1)
        throw DataError("LAD window length must be at least 1");
    const int count = static_cast<int>(signatures.size());
    if (count <= window_len)
        throw DataError("signature sequence shorter than the LAD window");

    LadScore out;
    out.signatures = signatures;
    out.window_len = window_len;
    out.k_components = static_cast<int>(signatures.front().size());
    out.scores.reserve(count - window_len);

    const int k = out.k_components;
    for (int t = window_len; t < count; ++t) {
        Eigen::MatrixXd window(k, window_len);
        for (int j = 0; j < window_len; ++j) window.col(j) = signatures[t - window_len + j];
        double score;
        if (window.norm() == 0.0) {
            // No history direction: an empty present matches an empty past.
            score = signatures[t].norm() == 0.0 ? 0.0 : 1.0;
        } else {
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(window, Eigen::ComputeThinU);
            Eigen::VectorXd u = svd.matrixU().col(0);
            score = 1.0 - std::abs(signatures[t].dot(u));
        }
        out.scores.push_back(std::clamp(score, 0.0, 1.0));
    }
    return out;
}

std::vector<int> top_k_indices(const std::vector<double>& values, int k) {
    if (k < 1)
        throw DataError("top-k requires k >= 1");
    if (k > static_cast<int>(values.size()))
        throw DataError("top-k larger than the score count");
    std::vector<int> idx(values.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return values[a] > values[b]; });
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<int> lad_top_k(const LadScore& score, int k) {
    auto idx = top_k_indices(score.scores, k);
    for (int& i : idx) i += score.window_len;
    return idx;
}

} // namespace tnet
