#ifndef TNET_BASELINES_HPP
#define TNET_BASELINES_HPP

#include <vector>

#include <Eigen/Core>

#include "tnet/common.hpp"
#include "tnet/linkstream.hpp"

namespace tnet {

/// Windowed normalized Frobenius distances; values[i] scores snapshot
/// i + window_len_ell against its backward window.
struct FrobeniusSignal {
    std::vector<double> values;
    int window_len_ell = 0;
};

/// F(t) = (1/l) * sum_j ||A_t - A_{t-j}||_F^2 / (||A_t||_F ||A_{t-j}||_F).
/// A pair of zero-norm snapshots contributes 0; pairs with exactly one zero
/// snapshot are skipped and the window renormalized.
FrobeniusSignal frobenius_signal(const SnapshotSequence& snaps, int ell);

/// Per-snapshot signatures: top-k singular values of the snapshot Laplacian,
/// normalized to unit Euclidean norm (the zero vector stays zero).
std::vector<Eigen::VectorXd> lad_signatures(const SnapshotSequence& snaps, int k);

/// Anomaly scores z_t = 1 - |sig_t . u| against the dominant direction u of
/// the previous window_len signatures; scores[i] scores snapshot
/// i + window_len.
struct LadScore {
    std::vector<Eigen::VectorXd> signatures;
    std::vector<double> scores;
    int window_len = 0;
    int k_components = 0;
};

LadScore lad_scores(const std::vector<Eigen::VectorXd>& signatures, int window_len);

/// Indices of the K largest values, ascending; ties favor the earlier index.
std::vector<int> top_k_indices(const std::vector<double>& values, int k);

/// Snapshot indices of the K most anomalous scores.
std::vector<int> lad_top_k(const LadScore& score, int k);

} // namespace tnet

#endif
