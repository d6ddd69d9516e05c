#ifndef TNET_ENTROPY_HPP
#define TNET_ENTROPY_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "tnet/common.hpp"
#include "tnet/diffusion.hpp"
#include "tnet/linkstream.hpp"

namespace tnet {

/// Probability vector over the node set; validated to sum to 1 within 1e-12.
struct Distribution {
    Eigen::VectorXd probs;

    explicit Distribution(Eigen::VectorXd p);
    static Distribution uniform(int n);
};

/// Time-indexed entropy values (nats) for one (lambda, delta, direction).
/// delta = 0 marks a global (unwindowed) curve.
struct EntropySignal {
    std::vector<double> times;
    std::vector<double> values;
    double rate_lambda = 0.0;
    double window_delta = 0.0;
    Direction direction = Direction::Forward;
};

/// Full complex spectrum of a kernel matrix; the von Neumann entropy of the
/// trace-normalized matrix is defined only when the spectrum is real and
/// nonnegative within tolerance.
struct SpectrumReport {
    std::vector<std::complex<double>> eigenvalues;
    bool is_real_nonnegative = false;
    std::optional<double> vn_entropy;
};

/// Shannon entropy of one probability row, natural log, 0*log(0) = 0.
double row_entropy(const Eigen::VectorXd& row);

/// KL divergence of a probability row from the uniform distribution.
double kl_to_uniform(const Eigen::VectorXd& row);

/// Average row entropy of a transition matrix weighted by the initial
/// distribution.
double conditional_entropy(const Eigen::MatrixXd& kernel, const Distribution& p0);

/// Conditional entropy of diffusion from time 0 to t. The backward variant
/// diffuses on the time-reversed stream from t_max down to t, so it is
/// non-increasing when read in original time.
double global_entropy(const LinkStream& stream, double lambda, double t,
                      const Distribution& p0, Direction direction = Direction::Forward);

EntropySignal global_entropy_curve(const LinkStream& stream, double lambda,
                                   const std::vector<double>& eval_times,
                                   const Distribution& p0,
                                   Direction direction = Direction::Forward);

/// Entropy of the kernel over [t - delta/2, t + delta/2] with uniform start.
double local_entropy(const DiffusionEngine& engine, double lambda, double t, double delta);
double local_entropy(const LinkStream& stream, double lambda, double t, double delta,
                     Direction direction = Direction::Forward);

enum class SignalGrid { Event, Uniform };

/// Local-entropy signal sampled on the event grid or on a uniform grid of
/// the given step, restricted to [delta/2, t_max - delta/2].
EntropySignal local_entropy_signal(const LinkStream& stream, double lambda, double delta,
                                   SignalGrid mode = SignalGrid::Event, double step = 0.0,
                                   Direction direction = Direction::Forward);

/// Same signal at caller-chosen times, reusing one engine (and its cached
/// interval decompositions) across all evaluation points.
EntropySignal local_entropy_signal_at(const DiffusionEngine& engine, double lambda,
                                      double delta, const std::vector<double>& times);

/// Component-size bound: sum over connected components of the unweighted
/// footprint on [a, b] of (|V_k|/N) * log|V_k|.
double upper_bound(const LinkStream& stream, double a, double b);

/// Shannon entropy of the eigenvalue distribution of exp(-tau L) / Z.
double von_neumann_entropy(const Laplacian& lap, double tau);

SpectrumReport spectral_check(const Eigen::MatrixXd& kernel_matrix);

/// CSV export: `# lambda=..., delta=..., direction=...` then `t,value` rows.
void save_signal_csv(const EntropySignal& signal, const std::string& path);
EntropySignal load_signal_csv(const std::string& path);

} // namespace tnet

#endif
