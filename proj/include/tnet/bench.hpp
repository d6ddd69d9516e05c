#ifndef TNET_BENCH_HPP
#define TNET_BENCH_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tnet/synth.hpp"

namespace tnet::bench {

/// Train/test evaluation protocol for the snapshot benchmarks. Detection and
/// scoring happen in snapshot index space; ground truth is projected there
/// by floor division by the snapshot width.
struct BenchConfig {
    synth::BenchmarkFamily family = synth::BenchmarkFamily::ActivityBench;
    int n_train = 10;
    int n_test = 50;
    std::uint64_t seed = 42;
    double snapshot_width = 4.0;
    // Entropy window: the natural choice delta = w/2.
    std::vector<double> lambda_grid;          // defaults to 13 log points in [1e-5, 1]
    // Small log-spaced penalty grid; the low end matches the scale of the
    // normalized Frobenius signal, the high end the entropy signal in nats.
    std::vector<double> penalty_grid = {0.125, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
    std::vector<int> frob_ell_grid = {1, 2, 3, 4, 5};
    std::vector<int> lad_k_grid = {1, 2, 4, 8};
    std::vector<int> lad_window_grid = {2, 4, 8, 16};
    int min_size = 2;
    int workers = 0; // 0 = hardware concurrency
};

std::vector<double> default_lambda_grid();

struct SplitStats {
    std::vector<double> dists;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
};

struct MethodReport {
    std::string method;
    std::vector<std::pair<std::string, double>> chosen;
    SplitStats train;
    SplitStats test;
};

struct EvalReport {
    std::string family;
    std::uint64_t seed = 0;
    int n_train = 0;
    int n_test = 0;
    double snapshot_width = 0.0;
    double delta = 0.0;
    std::vector<std::uint64_t> train_seeds, test_seeds;
    std::vector<std::vector<int>> train_truth, test_truth;
    std::vector<MethodReport> methods;
};

/// Full protocol: generate samples, tune each detector on the training split
/// by mean Hausdorff distance, evaluate on the test split.
EvalReport run_bench(const BenchConfig& config);

/// Deterministic serialization: identical config and seed give identical bytes.
std::string report_to_json(const EvalReport& report);
void write_report_json(const EvalReport& report, const std::string& path);

double median(std::vector<double> values);
double quantile(std::vector<double> values, double p); // linear interpolation

/// Entropy change-point pipeline for one sample in snapshot space: aggregate,
/// evaluate the local-entropy signal at snapshot centers with delta = w/2,
/// segment. K < 0 selects the penalized search with the given beta.
std::vector<int> detect_entropy_snapshots(const LinkStream& stream, double w, double lambda,
                                          int fixed_k, double beta, int min_size = 2);

} // namespace tnet::bench

#endif
