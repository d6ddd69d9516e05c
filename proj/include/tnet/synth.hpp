#ifndef TNET_SYNTH_HPP
#define TNET_SYNTH_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tnet/linkstream.hpp"

namespace tnet::synth {

/// One stationary regime of a block-structured stream: links per node pair
/// arrive as a Poisson process (intra- vs inter-block rate) with
/// exponentially distributed durations.
struct RegimeSpec {
    double duration = 0.0;
    std::vector<int> block_assignment;
    double intra_rate = 0.0;
    double inter_rate = 0.0;
    double mean_link_duration = 1.0;
};

struct BenchmarkSample {
    LinkStream stream;
    std::vector<double> true_changepoints;
    std::string label;
    std::uint64_t seed = 0;
};

/// Piecewise-constant-rate sampler: abrupt regime switches at the cumulative
/// regime boundaries; link durations are truncated only at t_max, so links
/// may persist across a switch.
BenchmarkSample generate_stream(const std::vector<RegimeSpec>& regimes, std::uint64_t seed,
                                std::string label = "custom");

enum class MergeSplitPattern { MergeMerge, MergeSplit, SplitMergeVariant };

/// Three-regime stream whose block count follows the pattern
/// (merge-merge: 4,2,1; merge-split: 4,1,2; split-merge-variant: 2,4,1).
/// The per-pair intra rate is constant, so nodes in larger blocks are more
/// active and reach more neighbors.
BenchmarkSample merge_split_stream(int n_nodes = 100,
                                   std::array<double, 2> event_times = {100.0, 200.0},
                                   MergeSplitPattern pattern = MergeSplitPattern::MergeMerge,
                                   std::uint64_t seed = 0);

/// Progressively synchronized temporal path on N nodes: edge {i, i+1} has
/// support [0, k+1) for i <= k and [i, i+1) otherwise; the footprint is the
/// path graph for every overlap depth k in [0, N-2].
LinkStream toy_path(int n, int k);

/// Three-node cycle whose links appear one at a time: {0,1} on [0,1),
/// {1,2} on [1,2), {0,2} on [2,3).
LinkStream temporal_cycle();

enum class BenchmarkFamily { ActivityBench, CommunityBench, MultiBench };

BenchmarkFamily family_from_string(const std::string& name);
const char* to_string(BenchmarkFamily family);

struct BenchmarkSet {
    BenchmarkFamily family;
    std::vector<BenchmarkSample> train;
    std::vector<BenchmarkSample> test;
};

/// Seeded benchmark generator (200 nodes, time domain [0, 200)):
///   ActivityBench  - structureless, one rate change at a random interior time;
///   CommunityBench - constant expected activity, 4 blocks merge into 2 once;
///   MultiBench     - activity alternates between the two ActivityBench
///                    regimes across 1..4 breakpoints (>= 20 s apart).
BenchmarkSet make_benchmark(BenchmarkFamily family, int n_train = 10, int n_test = 50,
                            std::uint64_t seed = 42);

/// Deterministic per-sample seed derivation.
std::uint64_t sample_seed(std::uint64_t master, int family_id, int split_id, int index);

} // namespace tnet::synth

#endif
