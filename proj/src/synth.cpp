#include "tnet/synth.hpp"

#include <algorithm>
#include <cmath>

#include "tnet/random.hpp"

namespace tnet::synth {

namespace {

// Shared scale for the benchmark families (time domain [0, 200), 200 nodes,
// snapshot width 4). Activity regimes are expressed as network-wide link
// arrival rates and divided evenly over the eligible pairs.
constexpr int kBenchNodes = 200;
constexpr double kBenchTmax = 200.0;
constexpr double kBenchMargin = 20.0; // keeps every regime >= 5 snapshots at w=4
constexpr double kActivityRateLow = 40.0;   // links/s network-wide
constexpr double kActivityRateHigh = 100.0; // links/s network-wide
constexpr double kCommunityRate = 100.0;    // links/s network-wide, both regimes

std::vector<int> uniform_blocks(int n, int n_blocks) {
    std::vector<int> blocks(n);
    const int size = n / n_blocks;
    for (int i = 0; i < n; ++i) blocks[i] = std::min(i / size, n_blocks - 1);
    return blocks;
}

long long intra_pair_count(const std::vector<int>& blocks) {
    std::vector<long long> sizes;
    for (int b : blocks) {
        if (b >= static_cast<int>(sizes.size())) sizes.resize(b + 1, 0);
        ++sizes[b];
    }
    long long pairs = 0;
    for (long long s : sizes) pairs += s * (s - 1) / 2;
    return pairs;
}

} // namespace

std::uint64_t sample_seed(std::uint64_t master, int family_id, int split_id, int index) {
    using rng::splitmix64;
    std::uint64_t s = splitmix64(master ^ (0x1000193ull * (family_id + 1)));
    s = splitmix64(s ^ (0x100000001B3ull * (split_id + 1)));
    return splitmix64(s ^ static_cast<std::uint64_t>(index));
}

BenchmarkSample generate_stream(const std::vector<RegimeSpec>& regimes, std::uint64_t seed,
                                std::string label) {
    if (regimes.empty())
        throw DataError("stream generation needs at least one regime");
    const int n = static_cast<int>(regimes.front().block_assignment.size());
    if (n < 2)
        throw DataError("stream generation needs at least two nodes");
    double t_max = 0.0;
    for (const auto& r : regimes) {
        if (!(r.duration > 0.0))
            throw DataError("regime duration must be positive");
        if (static_cast<int>(r.block_assignment.size()) != n)
            throw DataError("all regimes must cover the same node set");
        if (r.intra_rate < 0.0 || r.inter_rate < 0.0)
            throw DataError("regime rates must be nonnegative");
        if (!(r.mean_link_duration > 0.0))
            throw DataError("mean link duration must be positive");
        t_max += r.duration;
    }

    std::mt19937_64 gen(seed);
    std::vector<Event> events;
    double offset = 0.0;
    std::vector<double> changepoints;
    for (const auto& regime : regimes) {
        const double end = offset + regime.duration;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                const bool intra = regime.block_assignment[u] == regime.block_assignment[v];
                const double rate = intra ? regime.intra_rate : regime.inter_rate;
                if (rate <= 0.0) continue;
                double t = offset;
                for (;;) {
                    t += rng::exponential(gen, rate);
                    if (t >= end) break;
                    double omega = t + rng::exponential(gen, 1.0 / regime.mean_link_duration);
                    events.push_back({t, std::min(omega, t_max), u, v});
                }
            }
        }
        offset = end;
        if (offset < t_max) changepoints.push_back(offset);
    }
    return {LinkStream(n, t_max, std::move(events)), std::move(changepoints), std::move(label),
            seed};
}

BenchmarkSample merge_split_stream(int n_nodes, std::array<double, 2> event_times,
                                   MergeSplitPattern pattern, std::uint64_t seed) {
    if (n_nodes < 4)
        throw DataError("merge/split stream needs at least four nodes");
    if (!(0.0 < event_times[0] && event_times[0] < event_times[1]))
        throw DataError("merge/split event times must be increasing and positive");

    std::array<int, 3> block_counts{};
    const char* label = nullptr;
    switch (pattern) {
        case MergeSplitPattern::MergeMerge: block_counts = {4, 2, 1}; label = "merge-merge"; break;
        case MergeSplitPattern::MergeSplit: block_counts = {4, 1, 2}; label = "merge-split"; break;
        case MergeSplitPattern::SplitMergeVariant:
            block_counts = {2, 4, 1};
            label = "split-merge-variant";
            break;
        default: throw DataError("invalid merge/split pattern");
    }

    const double t_max = event_times[1] + event_times[0];
    const std::array<double, 3> durations{event_times[0], event_times[1] - event_times[0],
                                          t_max - event_times[1]};
    std::vector<RegimeSpec> regimes;
    for (int r = 0; r < 3; ++r) {
        RegimeSpec spec;
        spec.duration = durations[r];
        spec.block_assignment = uniform_blocks(n_nodes, block_counts[r]);
        spec.intra_rate = 0.4 / n_nodes; // constant per pair: activity grows with block size
        spec.inter_rate = 0.0;
        spec.mean_link_duration = 1.0;
        regimes.push_back(std::move(spec));
    }
    auto sample = generate_stream(regimes, seed, label);
    sample.true_changepoints = {event_times[0], event_times[1]};
    return sample;
}

LinkStream toy_path(int n, int k) {
    if (n < 2)
        throw DataError("toy path needs at least two nodes");
    if (k < 0 || k > n - 2)
        throw DataError("overlap depth must be in [0, N-2]");
    std::vector<Event> events;
    events.reserve(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        if (i <= k)
            events.push_back({0.0, static_cast<double>(k + 1), i, i + 1});
        else
            events.push_back({static_cast<double>(i), static_cast<double>(i + 1), i, i + 1});
    }
    return LinkStream(n, static_cast<double>(n - 1), std::move(events));
}

LinkStream temporal_cycle() {
    return LinkStream(3, 3.0, {{0.0, 1.0, 0, 1}, {1.0, 2.0, 1, 2}, {2.0, 3.0, 0, 2}});
}

BenchmarkFamily family_from_string(const std::string& name) {
    if (name == "ActivityBench" || name == "activity") return BenchmarkFamily::ActivityBench;
    if (name == "CommunityBench" || name == "community") return BenchmarkFamily::CommunityBench;
    if (name == "MultiBench" || name == "multi") return BenchmarkFamily::MultiBench;
    throw DataError("unknown benchmark family: " + name);
}

const char* to_string(BenchmarkFamily family) {
    switch (family) {
        case BenchmarkFamily::ActivityBench: return "ActivityBench";
        case BenchmarkFamily::CommunityBench: return "CommunityBench";
        case BenchmarkFamily::MultiBench: return "MultiBench";
    }
    return "?";
}

namespace {

BenchmarkSample make_activity_sample(std::uint64_t seed) {
    std::mt19937_64 gen(rng::splitmix64(seed));
    const double tau = rng::uniform(gen, kBenchMargin, kBenchTmax - kBenchMargin);
    const std::vector<int> blocks(kBenchNodes, 0);
    const double pairs = kBenchNodes * (kBenchNodes - 1) / 2.0;
    std::vector<RegimeSpec> regimes(2);
    regimes[0] = {tau, blocks, kActivityRateLow / pairs, 0.0, 1.0};
    regimes[1] = {kBenchTmax - tau, blocks, kActivityRateHigh / pairs, 0.0, 1.0};
    return generate_stream(regimes, seed, "ActivityBench");
}

BenchmarkSample make_community_sample(std::uint64_t seed) {
    std::mt19937_64 gen(rng::splitmix64(seed));
    const double tau = rng::uniform(gen, kBenchMargin, kBenchTmax - kBenchMargin);
    const auto blocks4 = uniform_blocks(kBenchNodes, 4);
    const auto blocks2 = uniform_blocks(kBenchNodes, 2);
    std::vector<RegimeSpec> regimes(2);
    // Per-pair rates chosen so the expected network-wide rate is identical in
    // both regimes.
    regimes[0] = {tau, blocks4, kCommunityRate / intra_pair_count(blocks4), 0.0, 1.0};
    regimes[1] = {kBenchTmax - tau, blocks2, kCommunityRate / intra_pair_count(blocks2), 0.0, 1.0};
    return generate_stream(regimes, seed, "CommunityBench");
}

BenchmarkSample make_multi_sample(std::uint64_t seed) {
    std::mt19937_64 gen(rng::splitmix64(seed));
    const int n_breaks = 1 + static_cast<int>(rng::below(gen, 4));
    std::vector<double> taus;
    for (;;) {
        taus.clear();
        for (int i = 0; i < n_breaks; ++i)
            taus.push_back(rng::uniform(gen, kBenchMargin, kBenchTmax - kBenchMargin));
        std::sort(taus.begin(), taus.end());
        bool ok = true;
        for (int i = 1; i < n_breaks; ++i)
            if (taus[i] - taus[i - 1] < kBenchMargin) ok = false;
        if (ok) break;
    }
    const std::vector<int> blocks(kBenchNodes, 0);
    const double pairs = kBenchNodes * (kBenchNodes - 1) / 2.0;
    std::vector<RegimeSpec> regimes;
    double prev = 0.0;
    for (int r = 0; r <= n_breaks; ++r) {
        const double end = r < n_breaks ? taus[r] : kBenchTmax;
        const double rate = (r % 2 == 0) ? kActivityRateLow : kActivityRateHigh;
        regimes.push_back({end - prev, blocks, rate / pairs, 0.0, 1.0});
        prev = end;
    }
    return generate_stream(regimes, seed, "MultiBench");
}

} // namespace

BenchmarkSet make_benchmark(BenchmarkFamily family, int n_train, int n_test, std::uint64_t seed) {
    if (n_train < 0 || n_test < 0)
        throw DataError("sample counts must be nonnegative");
    BenchmarkSet set;
    set.family = family;
    const int family_id = static_cast<int>(family);
    auto make_one = [&](std::uint64_t s) {
        switch (family) {
            case BenchmarkFamily::ActivityBench: return make_activity_sample(s);
            case BenchmarkFamily::CommunityBench: return make_community_sample(s);
            case BenchmarkFamily::MultiBench: return make_multi_sample(s);
        }
        throw DataError("invalid benchmark family");
    };
    for (int i = 0; i < n_train; ++i)
        set.train.push_back(make_one(sample_seed(seed, family_id, 0, i)));
    for (int i = 0; i < n_test; ++i)
        set.test.push_back(make_one(sample_seed(seed, family_id, 1, i)));
    return set;
}

} // namespace tnet::synth
