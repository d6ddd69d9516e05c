// tnet: heat-diffusion entropy signals and change-point detection on
// continuous-time temporal networks.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tnet/bench.hpp"
#include "tnet/baselines.hpp"
#include "tnet/diffusion.hpp"
#include "tnet/entropy.hpp"
#include "tnet/linkstream.hpp"
#include "tnet/segmentation.hpp"
#include "tnet/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

/// Invalid flag combinations that CLI11 cannot express declaratively.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SynthOpts {
    std::string family;
    std::string toy;
    int n_train = 10, n_test = 50;
    std::uint64_t seed = 42;
    int nodes = 100;
    int overlap = 0;
    std::string pattern = "merge-merge";
    std::string out_dir = ".";
};

int run_synth(const SynthOpts& opt) {
    fs::create_directories(opt.out_dir);
    ordered_json manifest;
    auto emit = [&](const tnet::synth::BenchmarkSample& sample, const std::string& name,
                    const std::string& split, int index) {
        const std::string file = name + ".csv";
        tnet::save_stream_csv(sample.stream, (fs::path(opt.out_dir) / file).string());
        ordered_json js;
        js["split"] = split;
        js["index"] = index;
        js["seed"] = sample.seed;
        js["label"] = sample.label;
        js["true_changepoints"] = sample.true_changepoints;
        js["path"] = file;
        manifest["samples"].push_back(std::move(js));
    };

    if (!opt.toy.empty()) {
        manifest["family"] = opt.toy;
        if (opt.toy == "temporal-cycle") {
            emit({tnet::synth::temporal_cycle(), {}, "temporal-cycle", 0}, "temporal_cycle",
                 "toy", 0);
        } else if (opt.toy == "toy-path") {
            emit({tnet::synth::toy_path(opt.nodes, opt.overlap), {}, "toy-path", 0},
                 "toy_path_" + std::to_string(opt.nodes) + "_" + std::to_string(opt.overlap),
                 "toy", 0);
        } else if (opt.toy == "merge-split") {
            tnet::synth::MergeSplitPattern p;
            if (opt.pattern == "merge-merge") p = tnet::synth::MergeSplitPattern::MergeMerge;
            else if (opt.pattern == "merge-split") p = tnet::synth::MergeSplitPattern::MergeSplit;
            else if (opt.pattern == "split-merge-variant")
                p = tnet::synth::MergeSplitPattern::SplitMergeVariant;
            else throw tnet::DataError("unknown merge/split pattern: " + opt.pattern);
            emit(tnet::synth::merge_split_stream(opt.nodes, {100.0, 200.0}, p, opt.seed),
                 "merge_split", "toy", 0);
        } else {
            throw tnet::DataError("unknown toy stream: " + opt.toy);
        }
    } else {
        auto family = tnet::synth::family_from_string(opt.family);
        auto set = tnet::synth::make_benchmark(family, opt.n_train, opt.n_test, opt.seed);
        manifest["family"] = tnet::synth::to_string(family);
        manifest["seed"] = opt.seed;
        char name[64];
        for (std::size_t i = 0; i < set.train.size(); ++i) {
            std::snprintf(name, sizeof(name), "%s_train_%03zu", opt.family.c_str(), i);
            emit(set.train[i], name, "train", static_cast<int>(i));
        }
        for (std::size_t i = 0; i < set.test.size(); ++i) {
            std::snprintf(name, sizeof(name), "%s_test_%03zu", opt.family.c_str(), i);
            emit(set.test[i], name, "test", static_cast<int>(i));
        }
    }
    std::ofstream out(fs::path(opt.out_dir) / "manifest.json");
    out << manifest.dump(2) << "\n";
    std::cout << "wrote " << manifest["samples"].size() << " stream(s) to " << opt.out_dir
              << "\n";
    return 0;
}

struct EntropyOpts {
    std::string input;
    std::vector<double> lambdas{1.0};
    double delta = 0.0;
    bool global = false;
    std::string direction = "forward";
    std::string grid = "event";
    double step = 0.0;
    std::string out_dir = ".";
};

int run_entropy(const EntropyOpts& opt) {
    tnet::LinkStream stream = tnet::load_stream_csv(opt.input);
    fs::create_directories(opt.out_dir);
    std::vector<tnet::Direction> dirs;
    if (opt.direction == "forward") dirs = {tnet::Direction::Forward};
    else if (opt.direction == "backward") dirs = {tnet::Direction::Backward};
    else if (opt.direction == "both")
        dirs = {tnet::Direction::Forward, tnet::Direction::Backward};
    else throw tnet::DataError("direction must be forward, backward or both");

    for (double lambda : opt.lambdas) {
        for (auto dir : dirs) {
            tnet::EntropySignal sig;
            if (opt.global) {
                auto times = tnet::temporal_grid(stream).times;
                sig = tnet::global_entropy_curve(stream, lambda, times,
                                                 tnet::Distribution::uniform(stream.node_count()),
                                                 dir);
            } else {
                auto mode = opt.grid == "uniform" ? tnet::SignalGrid::Uniform
                                                  : tnet::SignalGrid::Event;
                sig = tnet::local_entropy_signal(stream, lambda, opt.delta, mode, opt.step, dir);
            }
            char name[96];
            std::snprintf(name, sizeof(name), "%s_lambda%g_%s.csv",
                          opt.global ? "global" : "local", lambda, tnet::to_string(dir));
            tnet::save_signal_csv(sig, (fs::path(opt.out_dir) / name).string());
            std::cout << name << ": " << sig.values.size() << " points\n";
        }
    }
    return 0;
}

struct DetectOpts {
    std::string signal_file;
    std::string stream_file;
    double lambda = 1.0;
    double delta = 0.0;
    double snapshot_width = 0.0;
    int fixed_k = 0;
    double beta = 0.0;
    int min_size = 2;
    std::string out_file;
};

int run_detect(const DetectOpts& opt) {
    if (opt.fixed_k > 0 && opt.beta > 0.0)
        throw UsageError("choose either --fixed-k or --penalty, not both");
    if (opt.fixed_k <= 0 && opt.beta <= 0.0)
        throw UsageError("one of --fixed-k or --penalty is required");

    tnet::EntropySignal sig;
    if (!opt.signal_file.empty()) {
        sig = tnet::load_signal_csv(opt.signal_file);
    } else if (!opt.stream_file.empty()) {
        tnet::LinkStream stream = tnet::load_stream_csv(opt.stream_file);
        if (opt.snapshot_width > 0.0) {
            // Snapshot-space pipeline: signal at snapshot centers, delta = w/2.
            auto breaks = tnet::bench::detect_entropy_snapshots(
                stream, opt.snapshot_width, opt.lambda, opt.fixed_k, opt.beta, opt.min_size);
            ordered_json j;
            j["breakpoints"] = breaks;
            if (opt.fixed_k > 0) j["K"] = opt.fixed_k; else j["beta"] = opt.beta;
            j["signal_meta"] = {{"lambda", opt.lambda},
                                {"delta", opt.snapshot_width / 2.0},
                                {"direction", "forward"},
                                {"space", "snapshot-index"},
                                {"w", opt.snapshot_width}};
            std::ofstream out(opt.out_file);
            out << j.dump(2) << "\n";
            std::cout << j["breakpoints"].dump() << "\n";
            return 0;
        }
        sig = tnet::local_entropy_signal(stream, opt.lambda, opt.delta);
    } else {
        throw UsageError("--signal or --input is required");
    }

    tnet::Segmentation seg = opt.fixed_k > 0
                                 ? tnet::segment_fixed_k(sig.values, opt.fixed_k, opt.min_size)
                                 : tnet::segment_penalized(sig.values, opt.beta, opt.min_size);
    ordered_json j;
    j["breakpoints"] = seg.breakpoints;
    j["cost"] = seg.total_cost;
    if (seg.fixed_k) j["K"] = *seg.fixed_k;
    if (seg.penalty_beta) j["beta"] = *seg.penalty_beta;
    ordered_json meta;
    meta["lambda"] = sig.rate_lambda;
    meta["delta"] = sig.window_delta;
    meta["direction"] = tnet::to_string(sig.direction);
    meta["length"] = sig.values.size();
    if (!sig.times.empty()) {
        ordered_json times = ordered_json::array();
        for (int b : seg.breakpoints) times.push_back(sig.times[b]);
        j["breakpoint_times"] = std::move(times);
    }
    j["signal_meta"] = std::move(meta);
    std::ofstream out(opt.out_file);
    if (!out) throw tnet::DataError("cannot write " + opt.out_file);
    out << j.dump(2) << "\n";
    std::cout << j["breakpoints"].dump() << "\n";
    return 0;
}

struct BenchOpts {
    std::string family = "activity";
    int n_train = 10, n_test = 50;
    std::uint64_t seed = 42;
    double w = 4.0;
    int workers = 0;
    std::vector<double> lambda_grid;
    std::vector<double> penalty_grid;
    std::string out_file = "report.json";
};

int run_bench_cmd(const BenchOpts& opt) {
    tnet::bench::BenchConfig cfg;
    cfg.family = tnet::synth::family_from_string(opt.family);
    cfg.n_train = opt.n_train;
    cfg.n_test = opt.n_test;
    cfg.seed = opt.seed;
    cfg.snapshot_width = opt.w;
    cfg.workers = opt.workers;
    if (!opt.lambda_grid.empty()) cfg.lambda_grid = opt.lambda_grid;
    if (!opt.penalty_grid.empty()) cfg.penalty_grid = opt.penalty_grid;
    tnet::bench::EvalReport report = tnet::bench::run_bench(cfg);
    tnet::bench::write_report_json(report, opt.out_file);
    for (const auto& m : report.methods) {
        std::cout << report.family << " " << m.method << ": train median " << m.train.median
                  << " (" << m.train.q1 << ", " << m.train.q3 << "), test median "
                  << m.test.median << " (" << m.test.q1 << ", " << m.test.q3 << ")\n";
    }
    std::cout << "report written to " << opt.out_file << "\n";
    return 0;
}

struct AggregateOpts {
    std::string input;
    double w = 4.0;
    std::string out_file;
};

int run_aggregate(const AggregateOpts& opt) {
    tnet::LinkStream stream = tnet::load_stream_csv(opt.input);
    tnet::SnapshotSequence snaps = tnet::aggregate_snapshots(stream, opt.w);
    tnet::save_snapshots_csv(snaps, opt.out_file);
    std::cout << snaps.size() << " snapshots written to " << opt.out_file << "\n";
    return 0;
}

struct SpectralOpts {
    std::string input;
    double lambda = 1.0;
    double t1 = 0.0;
    double t2 = -1.0;
    std::string out_file;
};

int run_spectral(const SpectralOpts& opt) {
    tnet::LinkStream stream = tnet::load_stream_csv(opt.input);
    const double t2 = opt.t2 < 0.0 ? stream.t_max() : opt.t2;
    tnet::TransitionKernel k = tnet::kernel(stream, opt.lambda, opt.t1, t2);
    tnet::SpectrumReport report = tnet::spectral_check(k.matrix);
    ordered_json j;
    j["lambda"] = opt.lambda;
    j["t1"] = opt.t1;
    j["t2"] = t2;
    j["is_real_nonnegative"] = report.is_real_nonnegative;
    ordered_json evs = ordered_json::array();
    for (const auto& ev : report.eigenvalues) evs.push_back({ev.real(), ev.imag()});
    j["eigenvalues"] = std::move(evs);
    if (report.vn_entropy) j["vn_entropy"] = *report.vn_entropy;
    if (!opt.out_file.empty()) {
        std::ofstream out(opt.out_file);
        out << j.dump(2) << "\n";
    }
    std::cout << (report.is_real_nonnegative
                      ? "spectrum is real and nonnegative"
                      : "spectrum has complex or negative eigenvalues")
              << "\n";
    return 0;
}

struct StoreOpts {
    std::string input;
    double lambda = 1.0;
    std::string out_file;
    std::string info_file;
    bool verify = false;
};

int run_store(const StoreOpts& opt) {
    if (!opt.info_file.empty()) {
        tnet::KernelStore store = tnet::load_store(opt.info_file);
        std::cout << "kernel store: lambda=" << store.rate_lambda
                  << " intervals=" << store.matrices.size()
                  << " N=" << (store.matrices.empty() ? 0 : store.matrices.front().rows())
                  << " t_max=" << store.grid.back() << "\n";
        return 0;
    }
    tnet::LinkStream stream = tnet::load_stream_csv(opt.input);
    tnet::KernelStore store = tnet::inter_transition_matrices(stream, opt.lambda);
    tnet::save_store(store, opt.out_file);
    if (opt.verify) {
        tnet::KernelStore back = tnet::load_store(opt.out_file);
        bool same = back.grid == store.grid && back.rate_lambda == store.rate_lambda &&
                    back.matrices.size() == store.matrices.size();
        for (std::size_t i = 0; same && i < store.matrices.size(); ++i)
            same = back.matrices[i] == store.matrices[i];
        if (!same) throw tnet::NumericalError("kernel store round-trip mismatch");
        std::cout << "round-trip verified bit-exact\n";
    }
    std::cout << store.matrices.size() << " inter-transition matrices written to "
              << opt.out_file << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"heat-diffusion entropy and change-point detection on link streams"};
    app.require_subcommand(1);
    app.set_config("--config");

    SynthOpts synth_opts;
    auto* synth = app.add_subcommand("synth", "generate synthetic streams and benchmarks");
    synth->add_option("--family", synth_opts.family, "activity | community | multi");
    synth->add_option("--toy", synth_opts.toy, "temporal-cycle | toy-path | merge-split");
    synth->add_option("--n-train", synth_opts.n_train);
    synth->add_option("--n-test", synth_opts.n_test);
    synth->add_option("--seed", synth_opts.seed);
    synth->add_option("--nodes", synth_opts.nodes);
    synth->add_option("--overlap", synth_opts.overlap, "toy-path overlap depth k");
    synth->add_option("--pattern", synth_opts.pattern,
                      "merge-merge | merge-split | split-merge-variant");
    synth->add_option("-o,--out", synth_opts.out_dir, "output directory");

    EntropyOpts entropy_opts;
    auto* entropy = app.add_subcommand("entropy", "compute entropy signal CSVs");
    entropy->add_option("-i,--input", entropy_opts.input, "link-stream CSV")->required();
    entropy->add_option("--lambda", entropy_opts.lambdas, "diffusion rates")->delimiter(',');
    entropy->add_option("--delta", entropy_opts.delta, "local window length (seconds)");
    entropy->add_flag("--global", entropy_opts.global, "global curve instead of local signal");
    entropy->add_option("--direction", entropy_opts.direction, "forward | backward | both");
    entropy->add_option("--grid", entropy_opts.grid, "event | uniform");
    entropy->add_option("--step", entropy_opts.step, "uniform grid step");
    entropy->add_option("-o,--out", entropy_opts.out_dir, "output directory");

    DetectOpts detect_opts;
    auto* detect = app.add_subcommand("detect", "segment a signal into change points");
    detect->add_option("--signal", detect_opts.signal_file, "entropy signal CSV");
    detect->add_option("-i,--input", detect_opts.stream_file, "link-stream CSV");
    detect->add_option("--lambda", detect_opts.lambda);
    detect->add_option("--delta", detect_opts.delta);
    detect->add_option("--w", detect_opts.snapshot_width,
                       "detect in snapshot index space with this width");
    detect->add_option("--fixed-k", detect_opts.fixed_k, "number of breakpoints");
    detect->add_option("--penalty", detect_opts.beta, "penalized search with this beta");
    detect->add_option("--min-size", detect_opts.min_size);
    detect->add_option("-o,--out", detect_opts.out_file, "output JSON")->required();

    BenchOpts bench_opts;
    auto* bench = app.add_subcommand("bench", "train/test benchmark evaluation");
    bench->add_option("--family", bench_opts.family)->required();
    bench->add_option("--n-train", bench_opts.n_train);
    bench->add_option("--n-test", bench_opts.n_test);
    bench->add_option("--seed", bench_opts.seed);
    bench->add_option("--w", bench_opts.w, "snapshot width");
    bench->add_option("--workers", bench_opts.workers, "0 = hardware concurrency");
    bench->add_option("--lambda-grid", bench_opts.lambda_grid)->delimiter(',');
    bench->add_option("--penalty-grid", bench_opts.penalty_grid)->delimiter(',');
    bench->add_option("-o,--out", bench_opts.out_file, "report JSON path");

    AggregateOpts agg_opts;
    auto* agg = app.add_subcommand("aggregate", "aggregate a stream into binary snapshots");
    agg->add_option("-i,--input", agg_opts.input)->required();
    agg->add_option("--w", agg_opts.w)->required();
    agg->add_option("-o,--out", agg_opts.out_file)->required();

    SpectralOpts spectral_opts;
    auto* spectral = app.add_subcommand("spectral-check", "complex-spectrum check of a kernel");
    spectral->add_option("-i,--input", spectral_opts.input)->required();
    spectral->add_option("--lambda", spectral_opts.lambda);
    spectral->add_option("--t1", spectral_opts.t1);
    spectral->add_option("--t2", spectral_opts.t2);
    spectral->add_option("-o,--out", spectral_opts.out_file, "optional JSON output");

    StoreOpts store_opts;
    auto* store = app.add_subcommand("store", "persist inter-transition matrices");
    store->add_option("-i,--input", store_opts.input, "link-stream CSV");
    store->add_option("--lambda", store_opts.lambda);
    store->add_option("-o,--out", store_opts.out_file, "store file to write");
    store->add_option("--info", store_opts.info_file, "print header of an existing store");
    store->add_flag("--verify", store_opts.verify, "reload and compare bit-exactly");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 1;
    }

    try {
        if (synth->parsed()) return run_synth(synth_opts);
        if (entropy->parsed()) return run_entropy(entropy_opts);
        if (detect->parsed()) return run_detect(detect_opts);
        if (bench->parsed()) return run_bench_cmd(bench_opts);
        if (agg->parsed()) return run_aggregate(agg_opts);
        if (spectral->parsed()) return run_spectral(spectral_opts);
        if (store->parsed()) return run_store(store_opts);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const tnet::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const tnet::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
