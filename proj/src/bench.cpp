#include "tnet/bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "tnet/baselines.hpp"
#include "tnet/diffusion.hpp"
#include "tnet/entropy.hpp"
#include "tnet/segmentation.hpp"

namespace tnet::bench {

std::vector<double> default_lambda_grid() {
    // 13 logarithmically spaced rates spanning [1e-5, 1].
    std::vector<double> grid;
    for (int i = 0; i < 13; ++i) grid.push_back(std::pow(10.0, -5.0 + 5.0 * i / 12.0));
    return grid;
}

double quantile(std::vector<double> values, double p) {
    if (values.empty())
        throw DataError("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double h = (values.size() - 1) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(h));
    return values[lo] + (h - lo) * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

namespace {

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

/// Everything a detector needs from one sample, in snapshot space.
struct PreparedSample {
    int snap_count = 0;
    std::vector<int> truth;
    std::vector<double> truth_d;
    SnapshotSequence snaps;
    std::unique_ptr<DiffusionEngine> engine; // snapshot-aggregated stream
    std::vector<double> centers;             // signal evaluation times
    std::vector<int> center_index;           // snapshot index per signal point
    std::vector<Eigen::VectorXd> sv_full;    // sorted singular values per snapshot
};

PreparedSample prepare_sample(const synth::BenchmarkSample& sample, double w, double delta) {
    PreparedSample prep;
    prep.snaps = aggregate_snapshots(sample.stream, w);
    prep.snap_count = prep.snaps.size();
    prep.truth = project_changepoints(sample.true_changepoints, w);
    prep.truth_d.assign(prep.truth.begin(), prep.truth.end());

    LinkStream snap_stream = stream_from_snapshots(prep.snaps, sample.stream.t_max());
    prep.engine = std::make_unique<DiffusionEngine>(std::move(snap_stream));
    const double t_max = sample.stream.t_max();
    for (int s = 0; s < prep.snap_count; ++s) {
        const double lo = s * w, hi = std::min((s + 1) * w, t_max);
        const double c = (lo + hi) / 2.0;
        if (c >= delta / 2.0 && c <= t_max - delta / 2.0) {
            prep.centers.push_back(c);
            prep.center_index.push_back(s);
        }
    }

    const int n = prep.snaps.node_count();
    prep.sv_full.reserve(prep.snap_count);
    for (const auto& A : prep.snaps.snapshots) {
        StaticGraph g;
        g.node_count = n;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (A(u, v) != 0.0) g.edges.push_back({u, v});
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(g).matrix,
                                                          Eigen::EigenvaluesOnly);
        prep.sv_full.push_back(es.eigenvalues().reverse());
    }
    return prep;
}

double score_prediction(const std::vector<int>& predicted, const PreparedSample& prep) {
    if (predicted.empty())
        return static_cast<double>(prep.snap_count); // worst-case sentinel
    std::vector<double> pred(predicted.begin(), predicted.end());
    return hausdorff(prep.truth_d, pred);
}

std::vector<int> map_breaks(const std::vector<int>& breaks, const std::vector<int>& index) {
    std::vector<int> out;
    out.reserve(breaks.size());
    for (int b : breaks) out.push_back(index[b]);
    return out;
}

std::vector<int> segment_signal(const std::vector<double>& values, int fixed_k, double beta,
                                int min_size) {
    if (fixed_k > 0) return segment_fixed_k(values, fixed_k, min_size).breakpoints;
    return segment_penalized(values, beta, min_size).breakpoints;
}

double eval_entropy(const PreparedSample& prep, double lambda, double delta, int fixed_k,
                    double beta, int min_size) {
    EntropySignal sig = local_entropy_signal_at(*prep.engine, lambda, delta, prep.centers);
    auto breaks = segment_signal(sig.values, fixed_k, beta, min_size);
    return score_prediction(map_breaks(breaks, prep.center_index), prep);
}

double eval_frobenius(const PreparedSample& prep, int ell, int fixed_k, double beta,
                      int min_size) {
    FrobeniusSignal sig = frobenius_signal(prep.snaps, ell);
    auto breaks = segment_signal(sig.values, fixed_k, beta, min_size);
    for (int& b : breaks) b += ell;
    return score_prediction(breaks, prep);
}

double eval_lad(const PreparedSample& prep, int k, int window) {
    std::vector<Eigen::VectorXd> sigs;
    sigs.reserve(prep.snap_count);
    for (const auto& sv : prep.sv_full) {
        Eigen::VectorXd top = sv.head(k);
        double norm = top.norm();
        if (norm > 0.0) top /= norm;
        sigs.push_back(std::move(top));
    }
    LadScore score = lad_scores(sigs, window);
    // LAD has no stopping rule of its own; it is told the true break count.
    const int k_true = std::max<std::size_t>(1, prep.truth.size());
    return score_prediction(lad_top_k(score, static_cast<int>(k_true)), prep);
}

struct Combo {
    std::vector<std::pair<std::string, double>> params;
};

} // namespace

std::vector<int> detect_entropy_snapshots(const LinkStream& stream, double w, double lambda,
                                          int fixed_k, double beta, int min_size) {
    synth::BenchmarkSample shim{stream, {}, "adhoc", 0};
    PreparedSample prep = prepare_sample(shim, w, w / 2.0);
    EntropySignal sig = local_entropy_signal_at(*prep.engine, lambda, w / 2.0, prep.centers);
    auto breaks = segment_signal(sig.values, fixed_k, beta, min_size);
    return map_breaks(breaks, prep.center_index);
}

EvalReport run_bench(const BenchConfig& config) {
    BenchConfig cfg = config;
    if (cfg.lambda_grid.empty()) cfg.lambda_grid = default_lambda_grid();
    const double w = cfg.snapshot_width;
    const double delta = w / 2.0;
    const bool multi = cfg.family == synth::BenchmarkFamily::MultiBench;

    synth::BenchmarkSet set = synth::make_benchmark(cfg.family, cfg.n_train, cfg.n_test, cfg.seed);

    // Hyperparameter combinations, in declared grid order (ties keep the first).
    std::vector<Combo> entropy_combos, frob_combos, lad_combos;
    for (double lambda : cfg.lambda_grid) {
        if (multi) {
            for (double beta : cfg.penalty_grid)
                entropy_combos.push_back({{{"lambda", lambda}, {"beta", beta}}});
        } else {
            entropy_combos.push_back({{{"lambda", lambda}}});
        }
    }
    for (int ell : cfg.frob_ell_grid) {
        if (multi) {
            for (double beta : cfg.penalty_grid)
                frob_combos.push_back({{{"ell", static_cast<double>(ell)}, {"beta", beta}}});
        } else {
            frob_combos.push_back({{{"ell", static_cast<double>(ell)}}});
        }
    }
    for (int k : cfg.lad_k_grid)
        for (int win : cfg.lad_window_grid)
            lad_combos.push_back(
                {{{"k", static_cast<double>(k)}, {"window", static_cast<double>(win)}}});

    auto eval_combo = [&](const PreparedSample& prep, const std::string& method,
                          const Combo& combo) {
        auto get = [&](const std::string& key, double fallback) {
            for (const auto& [k, v] : combo.params)
                if (k == key) return v;
            return fallback;
        };
        const int fixed_k = multi ? -1 : 1;
        if (method == "entropy")
            return eval_entropy(prep, get("lambda", 1.0), delta, fixed_k, get("beta", 0.0),
                                cfg.min_size);
        if (method == "frobenius")
            return eval_frobenius(prep, static_cast<int>(get("ell", 1.0)), fixed_k,
                                  get("beta", 0.0), cfg.min_size);
        return eval_lad(prep, static_cast<int>(get("k", 1.0)),
                        static_cast<int>(get("window", 2.0)));
    };

    const std::vector<std::string> method_names = {"entropy", "frobenius", "lad"};
    const std::vector<const std::vector<Combo>*> method_combos = {&entropy_combos, &frob_combos,
                                                                  &lad_combos};

    // Training phase: every combo on every training sample. Each worker owns
    // one sample end to end, so peak memory stays at workers * one engine.
    std::vector<std::array<std::vector<double>, 3>> train_dists(set.train.size());
    parallel_for(static_cast<int>(set.train.size()), cfg.workers, [&](int i) {
        PreparedSample prep = prepare_sample(set.train[i], w, delta);
        for (int m = 0; m < 3; ++m) {
            train_dists[i][m].reserve(method_combos[m]->size());
            for (const auto& combo : *method_combos[m])
                train_dists[i][m].push_back(eval_combo(prep, method_names[m], combo));
        }
    });

    // Select the combo minimizing the mean training Hausdorff distance.
    std::array<std::size_t, 3> chosen_idx{};
    for (int m = 0; m < 3; ++m) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < method_combos[m]->size(); ++c) {
            double mean = 0.0;
            for (std::size_t i = 0; i < set.train.size(); ++i) mean += train_dists[i][m][c];
            mean /= std::max<std::size_t>(1, set.train.size());
            if (mean < best) {
                best = mean;
                chosen_idx[m] = c;
            }
        }
    }

    // Test phase: chosen combos only.
    std::vector<std::array<double, 3>> test_dists(set.test.size());
    parallel_for(static_cast<int>(set.test.size()), cfg.workers, [&](int i) {
        PreparedSample prep = prepare_sample(set.test[i], w, delta);
        for (int m = 0; m < 3; ++m)
            test_dists[i][m] = eval_combo(prep, method_names[m], (*method_combos[m])[chosen_idx[m]]);
    });

    EvalReport report;
    report.family = synth::to_string(cfg.family);
    report.seed = cfg.seed;
    report.n_train = cfg.n_train;
    report.n_test = cfg.n_test;
    report.snapshot_width = w;
    report.delta = delta;
    for (const auto& s : set.train) {
        report.train_seeds.push_back(s.seed);
        report.train_truth.push_back(project_changepoints(s.true_changepoints, w));
    }
    for (const auto& s : set.test) {
        report.test_seeds.push_back(s.seed);
        report.test_truth.push_back(project_changepoints(s.true_changepoints, w));
    }
    for (int m = 0; m < 3; ++m) {
        MethodReport mr;
        mr.method = method_names[m];
        mr.chosen = (*method_combos[m])[chosen_idx[m]].params;
        for (std::size_t i = 0; i < set.train.size(); ++i)
            mr.train.dists.push_back(train_dists[i][m][chosen_idx[m]]);
        for (std::size_t i = 0; i < set.test.size(); ++i)
            mr.test.dists.push_back(test_dists[i][m]);
        for (SplitStats* split : {&mr.train, &mr.test}) {
            if (!split->dists.empty()) {
                split->median = median(split->dists);
                split->q1 = quantile(split->dists, 0.25);
                split->q3 = quantile(split->dists, 0.75);
            }
        }
        report.methods.push_back(std::move(mr));
    }
    return report;
}

std::string report_to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["family"] = report.family;
    j["seed"] = report.seed;
    j["n_train"] = report.n_train;
    j["n_test"] = report.n_test;
    j["snapshot_width"] = report.snapshot_width;
    j["delta"] = report.delta;
    j["train_seeds"] = report.train_seeds;
    j["test_seeds"] = report.test_seeds;
    j["train_truth"] = report.train_truth;
    j["test_truth"] = report.test_truth;
    j["methods"] = nlohmann::ordered_json::array();
    for (const auto& m : report.methods) {
        nlohmann::ordered_json jm;
        jm["method"] = m.method;
        jm["chosen"] = nlohmann::ordered_json::object();
        for (const auto& [k, v] : m.chosen) jm["chosen"][k] = v;
        for (const auto& [name, split] : {std::pair{"train", &m.train}, {"test", &m.test}}) {
            nlohmann::ordered_json js;
            js["dists"] = split->dists;
            js["median"] = split->median;
            js["q1"] = split->q1;
            js["q3"] = split->q3;
            jm[name] = std::move(js);
        }
        j["methods"].push_back(std::move(jm));
    }
    return j.dump(2) + "\n";
}

void write_report_json(const EvalReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write report: " + path);
    out << report_to_json(report);
}

} // namespace tnet::bench
