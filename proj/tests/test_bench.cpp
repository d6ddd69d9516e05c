#include <doctest.h>

#include "tnet/bench.hpp"
#include "tnet/synth.hpp"

using namespace tnet;

TEST_CASE("default lambda grid spans [1e-5, 1] with 13 log points") {
    auto grid = bench::default_lambda_grid();
    REQUIRE(grid.size() == 13);
    CHECK(grid.front() == doctest::Approx(1e-5).epsilon(1e-12));
    CHECK(grid.back() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(grid[i] > grid[i - 1]);
        CHECK(grid[i] / grid[i - 1] ==
              doctest::Approx(grid[1] / grid[0]).epsilon(1e-9));
    }
}

TEST_CASE("quantiles use linear interpolation") {
    std::vector<double> v{4.0, 1.0, 3.0, 2.0};
    CHECK(bench::median(v) == doctest::Approx(2.5));
    CHECK(bench::quantile(v, 0.25) == doctest::Approx(1.75));
    CHECK(bench::quantile(v, 0.75) == doctest::Approx(3.25));
    CHECK(bench::quantile({7.0}, 0.5) == 7.0);
    CHECK_THROWS_AS(bench::quantile({}, 0.5), DataError);
}

TEST_CASE("snapshot-space entropy detection localizes an activity change") {
    // One seeded sample per family flavor keeps this test fast; the full
    // protocol runs in the acceptance suite.
    auto set = synth::make_benchmark(synth::BenchmarkFamily::ActivityBench, 1, 0, 2024);
    const auto& sample = set.train[0];
    auto truth = project_changepoints(sample.true_changepoints, 4.0);
    auto breaks = bench::detect_entropy_snapshots(sample.stream, 4.0, 1.0, 1, 0.0);
    REQUIRE(breaks.size() == 1);
    CHECK(std::abs(breaks[0] - truth[0]) <= 2);
}

TEST_CASE("bench report is deterministic and structured") {
    bench::BenchConfig cfg;
    cfg.family = synth::BenchmarkFamily::ActivityBench;
    cfg.n_train = 2;
    cfg.n_test = 2;
    cfg.seed = 7;
    cfg.lambda_grid = {0.01, 1.0};
    cfg.frob_ell_grid = {1, 2};
    cfg.lad_k_grid = {2};
    cfg.lad_window_grid = {2};
    cfg.workers = 2;

    bench::EvalReport a = bench::run_bench(cfg);
    bench::EvalReport b = bench::run_bench(cfg);
    CHECK(bench::report_to_json(a) == bench::report_to_json(b));

    REQUIRE(a.methods.size() == 3);
    CHECK(a.methods[0].method == "entropy");
    CHECK(a.methods[1].method == "frobenius");
    CHECK(a.methods[2].method == "lad");
    for (const auto& m : a.methods) {
        CHECK(m.train.dists.size() == 2);
        CHECK(m.test.dists.size() == 2);
        CHECK_FALSE(m.chosen.empty());
    }
    // Tuning only picks values from the declared grids.
    double lambda = a.methods[0].chosen[0].second;
    CHECK((lambda == 0.01 || lambda == 1.0));
}
