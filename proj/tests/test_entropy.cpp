#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include <Eigen/Dense>

#include "tnet/entropy.hpp"
#include "tnet/random.hpp"
#include "tnet/synth.hpp"

using namespace tnet;

namespace {

LinkStream random_stream(std::uint64_t seed, int max_nodes = 10, int max_events = 25,
                         double t_max = 6.0) {
    std::mt19937_64 gen(seed);
    int n = 2 + static_cast<int>(rng::below(gen, max_nodes - 1));
    int m = static_cast<int>(rng::below(gen, max_events + 1));
    std::vector<Event> events;
    for (int i = 0; i < m; ++i) {
        double a = rng::uniform(gen, 0.0, t_max - 0.1);
        double b = std::min(a + rng::uniform(gen, 0.05, 2.0), t_max);
        int u = static_cast<int>(rng::below(gen, n));
        int v = static_cast<int>(rng::below(gen, n));
        if (u == v) continue;
        events.push_back({a, b, u, v});
    }
    return LinkStream(n, t_max, std::move(events));
}

Eigen::VectorXd make_row(std::initializer_list<double> vals) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (double v : vals) r[i++] = v;
    return r;
}

} // namespace

TEST_CASE("row entropy") {
    CHECK(row_entropy(make_row({1.0, 0.0, 0.0})) == 0.0);
    CHECK(row_entropy(make_row({0.25, 0.25, 0.25, 0.25})) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(row_entropy(make_row({0.5, 0.5, 0.0})) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(row_entropy(make_row({1.5, -0.5})), NumericalError);
    CHECK_THROWS_AS(row_entropy(make_row({0.6, 0.6})), NumericalError);
}

TEST_CASE("kl to uniform") {
    CHECK(kl_to_uniform(make_row({0.25, 0.25, 0.25, 0.25})) == doctest::Approx(0.0));
    CHECK(kl_to_uniform(make_row({1.0, 0.0, 0.0})) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("global entropy basics") {
    LinkStream cyc = synth::temporal_cycle();
    Distribution p0 = Distribution::uniform(3);
    CHECK(global_entropy(cyc, 1.0, 0.0, p0) == 0.0);

    // Rate monotonicity fails on the temporal cycle.
    double h1 = global_entropy(cyc, 1.0, 3.0, p0);
    double h10 = global_entropy(cyc, 10.0, 3.0, p0);
    CHECK(h1 > h10);

    // Static connected pair saturates at log 2.
    LinkStream pair = new_link_stream(2, 50.0, {{0.0, 50.0, 0, 1}});
    CHECK(global_entropy(pair, 1.0, 50.0, Distribution::uniform(2)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("forward curves start at zero and never decrease") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        LinkStream s = random_stream(seed);
        Distribution p0 = Distribution::uniform(s.node_count());
        auto times = temporal_grid(s).times;
        EntropySignal curve = global_entropy_curve(s, 0.8, times, p0);
        REQUIRE(!curve.values.empty());
        CHECK(curve.values.front() == 0.0);
        for (std::size_t i = 1; i < curve.values.size(); ++i)
            CHECK(curve.values[i] >= curve.values[i - 1] - 1e-9);
        for (double v : curve.values) {
            CHECK(v >= 0.0);
            CHECK(v <= std::log(static_cast<double>(s.node_count())) + 1e-9);
        }
    }
}

TEST_CASE("backward curve re-indexed to original time is non-increasing") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        LinkStream s = random_stream(seed);
        Distribution p0 = Distribution::uniform(s.node_count());
        auto times = temporal_grid(s).times;
        EntropySignal curve = global_entropy_curve(s, 0.8, times, p0, Direction::Backward);
        CHECK(curve.values.back() == 0.0);
        for (std::size_t i = 1; i < curve.values.size(); ++i)
            CHECK(curve.values[i] <= curve.values[i - 1] + 1e-9);

        // Pointwise agreement with the single-time evaluation.
        double mid = times[times.size() / 2];
        double h = global_entropy(s, 0.8, mid, p0, Direction::Backward);
        CHECK(h == doctest::Approx(curve.values[times.size() / 2]).epsilon(1e-12));
    }
}

TEST_CASE("kl to uniform is non-increasing along diffusion") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        LinkStream s = random_stream(seed);
        DiffusionEngine engine{s};
        auto grid = engine.grid();
        Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(s.node_count(), s.node_count());
        std::vector<double> prev(s.node_count(), std::numeric_limits<double>::infinity());
        for (std::size_t g = 1; g < grid.size(); ++g) {
            acc = acc * engine.kernel(1.0, grid[g - 1], grid[g]).matrix;
            for (int i = 0; i < s.node_count(); ++i) {
                double kl = kl_to_uniform(acc.row(i));
                CHECK(kl <= prev[i] + 1e-9);
                prev[i] = kl;
            }
        }
    }
}

TEST_CASE("local entropy windows") {
    // No active links inside the window: identity kernel, zero entropy.
    LinkStream gap = new_link_stream(4, 10.0, {{0.0, 1.0, 0, 1}, {9.0, 10.0, 2, 3}});
    CHECK(local_entropy(gap, 1.0, 5.0, 2.0) == 0.0);

    // Complete graph with a long window saturates at log N.
    std::vector<Event> events;
    for (int u = 0; u < 5; ++u)
        for (int v = u + 1; v < 5; ++v) events.push_back({0.0, 40.0, u, v});
    LinkStream complete = new_link_stream(5, 40.0, std::move(events));
    CHECK(local_entropy(complete, 2.0, 20.0, 30.0) ==
          doctest::Approx(std::log(5.0)).epsilon(1e-6));

    CHECK_THROWS_AS(local_entropy(gap, 1.0, 0.5, 2.0), DataError);
    CHECK_THROWS_AS(local_entropy(gap, 1.0, 9.8, 2.0), DataError);
}

TEST_CASE("local entropy is non-decreasing in the window length") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        LinkStream s = random_stream(seed);
        DiffusionEngine engine{s};
        std::mt19937_64 gen(seed ^ 0x77);
        for (int rep = 0; rep < 5; ++rep) {
            double lambda = std::pow(10.0, rng::uniform(gen, -2.0, 0.7));
            double t = rng::uniform(gen, s.t_max() * 0.3, s.t_max() * 0.7);
            double max_delta = 2.0 * std::min(t, s.t_max() - t);
            double prev = -1.0;
            for (double frac : {0.2, 0.5, 0.8, 1.0}) {
                double h = local_entropy(engine, lambda, t, frac * max_delta);
                CHECK(h >= prev - 1e-9);
                prev = h;
            }
        }
    }
}

TEST_CASE("upper bound by footprint components") {
    LinkStream cyc = synth::temporal_cycle();
    CHECK(upper_bound(cyc, 0.0, 3.0) == doctest::Approx(std::log(3.0)).epsilon(1e-14));

    LinkStream empty = new_link_stream(7, 2.0, {});
    CHECK(upper_bound(empty, 0.0, 2.0) == 0.0);

    // Two components of 3 and 2 nodes out of 6.
    LinkStream two = new_link_stream(6, 2.0,
                                     {{0.0, 1.0, 0, 1}, {0.5, 1.5, 1, 2}, {1.0, 2.0, 3, 4}});
    double expected = (3.0 / 6.0) * std::log(3.0) + (2.0 / 6.0) * std::log(2.0);
    CHECK(upper_bound(two, 0.0, 2.0) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("entropy respects the footprint upper bound") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        LinkStream s = random_stream(seed);
        Distribution p0 = Distribution::uniform(s.node_count());
        double t = s.t_max() * 0.8;
        CHECK(global_entropy(s, 2.0, t, p0) <= upper_bound(s, 0.0, t) + 1e-9);

        DiffusionEngine engine{s};
        double mid = s.t_max() / 2, delta = s.t_max() / 3;
        CHECK(local_entropy(engine, 2.0, mid, delta) <=
              upper_bound(s, mid - delta / 2, mid + delta / 2) + 1e-9);
    }
}

TEST_CASE("toy path entropies increase with overlap depth") {
    Distribution p0 = Distribution::uniform(10);
    double prev = -1.0;
    double last = 0.0;
    for (int k = 0; k <= 8; ++k) {
        LinkStream path = synth::toy_path(10, k);
        last = global_entropy(path, 50.0, path.t_max(), p0);
        CHECK(last > prev);
        prev = last;
    }
    CHECK(last == doctest::Approx(std::log(10.0)).epsilon(1e-3));
}

TEST_CASE("von Neumann entropy of static kernels") {
    StaticGraph empty;
    empty.node_count = 4;
    CHECK(von_neumann_entropy(laplacian(empty), 1.0) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-12));

    StaticGraph pair;
    pair.node_count = 2;
    pair.edges = {{0, 1}};
    const double z = 1.0 + std::exp(-2.0);
    const double p1 = 1.0 / z, p2 = std::exp(-2.0) / z;
    CHECK(von_neumann_entropy(laplacian(pair), 1.0) ==
          doctest::Approx(-p1 * std::log(p1) - p2 * std::log(p2)).epsilon(1e-12));

    // tau -> 0 approaches log N.
    StaticGraph triangle;
    triangle.node_count = 3;
    triangle.edges = {{0, 1}, {0, 2}, {1, 2}};
    CHECK(von_neumann_entropy(laplacian(triangle), 1e-9) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-6));
}

TEST_CASE("spectral check distinguishes static and temporal kernels") {
    // Static heat kernels are symmetric PSD.
    StaticGraph triangle;
    triangle.node_count = 3;
    triangle.edges = {{0, 1}, {0, 2}, {1, 2}};
    SpectrumReport stat = spectral_check(heat_kernel_static(laplacian(triangle), 1.0, 0.7));
    CHECK(stat.is_real_nonnegative);
    REQUIRE(stat.vn_entropy.has_value());
    CHECK(*stat.vn_entropy <= std::log(3.0) + 1e-12);

    // The composed temporal-cycle kernel has complex eigenvalues.
    SpectrumReport temp = spectral_check(kernel(synth::temporal_cycle(), 1.0, 0.0, 3.0).matrix);
    CHECK_FALSE(temp.is_real_nonnegative);
    CHECK_FALSE(temp.vn_entropy.has_value());

    SpectrumReport id = spectral_check(Eigen::MatrixXd::Identity(4, 4));
    CHECK(id.is_real_nonnegative);
    CHECK(*id.vn_entropy == doctest::Approx(std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("local entropy signal grids") {
    LinkStream cyc = synth::temporal_cycle();
    EntropySignal sig = local_entropy_signal(cyc, 1.0, 1.0);
    CHECK(sig.times == std::vector<double>{1.0, 2.0});

    EntropySignal uni = local_entropy_signal(cyc, 1.0, 1.0, SignalGrid::Uniform, 0.5);
    REQUIRE(uni.times.size() == 5);
    CHECK(uni.times.front() == 0.5);
    CHECK(uni.times.back() == 2.5);

    LinkStream empty = new_link_stream(3, 5.0, {});
    EntropySignal zero = local_entropy_signal(empty, 1.0, 2.0, SignalGrid::Uniform, 1.0);
    for (double v : zero.values) CHECK(v == 0.0);

    CHECK_THROWS_AS(local_entropy_signal(cyc, 1.0, 3.0), DataError);
}

TEST_CASE("backward local signal is reported at the original window center") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        LinkStream s = random_stream(seed);
        EntropySignal fwd = local_entropy_signal(s, 1.0, 1.0, SignalGrid::Uniform, 0.7);
        EntropySignal bwd = local_entropy_signal(s, 1.0, 1.0, SignalGrid::Uniform, 0.7,
                                                 Direction::Backward);
        REQUIRE(fwd.times == bwd.times);
        // Symmetric per-interval factors make the window kernels transposes;
        // with uniform start both directions average the same row set, so the
        // values agree up to composition order.
        for (std::size_t i = 0; i < fwd.values.size(); ++i)
            CHECK(fwd.values[i] == doctest::Approx(bwd.values[i]).epsilon(1e-9));
    }
}

TEST_CASE("signal CSV round trip") {
    auto dir = std::filesystem::temp_directory_path() / "tnet_signals";
    std::filesystem::create_directories(dir);
    auto path = (dir / "sig.csv").string();
    EntropySignal sig = local_entropy_signal(synth::temporal_cycle(), 2.0, 1.0);
    save_signal_csv(sig, path);
    EntropySignal back = load_signal_csv(path);
    CHECK(back.rate_lambda == sig.rate_lambda);
    CHECK(back.window_delta == sig.window_delta);
    CHECK(back.direction == sig.direction);
    CHECK(back.times == sig.times);
    CHECK(back.values == sig.values);
}
