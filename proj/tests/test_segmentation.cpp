#include <doctest.h>

#include <cmath>
#include <random>

#include "segmentation_oracles.hpp"
#include "tnet/random.hpp"
#include "tnet/segmentation.hpp"

using namespace tnet;
using tnet_tests::oracle_fixed_k;
using tnet_tests::oracle_penalized;

namespace {

std::vector<double> random_signal(std::uint64_t seed, int len) {
    std::mt19937_64 gen(seed);
    std::vector<double> y(len);
    int breaks = static_cast<int>(rng::below(gen, 4));
    std::vector<int> cuts;
    for (int i = 0; i < breaks; ++i) cuts.push_back(2 + static_cast<int>(rng::below(gen, len - 4)));
    std::sort(cuts.begin(), cuts.end());
    cuts.push_back(len);
    double level = rng::uniform(gen, -2.0, 2.0);
    double slope = rng::uniform(gen, -0.3, 0.3);
    int seg = 0;
    for (int i = 0; i < len; ++i) {
        if (i == cuts[seg]) {
            ++seg;
            level = rng::uniform(gen, -2.0, 2.0);
            slope = rng::uniform(gen, -0.3, 0.3);
        }
        y[i] = level + slope * i + rng::uniform(gen, -0.2, 0.2);
    }
    return y;
}

} // namespace

TEST_CASE("linear cost closed forms") {
    std::vector<double> linear{0.0, 1.0, 2.0, 3.0, 4.0};
    CHECK(linear_cost(linear, 0, 5) == doctest::Approx(0.0).epsilon(1e-9));

    std::vector<double> constant{2.5, 2.5, 2.5};
    CHECK(linear_cost(constant, 0, 3) == doctest::Approx(0.0));

    std::vector<double> vee{0.0, 1.0, 0.0};
    CHECK(linear_cost(vee, 0, 3) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(linear_cost(vee, 0, 1), DataError);
    CHECK_THROWS_AS(linear_cost(vee, 2, 1), DataError);
}

TEST_CASE("fixed-k finds an exact step") {
    std::vector<double> y{1, 1, 1, 1, 5, 5, 5, 5};
    Segmentation seg = segment_fixed_k(y, 1);
    CHECK(seg.breakpoints == std::vector<int>{4});
    CHECK(seg.total_cost == doctest::Approx(0.0));

    CHECK_THROWS_AS(segment_fixed_k(y, 4), DataError);
    CHECK_THROWS_AS(segment_fixed_k(y, 0), DataError);
}

TEST_CASE("fixed-k matches the exhaustive oracle") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        std::mt19937_64 gen(seed * 31 + 7);
        int len = 8 + static_cast<int>(rng::below(gen, 33)); // up to 40
        int k = 1 + static_cast<int>(rng::below(gen, 3));
        auto y = random_signal(seed, len);
        Segmentation seg = segment_fixed_k(y, k);
        auto expected = oracle_fixed_k(y, k);
        CHECK(seg.breakpoints == expected);

        double sum = 0.0;
        int prev = 0;
        for (int b : seg.breakpoints) {
            sum += linear_cost(y, prev, b);
            prev = b;
        }
        sum += linear_cost(y, prev, static_cast<int>(y.size()));
        CHECK(seg.total_cost == doctest::Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("penalized search basics") {
    std::vector<double> constant(20, 1.0);
    Segmentation seg = segment_penalized(constant, 1.0);
    CHECK(seg.breakpoints.empty());
    CHECK(seg.total_cost == doctest::Approx(0.0));

    // Breakpoint count is non-increasing in beta.
    auto y = random_signal(11, 40);
    std::size_t prev = std::numeric_limits<std::size_t>::max();
    for (double beta : {0.05, 0.2, 1.0, 4.0, 16.0, 64.0}) {
        std::size_t count = segment_penalized(y, beta).breakpoints.size();
        CHECK(count <= prev);
        prev = count;
    }
}

TEST_CASE("penalized search matches the exhaustive oracle") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        std::mt19937_64 gen(seed * 17 + 3);
        int len = 8 + static_cast<int>(rng::below(gen, 17)); // up to 24 keeps the oracle fast
        auto y = random_signal(seed + 1000, len);
        for (double beta : {0.5, 2.0, 8.0}) {
            Segmentation seg = segment_penalized(y, beta);
            CHECK(seg.breakpoints == oracle_penalized(y, beta));
        }
    }
}

TEST_CASE("hausdorff distance") {
    CHECK(hausdorff({10.0}, {10.0}) == 0.0);
    CHECK(hausdorff({10.0}, {12.0}) == 2.0);
    CHECK(hausdorff({10.0, 50.0}, {12.0}) == 38.0);
    CHECK_THROWS_AS(hausdorff({}, {1.0}), DataError);
    CHECK_THROWS_AS(hausdorff({1.0}, {}), DataError);

    std::mt19937_64 gen(99);
    for (int rep = 0; rep < 200; ++rep) {
        auto draw = [&] {
            std::vector<double> v(1 + rng::below(gen, 4));
            for (auto& x : v) x = rng::uniform(gen, 0.0, 50.0);
            return v;
        };
        auto a = draw(), b = draw(), c = draw();
        CHECK(hausdorff(a, b) == hausdorff(b, a));
        CHECK(hausdorff(a, a) == 0.0);
        CHECK(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12);
    }
}

TEST_CASE("time-abscissa mode uses the provided sample times") {
    // Same values, exponentially spaced times: a linear-in-time ramp is only
    // zero-cost when the fit runs over the time abscissa.
    std::vector<double> x{0.0, 1.0, 2.0, 4.0, 8.0};
    std::vector<double> y;
    for (double t : x) y.push_back(3.0 * t + 1.0);
    CHECK(linear_cost(y, 0, 5, &x) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(linear_cost(y, 0, 5) > 1.0);

    Segmentation seg = segment_fixed_k(y, 1, 2, &x);
    CHECK(seg.total_cost == doctest::Approx(0.0).epsilon(1e-9));
}
