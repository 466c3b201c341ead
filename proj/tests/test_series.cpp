#include <doctest.h>

#include <random>

#include "anomatch/series.hpp"

using namespace anomatch;

TEST_CASE("minmax_normalize maps endpoints onto [0, 1]") {
    CHECK(minmax_normalize(std::vector<double>{1, 2, 3}) == std::vector<double>{0, 0.5, 1});
    CHECK(minmax_normalize(std::vector<double>{3, 1, 2}) == std::vector<double>{1, 0, 0.5});
}

TEST_CASE("minmax_normalize maps a constant window to the zero vector") {
    CHECK(minmax_normalize(std::vector<double>{5, 5, 5}) == std::vector<double>{0, 0, 0});
}

TEST_CASE("minmax_normalize rejects empty input") {
    CHECK_THROWS_WITH_AS(minmax_normalize(std::vector<double>{}), "empty subsequence",
                         std::invalid_argument);
}

TEST_CASE("minmax_normalize stays in [0,1] and is idempotent on spanning vectors") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> value(-50.0, 50.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(16);
        for (auto& x : v) x = value(rng);
        const auto norm = minmax_normalize(v);
        for (double x : norm) {
            CHECK(x >= 0.0);
            CHECK(x <= 1.0);
        }
        // The normalized vector spans [0,1], so normalizing again is a no-op.
        CHECK(minmax_normalize(norm) == norm);
    }
}

TEST_CASE("euclidean_distance basics") {
    CHECK(euclidean_distance(std::vector<double>{0, 0}, std::vector<double>{3, 4}) ==
          doctest::Approx(5.0));
    CHECK(euclidean_distance(std::vector<double>{1, 1, 1}, std::vector<double>{1, 1, 1}) == 0.0);
    CHECK(euclidean_distance(std::vector<double>{0, 1}, std::vector<double>{1, 0}) ==
          doctest::Approx(1.41421356).epsilon(1e-8));
    CHECK_THROWS_AS(euclidean_distance(std::vector<double>{1}, std::vector<double>{1, 2}),
                    std::invalid_argument);
}

TEST_CASE("euclidean_distance is a metric on random vectors") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(8), b(8);
        for (auto& x : a) x = value(rng);
        for (auto& x : b) x = value(rng);
        CHECK(euclidean_distance(a, b) == euclidean_distance(b, a));
        CHECK(euclidean_distance(a, b) >= 0.0);
        CHECK(euclidean_distance(a, a) == 0.0);
        if (a != b) CHECK(euclidean_distance(a, b) > 0.0);
    }
}

TEST_CASE("sliding_subsequences counts and contents") {
    {
        MetricSeries s("s", std::vector<double>(10, 1.0));
        CHECK(sliding_subsequences(s, 3).size() == 8);
    }
    {
        MetricSeries s("s", {1, 2, 3, 4, 5});
        const auto subs = sliding_subsequences(s, 5);
        REQUIRE(subs.size() == 1);
        CHECK(subs[0].values == s.values());
        CHECK(subs[0].start == 0);
    }
    {
        MetricSeries s("s", {1, 2, 3, 4});
        const auto subs = sliding_subsequences(s, 2);
        REQUIRE(subs.size() == 3);
        CHECK(subs[0].values == std::vector<double>{1, 2});
        CHECK(subs[1].values == std::vector<double>{2, 3});
        CHECK(subs[2].values == std::vector<double>{3, 4});
    }
}

TEST_CASE("sliding_subsequences start indices reconstruct 0..l-m") {
    MetricSeries s("s", std::vector<double>(37, 0.5));
    const auto subs = sliding_subsequences(s, 9);
    REQUIRE(subs.size() == 37 - 9 + 1);
    for (std::size_t i = 0; i < subs.size(); ++i) {
        CHECK(subs[i].start == i);
        CHECK(subs[i].series_ref == "s");
    }
}

TEST_CASE("sliding_subsequences rejects oversized windows") {
    MetricSeries s("s", {1, 2, 3});
    CHECK_THROWS_WITH_AS(sliding_subsequences(s, 4), "window exceeds series",
                         std::invalid_argument);
}

TEST_CASE("MetricSeries validates its invariants") {
    CHECK_THROWS_AS(MetricSeries("x", {}), std::invalid_argument);
    CHECK_THROWS_AS(MetricSeries("x", {1, 2}, {10, 10}), std::invalid_argument);
    CHECK_THROWS_AS(MetricSeries("x", {1, 2}, {10, 9}), std::invalid_argument);
    CHECK_THROWS_AS(MetricSeries("x", {1, 2}, {}, std::vector<std::uint8_t>{1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MetricSeries("x", {1, std::nan("")}), std::invalid_argument);
    MetricSeries ok("x", {1, 2}, {10, 11}, std::vector<std::uint8_t>{0, 1});
    CHECK(ok.length() == 2);
    CHECK(ok.has_labels());
}
