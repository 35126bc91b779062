#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "disklab/disk_geometry.hpp"

using namespace disklab;

TEST_CASE("angle normalization ranges", "[disk-geometry]") {
    std::mt19937 rng(7121);
    std::uniform_real_distribution<double> dist(-50.0, 50.0);
    for (int i = 0; i < 500; ++i) {
        const double t = dist(rng);
        const double n = normalize_angle(t);
        REQUIRE(n >= 0.0);
        REQUIRE(n < kTwoPi);
        REQUIRE(std::abs(std::remainder(n - t, kTwoPi)) < 1e-9);
        const double p = principal_angle(t);
        REQUIRE(p > -kPi);
        REQUIRE(p <= kPi);
    }
}

TEST_CASE("mod-pi distance", "[disk-geometry]") {
    REQUIRE(mod_pi_distance(0.0, kPi) == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(mod_pi_distance(0.1, 0.1) == 0.0);
    REQUIRE(mod_pi_distance(0.0, kPi / 2.0 + 10.0 * kPi) == Catch::Approx(kPi / 2.0));
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> dist(-20.0, 20.0);
    for (int i = 0; i < 300; ++i) {
        const double a = dist(rng), b = dist(rng), c = dist(rng);
        REQUIRE(mod_pi_distance(a, b) == Catch::Approx(mod_pi_distance(b, a)).margin(1e-12));
        REQUIRE(mod_pi_distance(a + kPi, b) == Catch::Approx(mod_pi_distance(a, b)).margin(1e-9));
        REQUIRE(mod_pi_distance(a, c) <=
                mod_pi_distance(a, b) + mod_pi_distance(b, c) + 1e-12);
    }
}

TEST_CASE("Stolz membership arithmetic", "[disk-geometry]") {
    REQUIRE(stolz_contains({0.0, 2.0}, {0.0, 0.0}));
    REQUIRE_FALSE(stolz_contains({0.0, 0.5}, {0.0, 0.0}));
    REQUIRE(stolz_contains({0.0, 2.0}, {0.99, 0.0}));
    REQUIRE_FALSE(stolz_contains({0.0, 2.0}, {1.0, 0.0}));
    REQUIRE_FALSE(stolz_contains({0.0, 2.0}, {1.5, 0.0}));
    REQUIRE_FALSE(stolz_contains({0.0, 2.0}, {-0.5, 0.0}));
}

TEST_CASE("Stolz membership is monotone in alpha and conjugation-symmetric", "[disk-geometry]") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> rd(0.0, 0.999), td(0.0, kTwoPi);
    std::uniform_real_distribution<double> ad(1.1, 4.0), t0d(-10.0, 10.0);
    for (int i = 0; i < 400; ++i) {
        const Complex z = std::polar(rd(rng), td(rng));
        const double a1 = ad(rng);
        const double a2 = a1 + 0.5;
        const double t0 = t0d(rng);
        if (stolz_contains({t0, a1}, z)) REQUIRE(stolz_contains({t0, a2}, z));
        REQUIRE(stolz_contains({t0, a1}, z) == stolz_contains({-t0, a1}, std::conj(z)));
    }
    REQUIRE_THROWS_AS(StolzAngle(0.0, 0.0), Error);
    REQUIRE_THROWS_AS(StolzAngle(0.0, -1.0), Error);
}

TEST_CASE("approach path schedule and membership", "[disk-geometry]") {
    const ApproachPath p = make_approach_path({0.0, 2.0}, 0.0, 3, 5);
    REQUIRE(p.points.size() == 3);
    REQUIRE(p.points[0].real() == Catch::Approx(0.875));
    REQUIRE(p.points[1].real() == Catch::Approx(0.9375));
    REQUIRE(p.points[2].real() == Catch::Approx(0.96875));
    for (Complex z : p.points) REQUIRE(z.imag() == 0.0);

    const ApproachPath q = make_approach_path({0.0, 2.0}, 1.0, 3, 40);
    REQUIRE(q.points.size() == 38);
    for (Complex z : q.points) REQUIRE(stolz_contains(q.sector, z));

    // aspect ratio tends to sqrt(1 + slope^2) < alpha
    const double target = std::sqrt(2.0);
    const Complex last = q.points.back();
    const double ratio = std::abs(last - q.sector.vertex()) / (1.0 - std::abs(last));
    REQUIRE(ratio == Catch::Approx(target).epsilon(1e-4));
}

TEST_CASE("approach path rejects bad parameters", "[disk-geometry]") {
    REQUIRE_NOTHROW(make_approach_path({0.0, 2.0}, 1.5));
    REQUIRE_THROWS_AS(make_approach_path({0.0, 2.0}, 1.8), Error);
    REQUIRE_THROWS_AS(make_approach_path({0.0, 2.0}, 0.0, 0, 10), Error);
    REQUIRE_THROWS_AS(make_approach_path({0.0, 2.0}, 0.0, 10, 10), Error);
    REQUIRE_THROWS_AS(make_approach_path({0.0, 2.0}, 0.0, 10, 46), Error);
    try {
        make_approach_path({0.0, 2.0}, 1.8);
        FAIL("expected SlopeTooLarge");
    } catch (const Error& e) {
        REQUIRE(e.code() == "SlopeTooLarge");
    }
}

TEST_CASE("unwrap accumulates quarter turns", "[disk-geometry]") {
    const std::vector<Complex> quarter{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {1, 0}};
    const std::vector<double> w = unwrap_args(quarter);
    REQUIRE(w.size() == 5);
    REQUIRE(w[0] == Catch::Approx(0.0).margin(1e-15));
    REQUIRE(w[1] == Catch::Approx(kPi / 2.0));
    REQUIRE(w[2] == Catch::Approx(kPi));
    REQUIRE(w[3] == Catch::Approx(3.0 * kPi / 2.0));
    REQUIRE(w[4] == Catch::Approx(kTwoPi));

    const std::vector<double> c = unwrap_args({{1, 0}, {1, 0}, {1, 0}});
    for (double v : c) REQUIRE(v == 0.0);
}

TEST_CASE("unwrap flags zeros and coarse paths", "[disk-geometry]") {
    try {
        unwrap_args({{1, 0}, {0, 0}, {1, 0}});
        FAIL("expected ZeroOnPath");
    } catch (const Error& e) {
        REQUIRE(e.code() == "ZeroOnPath");
    }
    try {
        unwrap_args({{1, 0}, {-1, 0.1}});
        FAIL("expected BranchJump");
    } catch (const Error& e) {
        REQUIRE(e.code() == "BranchJump");
    }
}

TEST_CASE("unwrap tracks a smooth spiral and stays consistent mod 2pi", "[disk-geometry]") {
    std::vector<Complex> vals;
    const int n = 200;
    for (int i = 0; i <= n; ++i) {
        const double t = 5.0 * i / n;
        vals.push_back(std::polar(1.0 + 0.1 * t, t));
    }
    const std::vector<double> w = unwrap_args(vals);
    for (int i = 0; i <= n; ++i) {
        const double t = 5.0 * i / n;
        REQUIRE(w[static_cast<std::size_t>(i)] == Catch::Approx(t).margin(1e-12));
        REQUIRE(std::abs(std::remainder(w[static_cast<std::size_t>(i)] -
                                        std::arg(vals[static_cast<std::size_t>(i)]),
                                        kTwoPi)) < 1e-12);
    }
}
