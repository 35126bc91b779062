#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "disklab/zero_analysis.hpp"

using namespace disklab;

namespace {

double signed_area(const Contour& c) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i) {
        const Complex a = c.vertices[i], b = c.vertices[i + 1];
        acc += a.real() * b.imag() - b.real() * a.imag();
    }
    return 0.5 * acc;
}

} // namespace

TEST_CASE("contours: construction, simplicity, membership", "[zero-analysis]") {
    const Contour c = circle_contour({0.0, 0.0}, 0.5, 64);
    REQUIRE(c.vertices.size() == 65);
    REQUIRE(std::abs(c.vertices.front() - c.vertices.back()) == 0.0);
    REQUIRE(contour_is_simple(c));
    REQUIRE(contour_contains(c, {0.0, 0.0}));
    REQUIRE(contour_contains(c, {0.3, 0.2}));
    REQUIRE_FALSE(contour_contains(c, {0.6, 0.0}));
    REQUIRE(signed_area(c) > 0.0);

    Contour bowtie;
    bowtie.vertices = {{-0.5, -0.5}, {0.5, 0.5}, {0.5, -0.5}, {-0.5, 0.5}, {-0.5, -0.5}};
    REQUIRE_FALSE(contour_is_simple(bowtie));

    REQUIRE_THROWS_AS(circle_contour({0.0, 0.0}, 0.5, 7), Error);
    REQUIRE_THROWS_AS(circle_contour({0.0, 0.0}, 0.0, 64), Error);
}

TEST_CASE("argument principle counts on explicit functions", "[zero-analysis]") {
    const Contour half = circle_contour({0.0, 0.0}, 0.5, 64);

    const ZeroCountReport two =
        argument_principle_count([](Complex z) { return z * z; }, half);
    REQUIRE(two.count == 2);
    REQUIRE(two.winding_residual < 1e-6);

    const ZeroCountReport one =
        argument_principle_count([](Complex z) { return 0.5 * z; }, half);
    REQUIRE(one.count == 1);

    const ZeroCountReport none =
        argument_principle_count([](Complex z) { return std::exp(z); }, half);
    REQUIRE(none.count == 0);

    const Contour tight = circle_contour({0.0, 0.0}, 0.2, 64);
    REQUIRE(argument_principle_count([](Complex z) { return z - 0.3; }, tight).count == 0);

    const Contour big = circle_contour({0.0, 0.0}, 0.9, 128);
    const ZeroCountReport blaschke = argument_principle_count(
        [](Complex z) { return (z - 0.3) * (z - 0.6) / (1.0 - 0.3 * z); }, big);
    REQUIRE(blaschke.count == 2);
    REQUIRE(blaschke.winding_residual < 1e-6);

    // Counts are invariant under contour refinement.
    for (int n : {64, 192, 256}) {
        const Contour c = circle_contour({0.0, 0.0}, 0.9, n);
        REQUIRE(argument_principle_count([](Complex z) { return z * z * z; }, c).count == 3);
    }
}

TEST_CASE("argument principle input validation", "[zero-analysis]") {
    const Contour half = circle_contour({0.0, 0.0}, 0.5, 64);
    auto ident = [](Complex z) { return z; };

    try {
        argument_principle_count([](Complex z) { return z - 0.5; }, half);
        FAIL("vertex zero must be rejected");
    } catch (const Error& e) {
        REQUIRE(e.code() == "ZeroOnContour");
    }

    Contour bowtie;
    bowtie.vertices = {{-0.5, -0.5}, {0.5, 0.5}, {0.5, -0.5}, {-0.5, 0.5}, {-0.5, -0.5}};
    try {
        argument_principle_count(ident, bowtie);
        FAIL("self-intersection must be rejected");
    } catch (const Error& e) {
        REQUIRE(e.code() == "NonSimpleContour");
    }

    Contour open;
    open.vertices = {{0.1, 0.1}, {0.5, 0.1}, {0.5, 0.5}, {0.1, 0.5}};
    REQUIRE_THROWS_AS(argument_principle_count(ident, open), Error);

    Contour outside = circle_contour({0.6, 0.0}, 0.5, 32);
    REQUIRE_THROWS_AS(argument_principle_count(ident, outside), Error);

    Contour tiny;
    tiny.vertices = {{0.1, 0.1}, {0.2, 0.2}, {0.1, 0.1}};
    REQUIRE_THROWS_AS(argument_principle_count(ident, tiny), Error);
}

TEST_CASE("truncated sector contour geometry", "[zero-analysis]") {
    REQUIRE_THROWS_AS(truncated_stolz_contour(StolzAngle{0.0, 2.0}, 0.5, 96), Error);
    REQUIRE_THROWS_AS(truncated_stolz_contour(StolzAngle{0.0, 2.0}, 0.0, 96), Error);
    REQUIRE_THROWS_AS(truncated_stolz_contour(StolzAngle{0.0, 2.0}, 0.1, 15), Error);
    REQUIRE_THROWS_AS(truncated_stolz_contour(StolzAngle{0.0, 1.0}, 0.1, 96), Error);

    const StolzAngle s{0.0, 2.0};
    const Contour wide = truncated_stolz_contour(s, 0.499, 96);
    REQUIRE(contour_is_simple(wide));
    REQUIRE(contour_contains(wide, {0.0, 0.0}));
    REQUIRE(contour_contains(wide, {0.4, 0.0}));
    REQUIRE(contour_contains(wide, {0.0, 0.4}));
    REQUIRE(signed_area(wide) > 0.0);

    const Contour fine = truncated_stolz_contour(s, 1e-2, 96);
    REQUIRE(std::abs(fine.vertices.front() - fine.vertices.back()) < 1e-12);
    for (Complex v : fine.vertices) {
        REQUIRE(stolz_contains(s, v, 1e-9));
        REQUIRE(std::abs(v) <= 1.0 - 1e-2 + 1e-12);
    }
    double max_gap = 0.0;
    for (std::size_t i = 0; i + 1 < fine.vertices.size(); ++i)
        max_gap = std::max(max_gap, std::abs(fine.vertices[i + 1] - fine.vertices[i]));
    REQUIRE(max_gap <= fine.refinement + 1e-12);

    // Deeper truncations only grow the region.
    const Contour inner = truncated_stolz_contour(s, 0.1, 96);
    const Contour outer = truncated_stolz_contour(s, 0.05, 96);
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> coord(-0.95, 0.95);
    for (int i = 0; i < 500; ++i) {
        const Complex p{coord(rng), coord(rng)};
        if (contour_contains(inner, p)) REQUIRE(contour_contains(outer, p));
    }

    // A wide opening at a deep truncation swallows the whole inner circle.
    const Contour full = truncated_stolz_contour(StolzAngle{0.0, 5.0}, 0.4, 96);
    for (Complex v : full.vertices)
        REQUIRE(std::abs(v) == Catch::Approx(0.6).margin(1e-12));
    REQUIRE(signed_area(full) > 0.0);
}

TEST_CASE("dilatation zero counts across truncation ladders", "[zero-analysis]") {
    const StolzAngle s{0.0, 2.0};

    const ZeroCountReport shear =
        count_dilatation_zeros(gallery("shear", {.k = 0.5}), s, {0.3, 0.1, 0.03});
    REQUIRE(shear.count == 1);
    REQUIRE(shear.stabilized);
    REQUIRE_FALSE(shear.degenerate);
    REQUIRE(shear.eps_history.size() == 3);
    for (const auto& [eps, n] : shear.eps_history) REQUIRE(n == 1);

    // g' = (z - 0.99)(z - 0.5i): the root at 0.99 enters the truncated sector
    // only once eps drops below 0.01; the root at 0.5i never lies in it.
    const HarmonicMap edge = gallery(
        "poly",
        {.a = {{0.0, 0.0}, {1.0, 0.0}},
         .b = {{0.0, 0.0}, {0.0, 0.495}, {-0.495, -0.25}, {1.0 / 3.0, 0.0}}});
    const ZeroCountReport drift =
        count_dilatation_zeros(edge, s, {0.1, 0.02, 0.005});
    REQUIRE(drift.eps_history ==
            std::vector<std::pair<double, int>>{{0.1, 0}, {0.02, 0}, {0.005, 1}});
    REQUIRE_FALSE(drift.stabilized);

    const ZeroCountReport settled =
        count_dilatation_zeros(edge, s, {0.1, 0.02, 0.005, 0.002});
    REQUIRE(settled.count == 1);
    REQUIRE(settled.stabilized);

    const ZeroCountReport square =
        count_dilatation_zeros(gallery("square"), s, {0.3, 0.1});
    REQUIRE(square.count == 2);
    REQUIRE(square.stabilized);

    const ZeroCountReport none = count_dilatation_zeros(
        HarmonicMap::from_coefficients({{0.0, 0.0}, {1.0, 0.0}}, {}, "identity"), s,
        {0.3, 0.1});
    REQUIRE(none.degenerate);
    REQUIRE(none.count == 0);
    REQUIRE(none.eps_history ==
            std::vector<std::pair<double, int>>{{0.3, 0}, {0.1, 0}});

    const HarmonicMap any = gallery("shear", {.k = 0.5});
    REQUIRE_THROWS_AS(count_dilatation_zeros(any, s, {}), Error);
    REQUIRE_THROWS_AS(count_dilatation_zeros(any, s, {0.5}), Error);
    REQUIRE_THROWS_AS(count_dilatation_zeros(any, s, {0.1, 0.1}), Error);
    REQUIRE_THROWS_AS(count_dilatation_zeros(any, s, {0.1, 0.2}), Error);
}

TEST_CASE("grid scan finds and polishes zeros", "[zero-analysis]") {
    const std::vector<Complex> single = grid_zero_scan(
        [](Complex z) { return z - 0.3; }, ScanRegion::disk({0.0, 0.0}, 0.6), 0.05);
    REQUIRE(single.size() == 1);
    REQUIRE(std::abs(single[0] - Complex{0.3, 0.0}) < 1e-10);

    // Shear derivative with |g'| < |h'| everywhere: no roots in the disk.
    const HarmonicMap mild = gallery("shear", {.k = 0.5});
    const std::vector<Complex> empty = grid_zero_scan(
        [&](Complex z) { return mild.f_prime(z); }, ScanRegion::disk({0.0, 0.0}, 0.99),
        0.05);
    REQUIRE(empty.empty());

    // Super-unit dilatation: f' = 1 + conj(1.2 z) vanishes at -1/1.2.
    const HarmonicMap heavy = gallery(
        "poly", {.a = {{0.0, 0.0}, {1.0, 0.0}}, .b = {{0.0, 0.0}, {0.0, 0.0}, {0.6, 0.0}}});
    const std::vector<Complex> root = grid_zero_scan(
        [&](Complex z) { return heavy.f_prime(z); }, ScanRegion::disk({0.0, 0.0}, 0.95),
        0.02);
    REQUIRE(root.size() == 1);
    REQUIRE(std::abs(root[0] - Complex{-1.0 / 1.2, 0.0}) < 1e-8);

    // A double zero still collapses to one polished point.
    const std::vector<Complex> doubled = grid_zero_scan(
        [](Complex z) { return z * z; }, ScanRegion::rect(-0.3, -0.3, 0.3, 0.3), 0.04);
    REQUIRE(doubled.size() == 1);
    REQUIRE(std::abs(doubled[0]) < 1e-5);

    REQUIRE_THROWS_AS(
        grid_zero_scan([](Complex z) { return z; }, ScanRegion::disk({0.0, 0.0}, 0.5), 0.0),
        Error);
    REQUIRE_THROWS_AS(
        grid_zero_scan([](Complex z) { return z; }, ScanRegion{}, 0.05), Error);
    REQUIRE_THROWS_AS(ScanRegion::rect(0.5, 0.0, 0.5, 1.0), Error);
    REQUIRE_THROWS_AS(ScanRegion::disk({0.0, 0.0}, 0.0), Error);
}

TEST_CASE("scan restricted to a sector region", "[zero-analysis]") {
    const StolzAngle s{0.0, 2.0};
    const Contour sector = truncated_stolz_contour(s, 0.1, 96);
    auto fn = [](Complex z) { return (z - 0.3) * (z - Complex{0.0, 0.5}); };

    const std::vector<Complex> found =
        grid_zero_scan(fn, ScanRegion::from_contour(sector), 0.02);
    REQUIRE(found.size() == 1);
    REQUIRE(std::abs(found[0] - Complex{0.3, 0.0}) < 1e-9);

    // The same function over the whole disk reports both roots, sorted.
    const std::vector<Complex> both =
        grid_zero_scan(fn, ScanRegion::disk({0.0, 0.0}, 0.8), 0.02);
    REQUIRE(both.size() == 2);
    REQUIRE(std::abs(both[0] - Complex{0.0, 0.5}) < 1e-9);
    REQUIRE(std::abs(both[1] - Complex{0.3, 0.0}) < 1e-9);
}

TEST_CASE("winding count agrees with the grid scan", "[zero-analysis]") {
    auto fn = [](Complex z) { return (z - 0.2) * (z + Complex{0.4, -0.3}); };
    const Contour c = circle_contour({0.0, 0.0}, 0.8, 256);
    const ZeroCountReport wind = argument_principle_count(fn, c);
    const std::vector<Complex> roots =
        grid_zero_scan(fn, ScanRegion::disk({0.0, 0.0}, 0.8), 0.04);
    REQUIRE(wind.count == static_cast<int>(roots.size()));
    REQUIRE(wind.count == 2);
    REQUIRE(std::abs(roots[0] - Complex{-0.4, 0.3}) < 1e-8);
    REQUIRE(std::abs(roots[1] - Complex{0.2, 0.0}) < 1e-8);
}
