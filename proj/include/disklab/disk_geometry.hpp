#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "disklab/error.hpp"

namespace disklab {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Wrap into [0, 2*pi).
inline double normalize_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

// Wrap into (-pi, pi].
inline double principal_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r > kPi) r -= kTwoPi;
    else if (r <= -kPi) r += kTwoPi;
    return r;
}

// Distance between angles identified mod pi, in [0, pi/2].
inline double mod_pi_distance(double a, double b) {
    double r = std::fmod(a - b, kPi);
    if (r < 0.0) r += kPi;
    return std::min(r, kPi - r);
}

// Nontangential approach region {z : |z - e^{i theta0}| < alpha (1 - |z|)}.
// Empty for alpha <= 1; contains the origin for alpha > 1.
struct StolzAngle {
    double theta0;
    double alpha;

    StolzAngle(double theta0_in, double alpha_in)
        : theta0(normalize_angle(theta0_in)), alpha(alpha_in) {
        if (!(alpha_in > 0.0) || !std::isfinite(alpha_in))
            fail("BadParam", "Stolz alpha must be positive and finite");
    }

    Complex vertex() const { return std::polar(1.0, theta0); }
};

inline bool stolz_contains(const StolzAngle& s, Complex z, double tol = 0.0) {
    if (!(std::abs(z) < 1.0)) return false;
    return std::abs(z - s.vertex()) < s.alpha * (1.0 - std::abs(z)) + tol;
}

// Geometric schedule z_k = (1 - 2^{-k}) e^{i(theta0 + slope 2^{-k})}.
// Membership in S_alpha holds for every k once slope^2 < alpha^2 - 1:
// |z_k - vertex|^2 = d^2 + (1-d) slope^2 d^2 <= (1 + slope^2) d^2, d = 2^{-k}.
struct ApproachPath {
    StolzAngle sector{0.0, 2.0};
    double slope = 0.0;
    std::vector<int> schedule;      // the k exponents
    std::vector<Complex> points;
};

inline ApproachPath make_approach_path(const StolzAngle& s, double slope,
                                       int k_min = 6, int k_max = 40) {
    if (!(slope * slope < s.alpha * s.alpha - 1.0))
        fail("SlopeTooLarge", "need slope^2 < alpha^2 - 1 for nontangential approach");
    if (k_min < 1 || k_max > 45 || k_min >= k_max)
        fail("EmptyPath", "need 1 <= k_min < k_max <= 45");
    ApproachPath p{s, slope, {}, {}};
    p.schedule.reserve(static_cast<std::size_t>(k_max - k_min) + 1);
    p.points.reserve(p.schedule.capacity());
    for (int k = k_min; k <= k_max; ++k) {
        double d = std::ldexp(1.0, -k);
        p.schedule.push_back(k);
        p.points.push_back(std::polar(1.0 - d, s.theta0 + slope * d));
    }
    return p;
}

// Continuous branch of arg along a sequence. First entry is the principal
// argument; later entries pick the 2*pi shift nearest the previous value.
// The quarter-turn worst case has gaps of exactly pi/2, hence the slack.
inline std::vector<double> unwrap_args(const std::vector<Complex>& values) {
    std::vector<double> out;
    out.reserve(values.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(std::abs(values[i]) > 1e-300))
            fail("ZeroOnPath", "arg undefined at a zero value (index " + std::to_string(i) + ")");
        double raw = std::arg(values[i]);
        if (i == 0) {
            prev = raw;
        } else {
            double w = raw + kTwoPi * std::round((prev - raw) / kTwoPi);
            if (std::abs(w - prev) > kPi / 2.0 + 1e-12)
                fail("BranchJump", "argument gap exceeds pi/2; path too coarse");
            prev = w;
        }
        out.push_back(prev);
    }
    return out;
}

} // namespace disklab
