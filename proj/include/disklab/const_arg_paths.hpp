#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "disklab/disk_geometry.hpp"
#include "disklab/error.hpp"

namespace disklab {

// Curves r -> theta(r) along which arg(z f'(z)...) style quantities stay
// constant. Two closed forms:
//   ArgFPrimeConstant: phi(r) = theta0 + a/r, theta(r) = -a(log r + 1)/r + c/r - theta0
//   General:           phi constant,          theta(r) = -phi + arcsin(c / r)
// both solving d/dr of r sin(phi + theta) = c in their regime; the underlying
// ODE is theta'(r) = -tan(phi + theta) / r.
enum class PathBranch { ArgFPrimeConstant, General };

struct PathParams {
    PathBranch branch = PathBranch::General;
    double a = 0.0;        // ArgFPrimeConstant: phi(r) = theta0 + a/r
    double c = 0.0;        // first integral value
    double theta0 = 0.0;   // ArgFPrimeConstant only
    double phi_value = 0.0;    // General only
};

inline double theta_closed_form(const PathParams& p, double r) {
    if (!(r > 0.0)) fail("BadParam", "radius must be positive");
    if (p.branch == PathBranch::ArgFPrimeConstant)
        return -p.a * (std::log(r) + 1.0) / r + p.c / r - p.theta0;
    const double s = p.c / r;
    if (!(std::abs(s) <= 1.0)) fail("ArcsinDomain", "|c / r| exceeds 1");
    return -p.phi_value + std::asin(s);
}

inline double phi_of_r(const PathParams& p, double r) {
    if (p.branch == PathBranch::ArgFPrimeConstant) return p.theta0 + p.a / r;
    return p.phi_value;
}

struct OdeSample {
    double r = 0.0;
    double theta = 0.0;
};

// Fixed-step RK4 on theta'(r) = -tan(phi(r) + theta) / r. Integrates in
// either direction. Every stage checks |phi + theta| < pi/2 - 0.1 so the
// tangent stays well-behaved.
inline std::vector<OdeSample> theta_ode(const std::function<double(double)>& phi,
                                        double theta_init, double r0, double r1,
                                        int steps) {
    if (!(r0 > 0.0 && r0 < 1.0 && r1 > 0.0 && r1 < 1.0))
        fail("BadParam", "radii must be in (0, 1)");
    if (r0 == r1) fail("BadParam", "degenerate radial interval");
    if (steps < 1) fail("BadParam", "need at least one step");
    if (!phi) fail("BadParam", "phi callable is empty");

    auto slope = [&](double r, double theta) {
        const double psi = phi(r) + theta;
        if (!(std::abs(psi) < kPi / 2.0 - 0.1))
            fail("TanBlowup", "phi + theta approached pi/2 during integration");
        return -std::tan(psi) / r;
    };

    std::vector<OdeSample> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    const double h = (r1 - r0) / steps;
    double r = r0;
    double theta = theta_init;
    out.push_back({r, theta});
    for (int i = 0; i < steps; ++i) {
        const double k1 = slope(r, theta);
        const double k2 = slope(r + h / 2.0, theta + h * k1 / 2.0);
        const double k3 = slope(r + h / 2.0, theta + h * k2 / 2.0);
        const double k4 = slope(r + h, theta + h * k3);
        theta += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        r = r0 + (i + 1) * h;
        out.push_back({r, theta});
    }
    return out;
}

struct BranchCompareReport {
    PathBranch branch = PathBranch::General;
    double r0 = 0.0, r1 = 0.0;
    int steps = 0;
    double max_abs_deviation = 0.0;   // |theta_ode - theta_closed_form| over samples
    double max_abs_psi = 0.0;         // max |phi + theta| seen on the closed form
    double smallangle_bound = 0.0;    // (max|psi|^3 / 3) * log(r1 / r0)
    double integrator_tol = 0.0;      // max(1e-12, h^4)
    bool model_error_dominant = false;
};

// Closed form vs integrated truth. The closed forms replace tan(psi) by psi,
// so their drift obeys (r d)' = -(tan(psi) - psi), giving
// |d(r)| <= max|psi|^3/3 * (r - r0)/r <= max|psi|^3/3 * log(r1/r0) on [r0, r1].
inline BranchCompareReport compare_branches(const PathParams& p, double r0, double r1,
                                            int steps) {
    if (!(r0 > 0.0 && r0 < r1 && r1 < 1.0)) fail("BadParam", "need 0 < r0 < r1 < 1");
    if (steps < 1) fail("BadParam", "need at least one step");

    BranchCompareReport report;
    report.branch = p.branch;
    report.r0 = r0;
    report.r1 = r1;
    report.steps = steps;

    const double theta_init = theta_closed_form(p, r0);
    auto phi = [&](double r) { return phi_of_r(p, r); };
    const std::vector<OdeSample> samples = theta_ode(phi, theta_init, r0, r1, steps);

    for (const OdeSample& s : samples) {
        const double closed = theta_closed_form(p, s.r);
        report.max_abs_deviation =
            std::max(report.max_abs_deviation, std::abs(s.theta - closed));
        report.max_abs_psi =
            std::max(report.max_abs_psi, std::abs(phi(s.r) + closed));
    }

    const double psi3 = report.max_abs_psi * report.max_abs_psi * report.max_abs_psi;
    report.smallangle_bound = psi3 / 3.0 * std::log(r1 / r0);
    const double h = (r1 - r0) / steps;
    report.integrator_tol = std::max(1e-12, h * h * h * h);
    report.model_error_dominant =
        report.max_abs_deviation > 10.0 * report.integrator_tol;
    return report;
}

} // namespace disklab
