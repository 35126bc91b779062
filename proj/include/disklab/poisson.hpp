#pragma once

#include <cmath>
#include <memory>

#include "disklab/boundary.hpp"
#include "disklab/harmonic_map.hpp"

namespace disklab {

// P(r, t) = (1 - r^2) / (1 - 2 r cos t + r^2)
inline double poisson_kernel(double r, double t) {
    return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(t) + r * r);
}

struct PoissonKernelEval {
    double r = 0.0;
    double t = 0.0;
    double value = 0.0;
};

inline PoissonKernelEval poisson_kernel_eval(double r, double t) {
    if (!(r >= 0.0 && r < 1.0)) fail("OutsideDisk", "kernel radius must be in [0,1)");
    return {r, t, poisson_kernel(r, t)};
}

// Trapezoid value of (1/2pi) integral P(r, phi - theta) Phi(e^{i phi}) d phi.
inline Complex poisson_eval(const BoundaryFunction& phi, Complex z, int nodes = 2048) {
    if (!(std::abs(z) < 1.0)) fail("OutsideDisk", "Poisson integral needs |z| < 1");
    if (nodes < 64 || !detail::is_power_of_two(static_cast<std::size_t>(nodes)))
        fail("BadParam", "nodes must be a power of two >= 64");
    const double r = std::abs(z);
    const double theta = std::arg(z);
    Complex acc{0.0, 0.0};
    for (int j = 0; j < nodes; ++j) {
        const double p = kTwoPi * j / nodes;
        acc += poisson_kernel(r, p - theta) * phi.value(p);
    }
    return acc / static_cast<double>(nodes);
}

// Split of the Poisson integral into analytic and co-analytic parts:
// a_n = c_n (n >= 0), b_n = conj(c_{-n}) (n >= 1).
inline HarmonicMap decompose(const BoundaryFunction& phi, int degree = 256) {
    if (degree < 1) fail("BadParam", "decompose needs degree >= 1");
    const FourierCoeffs c = fourier_coefficients(phi, degree);
    std::vector<Complex> a(static_cast<std::size_t>(degree) + 1);
    std::vector<Complex> b(static_cast<std::size_t>(degree) + 1);
    for (int n = 0; n <= degree; ++n) a[static_cast<std::size_t>(n)] = c.coeff(n);
    b[0] = {0.0, 0.0};
    for (int n = 1; n <= degree; ++n)
        b[static_cast<std::size_t>(n)] = std::conj(c.coeff(-n));
    HarmonicMap m = HarmonicMap::from_coefficients(
        std::move(a), std::move(b), "decomposed:deg=" + std::to_string(degree));
    m.attach_boundary(std::make_shared<BoundaryFunction>(phi));
    return m;
}

// Max |f(r e^{i theta}) - Phi(theta)| over uniform sample angles. For step
// data, angles within min_jump_distance of a jump can be excluded, since the
// residual there is governed by Gibbs behavior rather than solver accuracy.
inline double boundary_residual(const HarmonicMap& map, const BoundaryFunction& phi,
                                double r_test, int samples,
                                double min_jump_distance = 0.0) {
    if (!(r_test > 0.0 && r_test < 1.0)) fail("BadParam", "r_test must be in (0,1)");
    if (samples < 1) fail("BadParam", "need at least one sample");
    double worst = 0.0;
    for (int j = 0; j < samples; ++j) {
        const double t = kTwoPi * j / samples;
        if (min_jump_distance > 0.0 && phi.kind() == BoundaryFunction::Kind::Step &&
            phi.step_data().nearest_jump_distance(t) < min_jump_distance)
            continue;
        worst = std::max(worst, std::abs(map.f(std::polar(r_test, t)) - phi.value(t)));
    }
    return worst;
}

} // namespace disklab
