#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "disklab/boundary.hpp"
#include "disklab/disk_geometry.hpp"
#include "disklab/error.hpp"

namespace disklab {

// Pointwise derivative data of f = h + conj(g).
struct MapJet {
    Complex f{0.0, 0.0};
    Complex h_prime{0.0, 0.0};
    Complex g_prime{0.0, 0.0};
    Complex omega{0.0, 0.0};
    bool omega_defined = false;     // |h'| >= 1e-13 (1 + |g'|)
    double jacobian = 0.0;          // |h'|^2 - |g'|^2
};

namespace detail {

// Compensated power sum: sum c_n z^n with Kahan accumulation, which keeps
// near-boundary evaluations of long coefficient tails stable.
inline Complex power_sum(const std::vector<Complex>& c, Complex z) {
    Complex sum{0.0, 0.0}, comp{0.0, 0.0}, zp{1.0, 0.0};
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (n > 0) zp *= z;
        const Complex y = c[n] * zp - comp;
        const Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

inline Complex power_sum_derivative(const std::vector<Complex>& c, Complex z) {
    Complex sum{0.0, 0.0}, comp{0.0, 0.0}, zp{1.0, 0.0};
    for (std::size_t n = 1; n < c.size(); ++n) {
        if (n > 1) zp *= z;
        const Complex y = static_cast<double>(n) * c[n] * zp - comp;
        const Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace detail

class HarmonicMap {
public:
    enum class Form { Coefficients, ClosedForm };

    using Callable = std::function<Complex(Complex)>;

    // a indexed by power from 0; b indexed by power from 0 with b_0 = 0.
    static HarmonicMap from_coefficients(std::vector<Complex> a, std::vector<Complex> b,
                                         std::string label) {
        HarmonicMap m;
        m.form_ = Form::Coefficients;
        m.a_ = std::move(a);
        m.b_ = std::move(b);
        m.label_ = std::move(label);
        if (m.a_.empty()) m.a_.push_back({0.0, 0.0});
        if (!m.b_.empty()) {
            double scale = 1.0;
            for (const Complex& c : m.a_) scale = std::max(scale, std::abs(c));
            for (const Complex& c : m.b_) scale = std::max(scale, std::abs(c));
            if (std::abs(m.b_[0]) > 1e-14 * scale)
                fail("BadParam", "co-analytic part must have no constant term");
            m.b_[0] = {0.0, 0.0};
        }
        return m;
    }

    // Derivative callables are cross-checked against h, g by central
    // differences at 8 probe points; a mismatch is a construction error.
    static HarmonicMap closed_form(Callable h, Callable g, Callable h_prime,
                                   Callable g_prime, std::string label) {
        HarmonicMap m;
        m.form_ = Form::ClosedForm;
        m.h_fn_ = std::move(h);
        m.g_fn_ = std::move(g);
        m.hp_fn_ = std::move(h_prime);
        m.gp_fn_ = std::move(g_prime);
        m.label_ = std::move(label);
        if (!m.h_fn_ || !m.g_fn_ || !m.hp_fn_ || !m.gp_fn_)
            fail("BadParam", "closed-form map needs h, g, h', g' callables");
        const double radii[2] = {0.37, 0.61};
        const double angles[4] = {0.3, 1.9, 3.6, 5.2};
        const double e = 1e-5;
        for (double r : radii) {
            for (double t : angles) {
                const Complex z = std::polar(r, t);
                const Complex dh = (m.h_fn_(z + e) - m.h_fn_(z - e)) / (2.0 * e);
                const Complex dg = (m.g_fn_(z + e) - m.g_fn_(z - e)) / (2.0 * e);
                if (std::abs(dh - m.hp_fn_(z)) > 1e-6 * (1.0 + std::abs(m.hp_fn_(z))))
                    fail("BadParam", "h' callable disagrees with h");
                if (std::abs(dg - m.gp_fn_(z)) > 1e-6 * (1.0 + std::abs(m.gp_fn_(z))))
                    fail("BadParam", "g' callable disagrees with g");
            }
        }
        return m;
    }

    Form form() const { return form_; }
    const std::string& label() const { return label_; }

    Complex h(Complex z) const {
        return form_ == Form::Coefficients ? detail::power_sum(a_, z) : h_fn_(z);
    }
    Complex g(Complex z) const {
        if (form_ == Form::Coefficients)
            return b_.empty() ? Complex{0.0, 0.0} : detail::power_sum(b_, z);
        return g_fn_(z);
    }
    Complex h_prime(Complex z) const {
        return form_ == Form::Coefficients ? detail::power_sum_derivative(a_, z) : hp_fn_(z);
    }
    Complex g_prime(Complex z) const {
        if (form_ == Form::Coefficients)
            return b_.empty() ? Complex{0.0, 0.0} : detail::power_sum_derivative(b_, z);
        return gp_fn_(z);
    }

    Complex f(Complex z) const {
        require_inside(z);
        return h(z) + std::conj(g(z));
    }

    MapJet jet(Complex z) const {
        require_inside(z);
        MapJet j;
        j.f = h(z) + std::conj(g(z));
        j.h_prime = h_prime(z);
        j.g_prime = g_prime(z);
        j.jacobian = std::norm(j.h_prime) - std::norm(j.g_prime);
        j.omega_defined = std::abs(j.h_prime) >= 1e-13 * (1.0 + std::abs(j.g_prime));
        if (j.omega_defined) j.omega = j.g_prime / j.h_prime;
        return j;
    }

    // i z h'(z) + conj(i z g'(z))
    Complex f_theta(Complex z) const {
        require_inside(z);
        const Complex iz = Complex{0.0, 1.0} * z;
        return iz * h_prime(z) + std::conj(iz * g_prime(z));
    }

    // h'(z) + conj(h'(z) omega(z)) = h' + conj(g')
    Complex f_prime(Complex z) const {
        require_inside(z);
        return h_prime(z) + std::conj(g_prime(z));
    }

    int degree() const {
        if (form_ != Form::Coefficients)
            fail("BadParam", "degree only defined for coefficient maps");
        return static_cast<int>(std::max(a_.size(), std::max<std::size_t>(b_.size(), 1)) - 1);
    }

    Complex coeff_a(int n) const {
        if (n < 0 || static_cast<std::size_t>(n) >= a_.size()) return {0.0, 0.0};
        return a_[static_cast<std::size_t>(n)];
    }
    Complex coeff_b(int n) const {
        if (n < 0 || static_cast<std::size_t>(n) >= b_.size()) return {0.0, 0.0};
        return b_[static_cast<std::size_t>(n)];
    }

    bool g_identically_zero() const {
        if (form_ == Form::Coefficients) {
            double scale = 1.0;
            for (const Complex& c : a_) scale = std::max(scale, std::abs(c));
            for (const Complex& c : b_) scale = std::max(scale, std::abs(c));
            for (const Complex& c : b_)
                if (std::abs(c) > 1e-14 * scale) return false;
            return true;
        }
        for (double r : {0.37, 0.61})
            for (double t : {0.3, 1.9, 3.6, 5.2}) {
                const Complex z = std::polar(r, t);
                if (std::abs(g_prime(z)) > 1e-14 * (1.0 + std::abs(h_prime(z)))) return false;
            }
        return true;
    }

    // Crude tail bound for coefficient maps: the largest magnitude in the last
    // decile of powers continued as a geometric tail. Report-only.
    double truncation_bound(Complex z) const {
        if (form_ != Form::Coefficients) return 0.0;
        const int n = degree();
        const int decile = std::max(1, (n + 1) / 10);
        double tail = 0.0;
        for (int k = n - decile + 1; k <= n; ++k)
            tail = std::max(tail, std::abs(coeff_a(k)) + std::abs(coeff_b(k)));
        const double r = std::abs(z);
        if (r >= 1.0) return std::numeric_limits<double>::infinity();
        return tail * std::pow(r, n + 1) / (1.0 - r);
    }

    void attach_boundary(std::shared_ptr<const BoundaryFunction> phi) {
        boundary_ = std::move(phi);
    }
    const BoundaryFunction* boundary() const { return boundary_.get(); }

private:
    HarmonicMap() = default;

    static void require_inside(Complex z) {
        if (!(std::abs(z) < 1.0)) fail("OutsideDisk", "evaluation point not in the open disk");
    }

    Form form_ = Form::Coefficients;
    std::vector<Complex> a_, b_;
    Callable h_fn_, g_fn_, hp_fn_, gp_fn_;
    std::string label_;
    std::shared_ptr<const BoundaryFunction> boundary_;
};

struct GridSenseReport {
    bool sense_preserving = false;
    double min_jacobian = 0.0;
    Complex argmin{0.0, 0.0};
    int points_checked = 0;
};

inline GridSenseReport sense_preserving_on_grid(const HarmonicMap& map, double r_max,
                                                int n_radii, int n_rays) {
    if (!(r_max > 0.0 && r_max < 1.0)) fail("BadParam", "r_max must be in (0,1)");
    if (n_radii < 1 || n_rays < 1) fail("BadParam", "grid must be nonempty");
    GridSenseReport rep;
    rep.min_jacobian = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_radii; ++i) {
        const double r = r_max * static_cast<double>(i + 1) / static_cast<double>(n_radii);
        for (int j = 0; j < n_rays; ++j) {
            const Complex z = std::polar(r, kTwoPi * j / n_rays);
            const MapJet jet = map.jet(z);
            ++rep.points_checked;
            if (jet.jacobian < rep.min_jacobian) {
                rep.min_jacobian = jet.jacobian;
                rep.argmin = z;
            }
        }
    }
    rep.sense_preserving = rep.min_jacobian > 0.0;
    return rep;
}

// Lower-bound diagnostic |h'|^2 + |g'|^2 >= dist(0, boundary image)^2 / 16.
// dist is estimated from near-boundary samples; the caller owns the map
// hypotheses (univalent onto a convex region containing 0, f(0) = 0).
struct SchoberReport {
    double dist_estimate = 0.0;
    double dist_angle = 0.0;
    double min_sum = 0.0;
    Complex argmin{0.0, 0.0};
    double bound = 0.0;
    double margin = 0.0;
    bool violation = false;
};

inline SchoberReport schober_bound_check(const HarmonicMap& map, int boundary_samples = 1024,
                                         int n_radii = 32, int n_rays = 128) {
    if (boundary_samples < 16 || n_radii < 1 || n_rays < 1)
        fail("BadParam", "schober grid too small");
    SchoberReport rep;
    const double r_edge = 1.0 - 1e-4;
    rep.dist_estimate = std::numeric_limits<double>::infinity();
    for (int j = 0; j < boundary_samples; ++j) {
        const double t = kTwoPi * j / boundary_samples;
        const double v = std::abs(map.f(std::polar(r_edge, t)));
        if (v < rep.dist_estimate) {
            rep.dist_estimate = v;
            rep.dist_angle = t;
        }
    }
    rep.min_sum = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_radii; ++i) {
        const double r = r_edge * static_cast<double>(i + 1) / static_cast<double>(n_radii);
        for (int j = 0; j < n_rays; ++j) {
            const Complex z = std::polar(r, kTwoPi * j / n_rays);
            const double s = std::norm(map.h_prime(z)) + std::norm(map.g_prime(z));
            if (s < rep.min_sum) {
                rep.min_sum = s;
                rep.argmin = z;
            }
        }
    }
    rep.bound = rep.dist_estimate * rep.dist_estimate / 16.0;
    rep.margin = rep.min_sum - rep.bound;
    rep.violation = rep.margin < -1e-9;
    return rep;
}

struct GalleryParams {
    std::optional<double> k;
    std::vector<Complex> a, b;
};

// Residual report between the measured dilatation and a claimed formula on a
// polar probe grid. Records the worst disagreement; asserts nothing.
struct OmegaConformance {
    double max_residual = 0.0;
    Complex worst_z{0.0, 0.0};
    int points = 0;
    int undefined_points = 0;
};

inline OmegaConformance omega_conformance(const HarmonicMap& map,
                                          const std::function<Complex(Complex)>& claimed,
                                          double r_max = 0.95, int n_radii = 8,
                                          int n_rays = 16) {
    OmegaConformance rep;
    for (int i = 0; i < n_radii; ++i) {
        const double r = r_max * static_cast<double>(i + 1) / static_cast<double>(n_radii);
        for (int j = 0; j < n_rays; ++j) {
            const Complex z = std::polar(r, kTwoPi * j / n_rays);
            const MapJet jet = map.jet(z);
            if (!jet.omega_defined) {
                ++rep.undefined_points;
                continue;
            }
            ++rep.points;
            const double res = std::abs(jet.omega - claimed(z));
            if (res > rep.max_residual) {
                rep.max_residual = res;
                rep.worst_z = z;
            }
        }
    }
    return rep;
}

inline HarmonicMap gallery(const std::string& name, const GalleryParams& params = {}) {
    if (name == "shear") {
        if (!params.k) fail("BadParam", "shear needs parameter k");
        const double k = *params.k;
        if (!(k > 0.0 && k <= 1.0)) fail("BadParam", "shear needs 0 < k <= 1");
        std::string label = "shear:k=" + std::to_string(k);
        HarmonicMap m = HarmonicMap::from_coefficients(
            {{0.0, 0.0}, {1.0, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}, {k / 2.0, 0.0}},
            std::move(label));
        FourierCoeffs phi(2);
        phi.set(1, {1.0, 0.0});
        phi.set(-2, {k / 2.0, 0.0});
        m.attach_boundary(std::make_shared<BoundaryFunction>(BoundaryFunction::fourier(phi)));
        return m;
    }
    if (name == "square") {
        // h, g assembled from the two strip maps
        //   F1 = (i/2) log((i+z)/(i-z)),  F2 = (1/2) log((1+z)/(1-z)),
        // h = (F1+F2)/2, g = (F1-F2)/2. Both Moebius quotients send the disk
        // into the right half-plane, so principal logs never cross the cut.
        // Exact derivatives: h' = 1/(1-z^4), g' = -z^2/(1-z^4).
        const Complex I{0.0, 1.0};
        auto L1 = [I](Complex z) { return std::log((I + z) / (I - z)); };
        auto L2 = [](Complex z) { return std::log((1.0 + z) / (1.0 - z)); };
        auto h = [I, L1, L2](Complex z) { return (I * L1(z) + L2(z)) / 4.0; };
        auto g = [I, L1, L2](Complex z) { return (I * L1(z) - L2(z)) / 4.0; };
        auto hp = [](Complex z) { return 1.0 / (1.0 - z * z * z * z); };
        auto gp = [](Complex z) { return -z * z / (1.0 - z * z * z * z); };
        HarmonicMap m = HarmonicMap::closed_form(h, g, hp, gp, "square");
        const double q = kPi / 4.0;
        StepFunction corners({0.0, kPi / 2.0, kPi, 3.0 * kPi / 2.0},
                             {Complex{q, q}, Complex{-q, q}, Complex{-q, -q}, Complex{q, -q}});
        m.attach_boundary(std::make_shared<BoundaryFunction>(
            BoundaryFunction::step(std::move(corners))));
        return m;
    }
    if (name == "poly") {
        if (params.a.empty() && params.b.empty())
            fail("BadParam", "poly needs coefficient lists");
        return HarmonicMap::from_coefficients(params.a, params.b, "poly");
    }
    fail("UnknownGallery", "no gallery map named '" + name + "'");
}

} // namespace disklab
