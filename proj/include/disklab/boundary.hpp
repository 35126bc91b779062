#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "disklab/disk_geometry.hpp"
#include "disklab/error.hpp"

namespace disklab {

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

// In-place radix-2 FFT: a_k <- sum_j a_j e^{sign 2 pi i jk / M}. sign = -1 is
// the analysis direction used for Fourier coefficients.
inline void fft_radix2(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_power_of_two(n)) fail("BadParam", "fft size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * kTwoPi / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                // Direct twiddle per butterfly keeps rounding independent of
                // position, which the byte-identical output contract relies on.
                Complex w = std::polar(1.0, ang * static_cast<double>(k));
                Complex u = a[i + k];
                Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

inline std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

} // namespace detail

// Two-sided Fourier table c_n, -n_max <= n <= n_max.
struct FourierCoeffs {
    int n_max = 0;
    std::vector<Complex> c;     // index n + n_max

    FourierCoeffs() = default;
    explicit FourierCoeffs(int n) : n_max(n) {
        if (n < 1) fail("BadParam", "FourierCoeffs needs n_max >= 1");
        c.assign(2 * static_cast<std::size_t>(n) + 1, Complex{0.0, 0.0});
    }

    Complex coeff(int n) const {
        if (n < -n_max || n > n_max) return {0.0, 0.0};
        return c[static_cast<std::size_t>(n + n_max)];
    }

    void set(int n, Complex v) { c.at(static_cast<std::size_t>(n + n_max)) = v; }

    // sum c_n e^{in theta} = e^{-iN theta} * Horner in w = e^{i theta}.
    Complex eval(double theta) const {
        const Complex w = std::polar(1.0, theta);
        Complex acc{0.0, 0.0};
        for (std::size_t m = c.size(); m-- > 0;) acc = acc * w + c[m];
        return acc * std::polar(1.0, -n_max * theta);
    }

    Complex eval_derivative(double theta) const {
        const Complex w = std::polar(1.0, theta);
        Complex acc{0.0, 0.0};
        for (std::size_t m = c.size(); m-- > 0;) {
            const double n = static_cast<double>(m) - n_max;
            acc = acc * w + Complex{0.0, n} * c[m];
        }
        return acc * std::polar(1.0, -n_max * theta);
    }
};

// Piecewise-constant boundary data. Arc i carries values[i] on
// [jumps[i], jumps[i+1]) with the last arc wrapping to jumps[0] + 2 pi.
struct StepFunction {
    std::vector<double> jumps;
    std::vector<Complex> values;

    StepFunction(std::vector<double> jumps_in, std::vector<Complex> values_in)
        : jumps(std::move(jumps_in)), values(std::move(values_in)) {
        if (jumps.empty() || jumps.size() != values.size())
            fail("BadParam", "step function needs matching nonempty jumps/values");
        for (std::size_t i = 0; i < jumps.size(); ++i) {
            if (!(jumps[i] >= 0.0 && jumps[i] < kTwoPi))
                fail("BadParam", "step jumps must lie in [0, 2pi)");
            if (i > 0 && !(jumps[i] > jumps[i - 1]))
                fail("BadParam", "step jumps must be strictly increasing");
        }
    }

    double nearest_jump_distance(double theta) const {
        double t = normalize_angle(theta);
        double best = kTwoPi;
        for (double j : jumps) {
            double d = std::abs(t - j);
            best = std::min(best, std::min(d, kTwoPi - d));
        }
        return best;
    }

    Complex value_at(double theta) const {
        double t = normalize_angle(theta);
        std::size_t arc = arc_index(t);
        if (nearest_jump_distance(t) < 1e-12) {
            std::size_t prev = (arc + values.size() - 1) % values.size();
            // At the jump itself `arc` is the arc that starts there.
            return 0.5 * (values[prev] + values[arc]);
        }
        return values[arc];
    }

private:
    std::size_t arc_index(double t) const {
        if (t < jumps.front()) return jumps.size() - 1;   // wrapped tail arc
        std::size_t lo = 0;
        for (std::size_t i = 0; i < jumps.size(); ++i)
            if (jumps[i] <= t) lo = i;
        return lo;
    }
};

// Boundary data Phi on the unit circle in one of four forms.
class BoundaryFunction {
public:
    enum class Kind { ClosedForm, Fourier, UniformSamples, Step };

    static BoundaryFunction closed_form(std::function<Complex(double)> fn) {
        BoundaryFunction b;
        b.kind_ = Kind::ClosedForm;
        b.fn_ = std::move(fn);
        if (!b.fn_) fail("BadParam", "closed-form boundary needs a callable");
        return b;
    }

    static BoundaryFunction fourier(FourierCoeffs coeffs) {
        BoundaryFunction b;
        b.kind_ = Kind::Fourier;
        b.coeffs_ = std::move(coeffs);
        if (b.coeffs_.n_max < 1) fail("BadParam", "Fourier boundary needs n_max >= 1");
        return b;
    }

    // M equally spaced samples at theta_j = 2 pi j / M, M a power of two >= 8.
    // The trigonometric interpolant is fixed at construction; the shared
    // n = +-M/2 mode is split evenly so evaluation is single-valued.
    static BoundaryFunction uniform_samples(std::vector<Complex> samples) {
        BoundaryFunction b;
        b.kind_ = Kind::UniformSamples;
        const std::size_t m = samples.size();
        if (m < 8 || !detail::is_power_of_two(m))
            fail("BadParam", "uniform samples need a power-of-two count >= 8");
        b.samples_ = std::move(samples);
        std::vector<Complex> work = b.samples_;
        detail::fft_radix2(work, -1);
        const int half = static_cast<int>(m) / 2;
        b.coeffs_ = FourierCoeffs(half);
        for (int n = -half; n <= half; ++n) {
            std::size_t idx = static_cast<std::size_t>((n + static_cast<int>(m)) % static_cast<int>(m));
            Complex cn = work[idx] / static_cast<double>(m);
            if (n == half || n == -half) cn *= 0.5;
            b.coeffs_.set(n, cn);
        }
        return b;
    }

    static BoundaryFunction step(StepFunction s) {
        BoundaryFunction b;
        b.kind_ = Kind::Step;
        b.step_ = std::move(s);
        return b;
    }

    Kind kind() const { return kind_; }

    Complex value(double theta) const {
        switch (kind_) {
            case Kind::ClosedForm: return fn_(theta);           // unreduced on purpose
            case Kind::Fourier:
            case Kind::UniformSamples: return coeffs_.eval(theta);
            case Kind::Step: return step_.value_at(theta);
        }
        fail("BadParam", "corrupt boundary kind");
    }

    const FourierCoeffs& spectrum() const {
        if (kind_ != Kind::Fourier && kind_ != Kind::UniformSamples)
            fail("BadParam", "spectrum only stored for Fourier/UniformSamples data");
        return coeffs_;
    }

    const StepFunction& step_data() const {
        if (kind_ != Kind::Step) fail("BadParam", "not step data");
        return step_;
    }

    const std::vector<Complex>& samples() const {
        if (kind_ != Kind::UniformSamples) fail("BadParam", "not sampled data");
        return samples_;
    }

private:
    BoundaryFunction() : step_({0.0}, {Complex{0.0, 0.0}}) {}

    Kind kind_ = Kind::ClosedForm;
    std::function<Complex(double)> fn_;
    FourierCoeffs coeffs_;
    std::vector<Complex> samples_;
    StepFunction step_;
};

inline Complex eval_phi(const BoundaryFunction& phi, double theta) {
    return phi.value(theta);
}

struct BoundaryDerivative {
    enum class Kind { Finite, PlusInfinity, Undefined };
    Kind kind = Kind::Undefined;
    Complex value{0.0, 0.0};
    bool nonconvergent = false;     // quotients neither settled nor diverged

    static BoundaryDerivative finite(Complex v) { return {Kind::Finite, v, false}; }
    static BoundaryDerivative plus_infinity() { return {Kind::PlusInfinity, {}, false}; }
    static BoundaryDerivative undefined(bool nonconv) { return {Kind::Undefined, {}, nonconv}; }
};

// dPhi/dtheta at theta0. Spectral forms differentiate termwise; step data is 0
// off jumps and Undefined at a jump. Closed forms are probed numerically:
// a divergence scan on one-sided quotients runs first (central differences are
// blind to symmetric cusps like |theta - pi|^{1/2}), then order-4 Richardson
// extrapolation of central differences with settle tolerance 1e-8.
inline BoundaryDerivative phi_derivative(const BoundaryFunction& phi, double theta0) {
    using Kind = BoundaryFunction::Kind;
    switch (phi.kind()) {
        case Kind::Fourier:
        case Kind::UniformSamples:
            return BoundaryDerivative::finite(phi.spectrum().eval_derivative(theta0));
        case Kind::Step: {
            if (phi.step_data().nearest_jump_distance(theta0) < 1e-12)
                return BoundaryDerivative::undefined(false);
            return BoundaryDerivative::finite({0.0, 0.0});
        }
        case Kind::ClosedForm: break;
    }

    const Complex at0 = phi.value(theta0);
    if (!std::isfinite(at0.real()) || !std::isfinite(at0.imag()))
        return BoundaryDerivative::undefined(true);

    std::vector<double> quots;
    bool all_finite = true;
    for (int k = 4; k <= 20; ++k) {
        const double h = std::ldexp(1.0, -k);
        const Complex fp = phi.value(theta0 + h);
        const Complex fm = phi.value(theta0 - h);
        if (!std::isfinite(fp.real()) || !std::isfinite(fp.imag()) ||
            !std::isfinite(fm.real()) || !std::isfinite(fm.imag())) {
            all_finite = false;
            break;
        }
        quots.push_back(std::max(std::abs(fp - at0), std::abs(at0 - fm)) / h);
    }
    if (!all_finite) return BoundaryDerivative::undefined(true);
    if (quots.size() >= 7) {
        const std::size_t last = quots.size() - 1;
        bool increasing = true;
        for (std::size_t i = last - 6; i < last; ++i)
            if (!(quots[i + 1] > quots[i])) { increasing = false; break; }
        const double growth = quots[last] / std::max(quots[last - 6], 1e-300);
        if (increasing && (growth >= 2.5 || quots[last] > 1e8))
            return BoundaryDerivative::plus_infinity();
    }

    auto central = [&](double h) {
        return (phi.value(theta0 + h) - phi.value(theta0 - h)) / (2.0 * h);
    };
    std::vector<Complex> d;
    for (int j = 4; j <= 23; ++j) d.push_back(central(std::ldexp(1.0, -j)));
    Complex prev{0.0, 0.0};
    bool have_prev = false;
    for (std::size_t j = 0; j + 1 < d.size(); ++j) {
        const Complex r = (4.0 * d[j + 1] - d[j]) / 3.0;
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
            return BoundaryDerivative::undefined(true);
        if (have_prev && std::abs(r - prev) <= 1e-8 * (1.0 + std::abs(r)))
            return BoundaryDerivative::finite(r);
        prev = r;
        have_prev = true;
    }
    return BoundaryDerivative::undefined(true);
}

// c_n = (1/2pi) integral Phi(e^{i theta}) e^{-in theta} d theta for |n| <= n_max.
inline FourierCoeffs fourier_coefficients(const BoundaryFunction& phi, int n_max) {
    if (n_max < 1) fail("BadParam", "fourier_coefficients needs n_max >= 1");
    using Kind = BoundaryFunction::Kind;
    FourierCoeffs out(n_max);
    switch (phi.kind()) {
        case Kind::Fourier: {
            for (int n = -n_max; n <= n_max; ++n) out.set(n, phi.spectrum().coeff(n));
            return out;
        }
        case Kind::UniformSamples: {
            const int m = static_cast<int>(phi.samples().size());
            if (2 * n_max + 1 > m)
                fail("DegreeTooHigh", "sample count cannot resolve the requested degree");
            for (int n = -n_max; n <= n_max; ++n) out.set(n, phi.spectrum().coeff(n));
            return out;
        }
        case Kind::Step: {
            const StepFunction& s = phi.step_data();
            const std::size_t arcs = s.jumps.size();
            for (int n = -n_max; n <= n_max; ++n) {
                Complex acc{0.0, 0.0};
                for (std::size_t i = 0; i < arcs; ++i) {
                    const double a = s.jumps[i];
                    const double b = (i + 1 < arcs) ? s.jumps[i + 1] : s.jumps[0] + kTwoPi;
                    if (n == 0) {
                        acc += s.values[i] * (b - a);
                    } else {
                        const Complex in{0.0, static_cast<double>(n)};
                        acc += s.values[i] *
                               (std::exp(-in * a) - std::exp(-in * b)) / in;
                    }
                }
                out.set(n, acc / kTwoPi);
            }
            return out;
        }
        case Kind::ClosedForm: break;
    }
    const std::size_t m = detail::next_power_of_two(
        std::max<std::size_t>(2048, 4 * static_cast<std::size_t>(n_max)));
    std::vector<Complex> work(m);
    for (std::size_t j = 0; j < m; ++j)
        work[j] = phi.value(kTwoPi * static_cast<double>(j) / static_cast<double>(m));
    detail::fft_radix2(work, -1);
    for (int n = -n_max; n <= n_max; ++n) {
        std::size_t idx = static_cast<std::size_t>(
            (n + static_cast<int>(m)) % static_cast<int>(m));
        out.set(n, work[idx] / static_cast<double>(m));
    }
    return out;
}

// CSV format: header "theta,re,im", rows at theta_j = 2 pi j / M. The grid must
// be uniform to 1e-9 and M a power of two >= 8.
inline BoundaryFunction load_boundary_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("IoError", "cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) fail("EmptyInput", "no header in " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "theta,re,im") fail("BadFormat", "expected header theta,re,im");
    std::vector<double> thetas;
    std::vector<Complex> values;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        double t = 0.0, re = 0.0, im = 0.0;
        char c1 = 0, c2 = 0;
        if (!(row >> t >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
            fail("BadFormat", "bad CSV row: " + line);
        if (!std::isfinite(t) || !std::isfinite(re) || !std::isfinite(im))
            fail("BadFormat", "non-finite CSV entry: " + line);
        thetas.push_back(t);
        values.push_back({re, im});
    }
    if (values.empty()) fail("EmptyInput", "no data rows in " + path);
    const std::size_t m = values.size();
    if (m < 8 || !detail::is_power_of_two(m))
        fail("BadFormat", "row count must be a power of two >= 8");
    for (std::size_t j = 0; j < m; ++j) {
        const double expected = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
        if (std::abs(thetas[j] - expected) > 1e-9)
            fail("NonUniformGrid", "theta grid must be uniform 2 pi j / M");
    }
    return BoundaryFunction::uniform_samples(std::move(values));
}

} // namespace disklab
