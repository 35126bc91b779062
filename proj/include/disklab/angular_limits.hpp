#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "disklab/boundary.hpp"
#include "disklab/disk_geometry.hpp"
#include "disklab/harmonic_map.hpp"

namespace disklab {

enum class Quantity {
    ArgHPrime,
    LogHPrime,
    ArgGPrime,
    LogGPrime,
    ArgOmega,
    AbsOmega,
    ArgFPrime,
    FTheta,
};

inline const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::ArgHPrime: return "arg_h_prime";
        case Quantity::LogHPrime: return "log_h_prime";
        case Quantity::ArgGPrime: return "arg_g_prime";
        case Quantity::LogGPrime: return "log_g_prime";
        case Quantity::ArgOmega:  return "arg_omega";
        case Quantity::AbsOmega:  return "abs_omega";
        case Quantity::ArgFPrime: return "arg_f_prime";
        case Quantity::FTheta:    return "f_theta";
    }
    return "unknown";
}

enum class LimitStatus { Converged, Diverged, ZeroOnPath, Inconclusive };

inline const char* status_name(LimitStatus s) {
    switch (s) {
        case LimitStatus::Converged:    return "Converged";
        case LimitStatus::Diverged:     return "Diverged";
        case LimitStatus::ZeroOnPath:   return "ZeroOnPath";
        case LimitStatus::Inconclusive: return "Inconclusive";
    }
    return "unknown";
}

// Angle-valued quantities are compared mod pi throughout: a limit that only
// settles up to orientation of the tangent line is still a limit.
struct LimitEstimate {
    LimitStatus status = LimitStatus::Inconclusive;
    Complex value{0.0, 0.0};   // scalar quantities use the real part only
    double tail_residual = std::numeric_limits<double>::infinity();
    ApproachPath path;
};

namespace detail {

inline bool is_angle_quantity(Quantity q) {
    return q == Quantity::ArgHPrime || q == Quantity::ArgGPrime ||
           q == Quantity::ArgOmega || q == Quantity::ArgFPrime;
}

inline bool is_log_quantity(Quantity q) {
    return q == Quantity::LogHPrime || q == Quantity::LogGPrime;
}

// Last six magnitudes strictly increasing and at least doubling overall.
inline bool magnitudes_diverge(const std::vector<double>& mags) {
    const std::size_t n = mags.size();
    if (n < 6) return false;
    for (std::size_t i = n - 5; i < n; ++i)
        if (!(mags[i] > mags[i - 1])) return false;
    return mags[n - 1] >= 2.0 * mags[n - 6] && std::isfinite(mags[n - 6]);
}

inline double log_distance(Complex a, Complex b) {
    return std::max(std::abs(a.real() - b.real()),
                    mod_pi_distance(a.imag(), b.imag()));
}

} // namespace detail

inline LimitEstimate estimate_limit(const HarmonicMap& map, Quantity quantity,
                                    const ApproachPath& path, double tol) {
    if (path.points.empty()) fail("EmptyPath", "approach path has no points");
    if (!(tol > 0.0)) fail("BadParam", "tolerance must be positive");

    LimitEstimate est;
    est.path = path;

    const double tiny = 1e-280;
    std::vector<Complex> raw;
    raw.reserve(path.points.size());
    for (Complex z : path.points) {
        const MapJet jet = map.jet(z);
        switch (quantity) {
            case Quantity::ArgHPrime:
            case Quantity::LogHPrime:
                if (std::abs(jet.h_prime) < tiny) { est.status = LimitStatus::ZeroOnPath; return est; }
                raw.push_back(jet.h_prime);
                break;
            case Quantity::ArgGPrime:
            case Quantity::LogGPrime:
                if (std::abs(jet.g_prime) < tiny) { est.status = LimitStatus::ZeroOnPath; return est; }
                raw.push_back(jet.g_prime);
                break;
            case Quantity::ArgOmega:
                if (!jet.omega_defined || std::abs(jet.omega) < tiny) {
                    est.status = LimitStatus::ZeroOnPath;
                    return est;
                }
                raw.push_back(jet.omega);
                break;
            case Quantity::AbsOmega:
                // |omega| = 0 is an ordinary limit value; only an undefined
                // quotient (h' ~ 0) blocks the estimate.
                if (!jet.omega_defined) { est.status = LimitStatus::ZeroOnPath; return est; }
                raw.push_back(jet.omega);
                break;
            case Quantity::ArgFPrime: {
                const Complex fp = jet.h_prime + std::conj(jet.g_prime);
                if (std::abs(fp) < tiny) { est.status = LimitStatus::ZeroOnPath; return est; }
                raw.push_back(fp);
                break;
            }
            case Quantity::FTheta: {
                const Complex iz = Complex{0.0, 1.0} * z;
                raw.push_back(iz * jet.h_prime + std::conj(iz * jet.g_prime));
                break;
            }
        }
    }

    const std::size_t n = raw.size();
    std::vector<Complex> seq(n);
    std::vector<double> mags(n);
    bool check_divergence = true;

    if (detail::is_angle_quantity(quantity)) {
        const std::vector<double> w = unwrap_args(raw);
        for (std::size_t i = 0; i < n; ++i) {
            seq[i] = Complex{w[i], 0.0};
            mags[i] = std::abs(w[i]);
        }
        check_divergence = false;  // angles compare on the circle, not by size
    } else if (detail::is_log_quantity(quantity)) {
        const std::vector<double> w = unwrap_args(raw);
        for (std::size_t i = 0; i < n; ++i) {
            seq[i] = Complex{std::log(std::abs(raw[i])), w[i]};
            mags[i] = std::abs(seq[i]);
        }
    } else if (quantity == Quantity::AbsOmega) {
        for (std::size_t i = 0; i < n; ++i) {
            seq[i] = Complex{std::abs(raw[i]), 0.0};
            mags[i] = seq[i].real();
        }
    } else {  // FTheta
        for (std::size_t i = 0; i < n; ++i) {
            seq[i] = raw[i];
            mags[i] = std::abs(raw[i]);
        }
    }

    est.value = seq.back();

    if (check_divergence && detail::magnitudes_diverge(mags)) {
        est.status = LimitStatus::Diverged;
        est.tail_residual = std::numeric_limits<double>::infinity();
        return est;
    }

    const std::size_t tail = std::min<std::size_t>(3, n);
    double resid = 0.0;
    for (std::size_t i = n - tail; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double d;
            if (detail::is_angle_quantity(quantity))
                d = mod_pi_distance(seq[i].real(), seq[j].real());
            else if (detail::is_log_quantity(quantity))
                d = detail::log_distance(seq[i], seq[j]);
            else
                d = std::abs(seq[i] - seq[j]);
            resid = std::max(resid, d);
        }
    }
    est.tail_residual = resid;
    est.status = resid <= tol ? LimitStatus::Converged : LimitStatus::Inconclusive;
    return est;
}

enum class Section3Theorem { T31a, T31b, T31c, T31d, T32a, T32b, T32c, T33a, T33b, T33c, T33d, T36a };

inline const char* theorem_name(Section3Theorem t) {
    switch (t) {
        case Section3Theorem::T31a: return "T31a";
        case Section3Theorem::T31b: return "T31b";
        case Section3Theorem::T31c: return "T31c";
        case Section3Theorem::T31d: return "T31d";
        case Section3Theorem::T32a: return "T32a";
        case Section3Theorem::T32b: return "T32b";
        case Section3Theorem::T32c: return "T32c";
        case Section3Theorem::T33a: return "T33a";
        case Section3Theorem::T33b: return "T33b";
        case Section3Theorem::T33c: return "T33c";
        case Section3Theorem::T33d: return "T33d";
        case Section3Theorem::T36a: return "T36a";
    }
    return "unknown";
}

inline std::optional<Section3Theorem> parse_theorem(const std::string& s) {
    static const std::pair<const char*, Section3Theorem> table[] = {
        {"T31a", Section3Theorem::T31a}, {"T31b", Section3Theorem::T31b},
        {"T31c", Section3Theorem::T31c}, {"T31d", Section3Theorem::T31d},
        {"T32a", Section3Theorem::T32a}, {"T32b", Section3Theorem::T32b},
        {"T32c", Section3Theorem::T32c}, {"T33a", Section3Theorem::T33a},
        {"T33b", Section3Theorem::T33b}, {"T33c", Section3Theorem::T33c},
        {"T33d", Section3Theorem::T33d}, {"T36a", Section3Theorem::T36a},
    };
    for (const auto& [name, value] : table)
        if (s == name) return value;
    return std::nullopt;
}

struct SlopeResult {
    double slope = 0.0;
    Quantity quantity = Quantity::ArgHPrime;
    LimitStatus status = LimitStatus::Inconclusive;
    std::optional<Complex> lhs;      // scalar rows use the real part
    std::optional<Complex> rhs;
    std::optional<double> residual;
    double tail_residual = std::numeric_limits<double>::infinity();
    // T36a only: prediction that keeps the co-analytic term.
    std::optional<double> rhs_lambda_aware;
    std::optional<double> residual_lambda_aware;
};

struct TheoremReport {
    std::string theorem;
    double theta0 = 0.0;
    double stolz_alpha = 0.0;
    int k_min = 0;
    int k_max = 0;
    double tol = 0.0;
    std::optional<double> alpha;     // limit of arg(omega) when it converged
    std::optional<double> beta;      // same limit, under its T36 name
    std::optional<double> lambda;    // limit of |omega|
    std::optional<Complex> gamma;    // limit of f_theta
    std::vector<SlopeResult> per_slope;
    bool hypothesis_ok = true;
    std::string hypothesis_note;
};

struct VerifyOptions {
    double tol = 0.0;   // <= 0 selects a default by map form
    int k_min = 6;
    int k_max = 40;
};

namespace detail {

inline double default_tol(const HarmonicMap& map) {
    return map.form() == HarmonicMap::Form::ClosedForm ? 1e-6 : 1e-3;
}

inline void append_note(std::string& notes, const std::string& line) {
    if (!notes.empty()) notes += "; ";
    notes += line;
}

inline double scalar_residual(double lhs, double rhs) {
    return mod_pi_distance(lhs, rhs);
}

// Log claims match when real parts agree and imaginary parts agree mod pi.
inline double log_claim_residual(Complex lhs, Complex rhs) {
    return log_distance(lhs, rhs);
}

} // namespace detail

inline TheoremReport verify_section3(const HarmonicMap& map, Section3Theorem theorem,
                                     double theta0, const StolzAngle& stolz,
                                     const std::vector<double>& slopes,
                                     const VerifyOptions& opts = {}) {
    if (slopes.empty()) fail("BadParam", "need at least one slope");
    if (mod_pi_distance(normalize_angle(theta0), stolz.theta0) > 1e-9 &&
        std::abs(normalize_angle(theta0) - stolz.theta0) > 1e-9)
        fail("BadParam", "theta0 disagrees with the Stolz angle vertex");

    TheoremReport report;
    report.theorem = theorem_name(theorem);
    report.theta0 = stolz.theta0;
    report.stolz_alpha = stolz.alpha;
    report.k_min = opts.k_min;
    report.k_max = opts.k_max;
    report.tol = opts.tol > 0.0 ? opts.tol : detail::default_tol(map);
    const double tol = report.tol;

    const bool is_case_two =
        theorem == Section3Theorem::T31c || theorem == Section3Theorem::T31d ||
        theorem == Section3Theorem::T32c || theorem == Section3Theorem::T33c ||
        theorem == Section3Theorem::T33d;
    const bool needs_nonzero_alpha =
        theorem == Section3Theorem::T31a || theorem == Section3Theorem::T31b ||
        theorem == Section3Theorem::T32a || theorem == Section3Theorem::T32b;
    const bool needs_gamma =
        theorem == Section3Theorem::T32a || theorem == Section3Theorem::T32b ||
        theorem == Section3Theorem::T32c || theorem == Section3Theorem::T33a ||
        theorem == Section3Theorem::T33b || theorem == Section3Theorem::T33c ||
        theorem == Section3Theorem::T33d;
    const bool needs_lambda =
        theorem == Section3Theorem::T31a || theorem == Section3Theorem::T31b ||
        theorem == Section3Theorem::T31c || theorem == Section3Theorem::T31d ||
        theorem == Section3Theorem::T33a || theorem == Section3Theorem::T33b ||
        theorem == Section3Theorem::T33c || theorem == Section3Theorem::T33d;

    const bool is_t31 =
        theorem == Section3Theorem::T31a || theorem == Section3Theorem::T31b ||
        theorem == Section3Theorem::T31c || theorem == Section3Theorem::T31d;
    if (is_t31) {
        if (map.boundary() != nullptr) {
            const BoundaryDerivative d = phi_derivative(*map.boundary(), stolz.theta0);
            if (d.kind != BoundaryDerivative::Kind::Finite || std::abs(d.value) > 1e-6) {
                report.hypothesis_ok = false;
                detail::append_note(report.hypothesis_note,
                                    "dPhi/dtheta at theta0 is not zero");
            }
        } else {
            detail::append_note(report.hypothesis_note,
                                "no boundary data attached; dPhi/dtheta unchecked");
        }
    }

    const double theta = stolz.theta0;
    bool alpha_recorded = false, lambda_recorded = false, gamma_recorded = false;

    for (double slope : slopes) {
        const ApproachPath path = make_approach_path(stolz, slope, opts.k_min, opts.k_max);

        const LimitEstimate arg_omega = estimate_limit(map, Quantity::ArgOmega, path, tol);
        LimitEstimate abs_omega;
        if (needs_lambda || theorem == Section3Theorem::T36a)
            abs_omega = estimate_limit(map, Quantity::AbsOmega, path, tol);
        LimitEstimate ftheta;
        if (needs_gamma)
            ftheta = estimate_limit(map, Quantity::FTheta, path, tol);

        const bool have_alpha = arg_omega.status == LimitStatus::Converged;
        const double alpha = have_alpha ? arg_omega.value.real() : 0.0;
        const bool have_lambda = abs_omega.status == LimitStatus::Converged;
        const double lambda = have_lambda ? abs_omega.value.real() : 0.0;
        const bool have_gamma = ftheta.status == LimitStatus::Converged;
        const Complex gamma = have_gamma ? ftheta.value : Complex{0.0, 0.0};

        if (have_alpha && !alpha_recorded) {
            report.alpha = alpha;
            if (theorem == Section3Theorem::T36a) report.beta = alpha;
            alpha_recorded = true;
        }
        if (have_lambda && !lambda_recorded) { report.lambda = lambda; lambda_recorded = true; }
        if (needs_gamma && have_gamma && !gamma_recorded) { report.gamma = gamma; gamma_recorded = true; }

        bool hypotheses_met = true;
        if (!have_alpha) {
            hypotheses_met = false;
            detail::append_note(report.hypothesis_note,
                                "arg(omega) did not converge (" +
                                    std::string(status_name(arg_omega.status)) +
                                    ") at slope " + std::to_string(slope));
        } else if (needs_nonzero_alpha && std::abs(principal_angle(alpha)) <= 1e-4) {
            hypotheses_met = false;
            detail::append_note(report.hypothesis_note, "arg(omega) limit is zero mod 2pi");
        } else if (is_case_two && std::abs(principal_angle(alpha)) > 1e-4) {
            hypotheses_met = false;
            detail::append_note(report.hypothesis_note, "arg(omega) limit is not zero");
        }
        if (needs_lambda && !have_lambda) {
            hypotheses_met = false;
            detail::append_note(report.hypothesis_note,
                                "|omega| did not converge at slope " + std::to_string(slope));
        }
        if (needs_gamma && (!have_gamma || std::abs(gamma) <= 1e-6)) {
            hypotheses_met = false;
            detail::append_note(report.hypothesis_note,
                                have_gamma ? "f_theta limit is zero"
                                           : "f_theta did not converge at slope " +
                                                 std::to_string(slope));
        }
        if (!hypotheses_met) report.hypothesis_ok = false;

        auto push_row = [&](Quantity q, const LimitEstimate& est,
                            std::optional<Complex> rhs, bool log_row) {
            SlopeResult row;
            row.slope = slope;
            row.quantity = q;
            row.tail_residual = est.tail_residual;
            row.status = !hypotheses_met && est.status == LimitStatus::Converged
                             ? LimitStatus::Inconclusive
                             : est.status;
            if (est.status == LimitStatus::Converged) row.lhs = est.value;
            if (hypotheses_met) row.rhs = rhs;
            if (row.lhs && row.rhs) {
                row.residual = log_row
                                   ? detail::log_claim_residual(*row.lhs, *row.rhs)
                                   : detail::scalar_residual(row.lhs->real(), row.rhs->real());
            }
            report.per_slope.push_back(row);
            return report.per_slope.size() - 1;
        };

        const bool lambda_positive = have_lambda && lambda > 1e-12;
        const double log_lambda = lambda_positive ? std::log(lambda) : 0.0;
        const bool gamma_positive = have_gamma && std::abs(gamma) > 1e-12;
        const double log_abs_gamma = gamma_positive ? std::log(std::abs(gamma)) : 0.0;

        switch (theorem) {
            case Section3Theorem::T31a: {
                const LimitEstimate lhs = estimate_limit(map, Quantity::LogHPrime, path, tol);
                std::optional<Complex> rhs;
                if (lambda_positive) rhs = Complex{0.5 * log_lambda, -(theta + alpha / 2.0)};
                push_row(Quantity::LogHPrime, lhs, rhs, true);
                break;
            }
            case Section3Theorem::T31b: {
                const LimitEstimate lhs = estimate_limit(map, Quantity::LogGPrime, path, tol);
                std::optional<Complex> rhs;
                if (lambda_positive) rhs = Complex{1.5 * log_lambda, alpha / 2.0 - theta};
                push_row(Quantity::LogGPrime, lhs, rhs, true);
                break;
            }
            case Section3Theorem::T31c: {
                const LimitEstimate lhs = estimate_limit(map, Quantity::LogHPrime, path, tol);
                std::optional<Complex> rhs;
                if (lambda_positive) rhs = Complex{0.5 * log_lambda, -theta};
                push_row(Quantity::LogHPrime, lhs, rhs, true);
                break;
            }
            case Section3Theorem::T31d: {
                const LimitEstimate lhs = estimate_limit(map, Quantity::LogGPrime, path, tol);
                std::optional<Complex> rhs;
                if (lambda_positive) rhs = Complex{1.5 * log_lambda, -theta};
                push_row(Quantity::LogGPrime, lhs, rhs, true);
                break;
            }
            case Section3Theorem::T32a: {
                const LimitEstimate lhs = estimate_limit(map, Quantity::ArgHPrime, path, tol);
                push_row(Quantity::ArgHPrime, lhs,
                         Complex{kPi / 4.0 - alpha / 2.0 - theta, 0.0}, false);
                break;
            }
            case Section3Theorem::T32b: {
                const LimitEstimate lhs = estimate_limit(map, Quantity::ArgGPrime, path, tol);
                push_row(Quantity::ArgGPrime, lhs,
                         Complex{kPi / 4.0 + alpha / 2.0 - theta, 0.0}, false);
                break;
            }
            case Section3Theorem::T32c: {
                const Complex rhs{kPi / 4.0 - theta, 0.0};
                const LimitEstimate lh = estimate_limit(map, Quantity::ArgHPrime, path, tol);
                push_row(Quantity::ArgHPrime, lh, rhs, false);
                const LimitEstimate lg = estimate_limit(map, Quantity::ArgGPrime, path, tol);
                push_row(Quantity::ArgGPrime, lg, rhs, false);
                break;
            }
            case Section3Theorem::T33a: {
                const LimitEstimate lhs = estimate_limit(map, Quantity::LogHPrime, path, tol);
                std::optional<Complex> rhs;
                if (lambda_positive && gamma_positive)
                    rhs = Complex{0.5 * (log_abs_gamma - log_lambda) + kPi / 4.0,
                                  -theta - alpha / 2.0};
                push_row(Quantity::LogHPrime, lhs, rhs, true);
                break;
            }
            case Section3Theorem::T33b: {
                const LimitEstimate lhs = estimate_limit(map, Quantity::LogGPrime, path, tol);
                std::optional<Complex> rhs;
                if (lambda_positive && gamma_positive)
                    rhs = Complex{0.5 * (log_abs_gamma + log_lambda) + kPi / 4.0,
                                  alpha / 2.0 - theta};
                push_row(Quantity::LogGPrime, lhs, rhs, true);
                break;
            }
            case Section3Theorem::T33c: {
                const LimitEstimate lhs = estimate_limit(map, Quantity::LogHPrime, path, tol);
                std::optional<Complex> rhs;
                if (lambda_positive && gamma_positive)
                    rhs = Complex{0.5 * (log_abs_gamma - log_lambda) + kPi / 4.0, -theta};
                push_row(Quantity::LogHPrime, lhs, rhs, true);
                break;
            }
            case Section3Theorem::T33d: {
                const LimitEstimate lhs = estimate_limit(map, Quantity::LogGPrime, path, tol);
                std::optional<Complex> rhs;
                if (lambda_positive && gamma_positive)
                    rhs = Complex{0.5 * (log_abs_gamma + log_lambda) + kPi / 4.0, -theta};
                push_row(Quantity::LogGPrime, lhs, rhs, true);
                break;
            }
            case Section3Theorem::T36a: {
                const LimitEstimate lhs = estimate_limit(map, Quantity::ArgFPrime, path, tol);
                const std::size_t idx =
                    push_row(Quantity::ArgFPrime, lhs, Complex{-alpha / 2.0, 0.0}, false);
                // Keeping the conj(g') term: arg f' -> A + arg(1 + lambda e^{-i(2A+beta)})
                // with A the arg(h') limit. Collapses to -beta/2 only as lambda -> 1.
                const LimitEstimate argh = estimate_limit(map, Quantity::ArgHPrime, path, tol);
                SlopeResult& row = report.per_slope[idx];
                if (hypotheses_met && have_lambda &&
                    argh.status == LimitStatus::Converged) {
                    const double a_lim = argh.value.real();
                    const Complex inner =
                        1.0 + lambda * std::exp(Complex{0.0, -(2.0 * a_lim + alpha)});
                    if (std::abs(inner) > 1e-12) {
                        row.rhs_lambda_aware = a_lim + std::arg(inner);
                        if (row.lhs)
                            row.residual_lambda_aware =
                                mod_pi_distance(row.lhs->real(), *row.rhs_lambda_aware);
                    }
                }
                break;
            }
        }
    }
    return report;
}

// Radial-limit check of f_theta against dPhi/dtheta.
inline TheoremReport verify_t22(const HarmonicMap& map, const BoundaryFunction& phi,
                                double theta0, const StolzAngle& stolz,
                                const std::vector<double>& slopes,
                                const VerifyOptions& opts = {}) {
    if (slopes.empty()) fail("BadParam", "need at least one slope");
    TheoremReport report;
    report.theorem = "T22";
    report.theta0 = stolz.theta0;
    report.stolz_alpha = stolz.alpha;
    report.k_min = opts.k_min;
    report.k_max = opts.k_max;
    report.tol = opts.tol > 0.0 ? opts.tol : detail::default_tol(map);
    (void)theta0;

    const BoundaryDerivative d = phi_derivative(phi, stolz.theta0);
    if (d.kind == BoundaryDerivative::Kind::Undefined) {
        report.hypothesis_ok = false;
        detail::append_note(report.hypothesis_note,
                            d.nonconvergent ? "dPhi/dtheta estimate did not converge"
                                            : "dPhi/dtheta is undefined at theta0");
    }

    for (double slope : slopes) {
        const ApproachPath path = make_approach_path(stolz, slope, opts.k_min, opts.k_max);
        const LimitEstimate est = estimate_limit(map, Quantity::FTheta, path, report.tol);

        SlopeResult row;
        row.slope = slope;
        row.quantity = Quantity::FTheta;
        row.tail_residual = est.tail_residual;
        row.status = est.status;

        if (d.kind == BoundaryDerivative::Kind::Finite) {
            if (est.status == LimitStatus::Converged) row.lhs = est.value;
            row.rhs = d.value;
            if (row.lhs) row.residual = std::abs(*row.lhs - *row.rhs);
        } else if (d.kind == BoundaryDerivative::Kind::PlusInfinity) {
            // Expect |f_theta| to blow up along the path: watch it cross a
            // fixed ladder of gates in order.
            std::vector<double> mags;
            mags.reserve(path.points.size());
            for (Complex z : path.points) mags.push_back(std::abs(map.f_theta(z)));
            std::size_t gate = 0;
            const double gates[] = {10.0, 100.0, 1000.0};
            for (double m : mags)
                if (gate < 3 && m > gates[gate]) ++gate;
            row.lhs = Complex{mags.back(), 0.0};
            row.status = (gate == 3 && mags.back() > 1000.0) ? LimitStatus::Diverged
                                                             : LimitStatus::Inconclusive;
        } else {
            row.status = LimitStatus::Inconclusive;
        }
        report.per_slope.push_back(row);
    }
    return report;
}

struct HPrimeBoundsReport {
    double theta0 = 0.0;
    double alpha = 0.0;
    double eps = 0.0;
    double m = 0.0;                         // min |h'| over the truncated region grid
    double big_m = 0.0;                     // max |h'| over the same grid
    double lambda = 0.0;
    bool lambda_converged = false;
    bool lambda_out_of_range = false;       // lambda >= 1 makes M/(1-lambda) empty
    double lower = 0.0;                     // m/2
    std::optional<double> upper;            // M/(1-lambda) when lambda < 1
    int violations = 0;
    int points = 0;
    bool holds = false;
};

inline HPrimeBoundsReport verify_hprime_bounds(const HarmonicMap& map,
                                               const StolzAngle& stolz, double eps,
                                               int n_r = 24, int n_u = 48) {
    if (!(eps > 0.0 && eps < 0.5)) fail("BadEps", "eps must be in (0, 0.5)");
    if (n_r < 2 || n_u < 2) fail("BadParam", "grid needs at least 2x2 points");
    if (!(stolz.alpha > 1.0)) fail("BadParam", "Stolz angle is empty for alpha <= 1");

    HPrimeBoundsReport report;
    report.theta0 = stolz.theta0;
    report.alpha = stolz.alpha;
    report.eps = eps;

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n_r) * n_u);
    for (int i = 0; i < n_r; ++i) {
        const double r = (1.0 - eps) * (i + 1) / n_r;
        const double a2 = stolz.alpha * stolz.alpha;
        const double cos_umax = (1.0 + r * r - a2 * (1.0 - r) * (1.0 - r)) / (2.0 * r);
        if (cos_umax > 1.0) continue;
        const double u_max = std::acos(std::clamp(cos_umax, -1.0, 1.0));
        for (int j = 0; j < n_u; ++j) {
            const double u = -u_max + 2.0 * u_max * j / (n_u - 1);
            values.push_back(std::abs(map.h_prime(std::polar(r, stolz.theta0 + u))));
        }
    }
    if (values.empty()) fail("BadParam", "truncated region contained no grid points");
    report.points = static_cast<int>(values.size());
    report.m = *std::min_element(values.begin(), values.end());
    report.big_m = *std::max_element(values.begin(), values.end());

    const ApproachPath radial = make_approach_path(stolz, 0.0);
    const LimitEstimate lam = estimate_limit(map, Quantity::AbsOmega, radial,
                                             detail::default_tol(map));
    report.lambda_converged = lam.status == LimitStatus::Converged;
    report.lambda = lam.value.real();
    report.lambda_out_of_range = !(report.lambda < 1.0);

    report.lower = report.m / 2.0;
    if (!report.lambda_out_of_range)
        report.upper = report.big_m / (1.0 - report.lambda);

    for (double v : values) {
        if (v < report.lower - 1e-12) ++report.violations;
        else if (report.upper && v > *report.upper + 1e-12) ++report.violations;
    }
    report.holds = report.violations == 0 && !report.lambda_out_of_range &&
                   report.lambda_converged;
    return report;
}

} // namespace disklab
