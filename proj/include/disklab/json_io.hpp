#pragma once

#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "disklab/angular_limits.hpp"
#include "disklab/const_arg_paths.hpp"
#include "disklab/error.hpp"
#include "disklab/harmonic_map.hpp"
#include "disklab/zero_analysis.hpp"

namespace disklab {

using json = nlohmann::json;

namespace detail {

inline json num_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

inline json complex_pair(Complex z) {
    return json::array({num_or_null(z.real()), num_or_null(z.imag())});
}

inline Complex parse_complex_entry(const json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    if (j.is_object() && j.contains("re") && j.contains("im"))
        return {j["re"].get<double>(), j["im"].get<double>()};
    fail("BadFormat", std::string(what) + " entries must be numbers or [re, im] pairs");
}

} // namespace detail

// {"degree": N, "a": [[re,im] x (N+1)], "b": [[re,im] x N]}
// a holds powers 0..N of the analytic part, b holds powers 1..N of the
// co-analytic part (its constant term is always zero).
inline json map_to_json(const HarmonicMap& map) {
    if (map.form() != HarmonicMap::Form::Coefficients)
        fail("BadParam", "closed-form maps have no coefficient serialization");
    const int n = map.degree();
    json a = json::array();
    for (int k = 0; k <= n; ++k) a.push_back(detail::complex_pair(map.coeff_a(k)));
    json b = json::array();
    for (int k = 1; k <= n; ++k) b.push_back(detail::complex_pair(map.coeff_b(k)));
    return json{{"degree", n}, {"a", a}, {"b", b}};
}

inline HarmonicMap map_from_json(const json& j, const std::string& label = "json") {
    if (!j.is_object() || !j.contains("degree") || !j.contains("a") || !j.contains("b"))
        fail("BadFormat", "map object needs degree, a, b");
    if (!j["degree"].is_number_integer() || j["degree"].get<int>() < 0)
        fail("BadFormat", "degree must be a nonnegative integer");
    const int n = j["degree"].get<int>();
    const json& ja = j["a"];
    const json& jb = j["b"];
    if (!ja.is_array() || !jb.is_array()) fail("BadFormat", "a and b must be arrays");
    if (static_cast<int>(ja.size()) > n + 1) fail("BadFormat", "a has more than degree+1 entries");

    std::vector<Complex> a(static_cast<std::size_t>(n) + 1, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < ja.size(); ++k)
        a[k] = detail::parse_complex_entry(ja[k], "a");

    // b is stored from power 1, but input counting from power 0 with a zero
    // leading entry is accepted too.
    std::vector<Complex> b(static_cast<std::size_t>(n) + 1, Complex{0.0, 0.0});
    if (static_cast<int>(jb.size()) == n + 1) {
        for (std::size_t k = 0; k < jb.size(); ++k)
            b[k] = detail::parse_complex_entry(jb[k], "b");
    } else if (static_cast<int>(jb.size()) <= n) {
        for (std::size_t k = 0; k < jb.size(); ++k)
            b[k + 1] = detail::parse_complex_entry(jb[k], "b");
    } else {
        fail("BadFormat", "b has more than degree entries");
    }
    return HarmonicMap::from_coefficients(std::move(a), std::move(b), label);
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("IoError", "cannot open " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) fail("BadFormat", "invalid JSON in " + path);
    return j;
}

inline json limit_to_json(const LimitEstimate& est, Quantity q) {
    json j;
    j["quantity"] = quantity_name(q);
    j["status"] = status_name(est.status);
    if (est.status == LimitStatus::Converged || est.status == LimitStatus::Diverged)
        j["value"] = detail::complex_pair(est.value);
    else
        j["value"] = nullptr;
    j["tail_residual"] = detail::num_or_null(est.tail_residual);
    return j;
}

inline json report_to_json(const TheoremReport& r) {
    json j;
    j["theorem"] = r.theorem;
    j["theta0"] = r.theta0;
    j["stolz_alpha"] = r.stolz_alpha;
    j["k_min"] = r.k_min;
    j["k_max"] = r.k_max;
    j["tol"] = r.tol;
    j["alpha"] = r.alpha ? detail::num_or_null(*r.alpha) : json(nullptr);
    j["beta"] = r.beta ? detail::num_or_null(*r.beta) : json(nullptr);
    j["lambda"] = r.lambda ? detail::num_or_null(*r.lambda) : json(nullptr);
    j["gamma"] = r.gamma ? detail::complex_pair(*r.gamma) : json(nullptr);
    j["hypothesis_ok"] = r.hypothesis_ok;
    j["hypothesis_note"] = r.hypothesis_note;
    json rows = json::array();
    for (const SlopeResult& s : r.per_slope) {
        json row;
        row["slope"] = s.slope;
        row["quantity"] = quantity_name(s.quantity);
        row["status"] = status_name(s.status);
        row["converged"] = s.status == LimitStatus::Converged;
        const bool log_row = s.quantity == Quantity::LogHPrime ||
                             s.quantity == Quantity::LogGPrime ||
                             s.quantity == Quantity::FTheta;
        auto side = [&](const std::optional<Complex>& v) -> json {
            if (!v) return nullptr;
            if (log_row) return detail::complex_pair(*v);
            return detail::num_or_null(v->real());
        };
        row["lhs"] = side(s.lhs);
        row["rhs"] = side(s.rhs);
        row["residual"] = s.residual ? detail::num_or_null(*s.residual) : json(nullptr);
        row["tail_residual"] = detail::num_or_null(s.tail_residual);
        if (s.rhs_lambda_aware) {
            row["rhs_lambda_aware"] = detail::num_or_null(*s.rhs_lambda_aware);
            row["residual_lambda_aware"] =
                s.residual_lambda_aware ? detail::num_or_null(*s.residual_lambda_aware)
                                        : json(nullptr);
        }
        rows.push_back(row);
    }
    j["per_slope"] = rows;
    return j;
}

inline json report_to_json(const HPrimeBoundsReport& r) {
    json j;
    j["theorem"] = "T36b";
    j["theta0"] = r.theta0;
    j["alpha"] = r.alpha;
    j["eps"] = r.eps;
    j["m"] = detail::num_or_null(r.m);
    j["M"] = detail::num_or_null(r.big_m);
    j["lambda"] = detail::num_or_null(r.lambda);
    j["lambda_converged"] = r.lambda_converged;
    j["lambda_out_of_range"] = r.lambda_out_of_range;
    j["lower"] = detail::num_or_null(r.lower);
    j["upper"] = r.upper ? detail::num_or_null(*r.upper) : json(nullptr);
    j["violations"] = r.violations;
    j["points"] = r.points;
    j["holds"] = r.holds;
    return j;
}

inline json report_to_json(const ZeroCountReport& r) {
    json j;
    j["count"] = r.count;
    j["winding_residual"] = detail::num_or_null(r.winding_residual);
    j["stabilized"] = r.stabilized;
    j["degenerate"] = r.degenerate;
    json hist = json::array();
    for (const auto& [eps, n] : r.eps_history)
        hist.push_back(json{{"eps", eps}, {"count", n}});
    j["eps_history"] = hist;
    return j;
}

inline json report_to_json(const BranchCompareReport& r) {
    json j;
    j["branch"] = r.branch == PathBranch::ArgFPrimeConstant ? "arg_f_prime_constant"
                                                            : "general";
    j["r0"] = r.r0;
    j["r1"] = r.r1;
    j["steps"] = r.steps;
    j["max_abs_deviation"] = detail::num_or_null(r.max_abs_deviation);
    j["max_abs_psi"] = detail::num_or_null(r.max_abs_psi);
    j["smallangle_bound"] = detail::num_or_null(r.smallangle_bound);
    j["integrator_tol"] = detail::num_or_null(r.integrator_tol);
    j["model_error_dominant"] = r.model_error_dominant;
    return j;
}

} // namespace disklab
