#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "disklab/disklab.hpp"

namespace disklab {

namespace cli_detail {

// Angles are radians by default; a deg: prefix switches to degrees.
inline double parse_angle(const std::string& s) {
    if (s.rfind("deg:", 0) == 0)
        return detail::parse_double_strict(s.substr(4), "angle") * kPi / 180.0;
    return detail::parse_double_strict(s, "angle");
}

inline std::vector<double> parse_double_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(',', pos);
        if (next == std::string::npos) next = s.size();
        out.push_back(detail::parse_double_strict(s.substr(pos, next - pos), what));
        pos = next + 1;
    }
    if (out.empty()) fail("BadFormat", std::string(what) + " list is empty");
    return out;
}

inline void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail("IoError", "cannot open " + out_path + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) fail("IoError", "write failed for " + out_path);
}

inline std::string csv_row(double r, double theta) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", r, theta);
    return buf;
}

} // namespace cli_detail

inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"boundary behavior toolkit for planar harmonic maps"};
    app.require_subcommand(1);

    // decompose
    auto* dec = app.add_subcommand("decompose", "split boundary samples into a coefficient map");
    std::string dec_boundary, dec_out;
    int dec_degree = 256;
    dec->add_option("--boundary", dec_boundary, "CSV of uniform boundary samples")->required();
    dec->add_option("--degree", dec_degree, "truncation degree")->capture_default_str();
    dec->add_option("--out", dec_out, "output file (default stdout)");

    // eval
    auto* ev = app.add_subcommand("eval", "evaluate a map and its first-order data at a point");
    std::string ev_map, ev_z, ev_out;
    ev->add_option("--map", ev_map, "map spec (shear:k=, square, poly:, boundary:, json:)")->required();
    ev->add_option("--z", ev_z, "point as re,im")->required();
    ev->add_option("--out", ev_out, "output file (default stdout)");

    // verify
    auto* ver = app.add_subcommand("verify", "check a boundary-limit claim along approach paths");
    std::string ver_map, ver_theorem, ver_theta0 = "0", ver_slopes = "-1,0,1";
    std::string ver_boundary, ver_out;
    double ver_alpha = 2.0, ver_tol = 0.0, ver_eps = 1e-3;
    int ver_kmin = 6, ver_kmax = 40;
    bool ver_strict = false;
    ver->add_option("--map", ver_map, "map spec")->required();
    ver->add_option("--theorem", ver_theorem,
                    "T31a..T31d, T32a..T32c, T33a..T33d, T36a, T36b, T22")->required();
    ver->add_option("--theta0", ver_theta0, "vertex angle (radians, or deg:)")->capture_default_str();
    ver->add_option("--alpha", ver_alpha, "Stolz angle opening")->capture_default_str();
    ver->add_option("--slopes", ver_slopes, "comma list of path slopes")->capture_default_str();
    ver->add_option("--tol", ver_tol, "convergence tolerance (0 = auto)")->capture_default_str();
    ver->add_option("--kmin", ver_kmin, "first path exponent")->capture_default_str();
    ver->add_option("--kmax", ver_kmax, "last path exponent")->capture_default_str();
    ver->add_option("--eps", ver_eps, "truncation for T36b")->capture_default_str();
    ver->add_option("--boundary", ver_boundary, "CSV boundary data to attach");
    ver->add_flag("--strict", ver_strict, "exit 2 when hypotheses are unmet");
    ver->add_option("--out", ver_out, "output file (default stdout)");

    // zeros
    auto* ze = app.add_subcommand("zeros", "count dilatation zeros or scan for f' zeros");
    std::string ze_map, ze_stolz, ze_ladder = "0.3,0.1,0.03", ze_out;
    int ze_nside = 96;
    double ze_cell = 0.01, ze_rmax = 0.95;
    bool ze_fprime = false;
    ze->add_option("--map", ze_map, "map spec")->required();
    ze->add_option("--stolz", ze_stolz, "sector as theta0:alpha (radians)");
    ze->add_option("--ladder", ze_ladder, "decreasing truncation levels")->capture_default_str();
    ze->add_option("--nside", ze_nside, "contour resolution")->capture_default_str();
    ze->add_flag("--fprime-scan", ze_fprime, "grid scan for zeros of f' instead");
    ze->add_option("--cell", ze_cell, "scan cell size")->capture_default_str();
    ze->add_option("--rmax", ze_rmax, "scan disk radius")->capture_default_str();
    ze->add_option("--out", ze_out, "output file (default stdout)");

    // path
    auto* pa = app.add_subcommand("path", "constant-argument curves: closed form, ODE, or both");
    std::string pa_branch = "general", pa_mode = "closed", pa_out;
    double pa_a = 0.0, pa_c = 0.0, pa_theta0 = 0.0, pa_phi = 0.0;
    double pa_r0 = 0.5, pa_r1 = 0.9;
    int pa_steps = 1000;
    std::optional<double> pa_theta_init;
    pa->add_option("--branch", pa_branch, "const (arg f' constant) or general")->capture_default_str();
    pa->add_option("--a", pa_a, "phi(r) = theta0 + a/r coefficient")->capture_default_str();
    pa->add_option("--c", pa_c, "first integral value")->capture_default_str();
    pa->add_option("--theta0", pa_theta0, "const branch vertex angle")->capture_default_str();
    pa->add_option("--phi", pa_phi, "general branch constant phi")->capture_default_str();
    pa->add_option("--r0", pa_r0, "start radius")->capture_default_str();
    pa->add_option("--r1", pa_r1, "end radius")->capture_default_str();
    pa->add_option("--steps", pa_steps, "integration steps")->capture_default_str();
    pa->add_option("--theta-init", pa_theta_init, "ODE initial theta (default: closed form at r0)");
    pa->add_option("--mode", pa_mode, "closed, ode, or compare")->capture_default_str();
    pa->add_option("--out", pa_out, "output file (default stdout)");

    // render
    auto* re = app.add_subcommand("render", "SVG of the image of a polar grid");
    std::string re_map, re_grid = "8x16", re_of = "f", re_out;
    double re_rmax = 0.99;
    int re_samples = 512;
    re->add_option("--map", re_map, "map spec")->required();
    re->add_option("--grid", re_grid, "circles x rays, like 8x16")->capture_default_str();
    re->add_option("--rmax", re_rmax, "outermost radius")->capture_default_str();
    re->add_option("--samples", re_samples, "samples per curve")->capture_default_str();
    re->add_option("--of", re_of, "render image under f or omega")->capture_default_str();
    re->add_option("--out", re_out, "output file (default stdout)");

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (dec->parsed()) {
            const BoundaryFunction phi = load_boundary_csv(dec_boundary);
            const HarmonicMap map = decompose(phi, dec_degree);
            cli_detail::write_output(map_to_json(map).dump(2) + "\n", dec_out);
            return 0;
        }

        if (ev->parsed()) {
            const HarmonicMap map = parse_map_spec(ev_map);
            const std::vector<double> parts =
                cli_detail::parse_double_list(ev_z, "z");
            if (parts.size() != 2) fail("BadFormat", "--z needs exactly re,im");
            const Complex z{parts[0], parts[1]};
            const MapJet jet = map.jet(z);
            json j;
            j["z"] = detail::complex_pair(z);
            j["f"] = detail::complex_pair(jet.f);
            j["h_prime"] = detail::complex_pair(jet.h_prime);
            j["g_prime"] = detail::complex_pair(jet.g_prime);
            j["omega"] = jet.omega_defined ? detail::complex_pair(jet.omega) : json(nullptr);
            j["omega_defined"] = jet.omega_defined;
            j["jacobian"] = detail::num_or_null(jet.jacobian);
            cli_detail::write_output(j.dump(2) + "\n", ev_out);
            return 0;
        }

        if (ver->parsed()) {
            HarmonicMap map = parse_map_spec(ver_map);
            if (!ver_boundary.empty())
                map.attach_boundary(
                    std::make_shared<BoundaryFunction>(load_boundary_csv(ver_boundary)));
            const double theta0 = cli_detail::parse_angle(ver_theta0);
            const StolzAngle stolz{theta0, ver_alpha};
            const std::vector<double> slopes =
                cli_detail::parse_double_list(ver_slopes, "slopes");
            VerifyOptions opts;
            opts.tol = ver_tol;
            opts.k_min = ver_kmin;
            opts.k_max = ver_kmax;

            bool hypothesis_ok = true;
            json j;
            if (ver_theorem == "T36b") {
                const HPrimeBoundsReport report = verify_hprime_bounds(map, stolz, ver_eps);
                hypothesis_ok = report.holds;
                j = report_to_json(report);
            } else if (ver_theorem == "T22") {
                const BoundaryFunction* phi = map.boundary();
                if (phi == nullptr)
                    fail("BadParam", "T22 needs boundary data (--boundary or a map that carries it)");
                const TheoremReport report = verify_t22(map, *phi, theta0, stolz, slopes, opts);
                hypothesis_ok = report.hypothesis_ok;
                j = report_to_json(report);
            } else {
                const std::optional<Section3Theorem> thm = parse_theorem(ver_theorem);
                if (!thm) fail("BadParam", "unknown theorem '" + ver_theorem + "'");
                const TheoremReport report =
                    verify_section3(map, *thm, theta0, stolz, slopes, opts);
                hypothesis_ok = report.hypothesis_ok;
                j = report_to_json(report);
            }
            cli_detail::write_output(j.dump(2) + "\n", ver_out);
            return ver_strict && !hypothesis_ok ? 2 : 0;
        }

        if (ze->parsed()) {
            const HarmonicMap map = parse_map_spec(ze_map);
            if (ze_stolz.empty() && !ze_fprime)
                fail("BadParam", "zeros needs --stolz theta0:alpha or --fprime-scan");
            json j;
            j["map"] = ze_map;
            j["stolz"] = nullptr;
            j["ladder"] = nullptr;
            j["counts"] = nullptr;
            j["stabilized"] = nullptr;
            j["fprime_zeros"] = nullptr;
            if (!ze_stolz.empty()) {
                const std::size_t colon = ze_stolz.find(':');
                if (colon == std::string::npos)
                    fail("BadFormat", "--stolz must look like theta0:alpha");
                const double t0 =
                    detail::parse_double_strict(ze_stolz.substr(0, colon), "stolz theta0");
                const double al =
                    detail::parse_double_strict(ze_stolz.substr(colon + 1), "stolz alpha");
                const std::vector<double> ladder =
                    cli_detail::parse_double_list(ze_ladder, "ladder");
                const ZeroCountReport report =
                    count_dilatation_zeros(map, StolzAngle{t0, al}, ladder, ze_nside);
                j["stolz"] = json{{"theta0", normalize_angle(t0)}, {"alpha", al}};
                j["ladder"] = ladder;
                json counts = json::array();
                for (const auto& [eps, n] : report.eps_history) counts.push_back(n);
                j["counts"] = counts;
                j["stabilized"] = report.stabilized;
                j["degenerate"] = report.degenerate;
                j["winding_residual"] = detail::num_or_null(report.winding_residual);
            }
            if (ze_fprime) {
                auto fp = [&map](Complex z) {
                    return map.h_prime(z) + std::conj(map.g_prime(z));
                };
                const std::vector<Complex> zeros =
                    grid_zero_scan(fp, ScanRegion::disk({0.0, 0.0}, ze_rmax), ze_cell);
                json arr = json::array();
                for (Complex z : zeros) arr.push_back(detail::complex_pair(z));
                j["fprime_zeros"] = arr;
            }
            cli_detail::write_output(j.dump(2) + "\n", ze_out);
            return 0;
        }

        if (pa->parsed()) {
            PathParams params;
            if (pa_branch == "const") params.branch = PathBranch::ArgFPrimeConstant;
            else if (pa_branch == "general") params.branch = PathBranch::General;
            else fail("BadParam", "--branch must be const or general");
            params.a = pa_a;
            params.c = pa_c;
            params.theta0 = pa_theta0;
            params.phi_value = pa_phi;

            if (pa_mode == "closed") {
                if (pa_steps < 1) fail("BadParam", "need at least one step");
                std::string csv = "r,theta\n";
                for (int i = 0; i <= pa_steps; ++i) {
                    const double r = pa_r0 + (pa_r1 - pa_r0) * i / pa_steps;
                    csv += cli_detail::csv_row(r, theta_closed_form(params, r));
                }
                cli_detail::write_output(csv, pa_out);
            } else if (pa_mode == "ode") {
                const double theta_init =
                    pa_theta_init ? *pa_theta_init : theta_closed_form(params, pa_r0);
                auto phi = [&params](double r) { return phi_of_r(params, r); };
                const std::vector<OdeSample> samples =
                    theta_ode(phi, theta_init, pa_r0, pa_r1, pa_steps);
                std::string csv = "r,theta\n";
                for (const OdeSample& s : samples) csv += cli_detail::csv_row(s.r, s.theta);
                cli_detail::write_output(csv, pa_out);
            } else if (pa_mode == "compare") {
                const BranchCompareReport report =
                    compare_branches(params, pa_r0, pa_r1, pa_steps);
                cli_detail::write_output(report_to_json(report).dump(2) + "\n", pa_out);
            } else {
                fail("BadParam", "--mode must be closed, ode, or compare");
            }
            return 0;
        }

        if (re->parsed()) {
            const HarmonicMap map = parse_map_spec(re_map);
            const std::size_t x = re_grid.find('x');
            if (x == std::string::npos) fail("BadFormat", "--grid must look like 8x16");
            RenderSpec spec;
            const double radii = detail::parse_double_strict(re_grid.substr(0, x), "grid radii");
            const double rays = detail::parse_double_strict(re_grid.substr(x + 1), "grid rays");
            if (radii < 2 || rays < 2 || radii != std::floor(radii) || rays != std::floor(rays))
                fail("BadFormat", "--grid needs integers >= 2");
            spec.n_radii = static_cast<int>(radii);
            spec.n_rays = static_cast<int>(rays);
            spec.r_max = re_rmax;
            spec.samples_per_curve = re_samples;

            PolylineSet lines;
            if (re_of == "f") {
                lines = image_grid(map, spec);
            } else if (re_of == "omega") {
                lines = image_grid(
                    [&map](Complex z) {
                        const MapJet jet = map.jet(z);
                        if (!jet.omega_defined)
                            fail("BadParam", "omega undefined inside the render grid");
                        return jet.omega;
                    },
                    spec);
            } else {
                fail("BadParam", "--of must be f or omega");
            }
            cli_detail::write_output(render_svg_string(lines, spec), re_out);
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 64;
}

} // namespace disklab
