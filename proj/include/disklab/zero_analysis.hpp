#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "disklab/disk_geometry.hpp"
#include "disklab/harmonic_map.hpp"

namespace disklab {

// Closed polygonal contour: vertices.front() == vertices.back().
struct Contour {
    std::vector<Complex> vertices;
    double refinement = 0.0;   // target spacing used to build it
};

inline Contour circle_contour(Complex center, double radius, int n) {
    if (n < 8) fail("BadParam", "circle contour needs at least 8 vertices");
    if (!(radius > 0.0)) fail("BadParam", "radius must be positive");
    Contour c;
    c.vertices.reserve(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j < n; ++j)
        c.vertices.push_back(center + std::polar(radius, kTwoPi * j / n));
    c.vertices.push_back(c.vertices.front());
    c.refinement = kTwoPi * radius / n;
    return c;
}

namespace detail {

inline double cross(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

inline bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
    const double d1 = cross(q1, q2, p1);
    const double d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1);
    const double d4 = cross(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    return false;
}

} // namespace detail

inline bool contour_is_simple(const Contour& c) {
    const std::size_t n = c.vertices.size();
    if (n < 4) return false;
    const std::size_t m = n - 1;  // segment count
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 2; j < m; ++j) {
            if (i == 0 && j == m - 1) continue;  // closing segment shares a vertex
            if (detail::segments_intersect(c.vertices[i], c.vertices[i + 1],
                                           c.vertices[j], c.vertices[j + 1]))
                return false;
        }
    }
    return true;
}

inline bool contour_contains(const Contour& c, Complex p) {
    bool inside = false;
    const std::size_t m = c.vertices.size() - 1;
    for (std::size_t i = 0; i < m; ++i) {
        const Complex a = c.vertices[i];
        const Complex b = c.vertices[i + 1];
        if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
            const double t = (p.imag() - a.imag()) / (b.imag() - a.imag());
            if (p.real() < a.real() + t * (b.real() - a.real())) inside = !inside;
        }
    }
    return inside;
}

struct ZeroCountReport {
    int count = 0;
    double winding_residual = 0.0;
    std::vector<std::pair<double, int>> eps_history;
    bool stabilized = false;
    bool degenerate = false;
};

namespace detail {

// Accumulate arg increments along [a, b], bisecting until each piece turns
// by less than pi/2. Persistent large turns or tiny values mean the contour
// runs too close to a zero.
inline double segment_arg_delta(const std::function<Complex(Complex)>& fn,
                                Complex a, Complex fa, Complex b, Complex fb,
                                int depth) {
    constexpr double kSmall = 1e-12;
    if (depth > 48)
        fail("ZeroOnContour", "argument increment did not localize under bisection");
    const double d = std::arg(fb / fa);
    if (std::abs(d) < kPi / 2.0) return d;
    Complex m{}, fm{};
    bool found = false;
    for (double t : {0.5, 0.45, 0.55}) {
        m = a + t * (b - a);
        fm = fn(m);
        if (std::abs(fm) >= kSmall) { found = true; break; }
    }
    if (!found) fail("ZeroOnContour", "function vanishes on the contour");
    return segment_arg_delta(fn, a, fa, m, fm, depth + 1) +
           segment_arg_delta(fn, m, fm, b, fb, depth + 1);
}

} // namespace detail

inline ZeroCountReport argument_principle_count(const std::function<Complex(Complex)>& fn,
                                                const Contour& contour) {
    const std::size_t n = contour.vertices.size();
    if (n < 4) fail("BadParam", "contour needs at least 3 distinct vertices");
    if (std::abs(contour.vertices.front() - contour.vertices.back()) > 1e-12)
        fail("BadParam", "contour is not closed");
    for (Complex v : contour.vertices)
        if (!(std::abs(v) < 1.0)) fail("BadParam", "contour leaves the open disk");
    if (!contour_is_simple(contour))
        fail("NonSimpleContour", "contour intersects itself");

    constexpr double kSmall = 1e-12;
    std::vector<Complex> fv(n);
    for (std::size_t i = 0; i < n; ++i) {
        fv[i] = fn(contour.vertices[i]);
        if (std::abs(fv[i]) < kSmall)
            fail("ZeroOnContour", "function vanishes at a contour vertex");
    }

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        total += detail::segment_arg_delta(fn, contour.vertices[i], fv[i],
                                           contour.vertices[i + 1], fv[i + 1], 0);

    ZeroCountReport report;
    const double turns = total / kTwoPi;
    report.count = static_cast<int>(std::llround(turns));
    report.winding_residual = std::abs(turns - report.count);
    report.stabilized = true;
    return report;
}

// Boundary of S(theta0, alpha) intersected with |z| <= 1 - eps, counterclockwise.
// The outer piece is the cap arc |z| = 1 - eps; the rest follows the inner
// branch of |z - e^{i theta0}| = alpha (1 - |z|), which in polar form
// rho^2 - 2 B rho + 1 = 0 with B = (alpha^2 - cos u) / (alpha^2 - 1) gives
// rho(u) = B - sqrt(B^2 - 1).
inline Contour truncated_stolz_contour(const StolzAngle& s, double eps, int n_side) {
    if (!(eps > 0.0 && eps < 0.5)) fail("BadEps", "eps must be in (0, 0.5)");
    if (n_side < 16) fail("BadParam", "n_side must be at least 16");
    if (!(s.alpha > 1.0)) fail("BadParam", "Stolz angle is empty for alpha <= 1");

    const double r = 1.0 - eps;
    const double a2 = s.alpha * s.alpha;
    const double spacing = r / n_side;
    const double cos_umax = (1.0 + r * r - a2 * (1.0 - r) * (1.0 - r)) / (2.0 * r);

    if (cos_umax < -1.0) {
        // Sector swallows the whole circle of radius r.
        const int n = static_cast<int>(std::ceil(kTwoPi * r / spacing));
        Contour c = circle_contour({0.0, 0.0}, r, std::max(n, 16));
        c.refinement = spacing;
        return c;
    }

    const double u_max = std::acos(std::clamp(cos_umax, -1.0, 1.0));
    auto rho = [&](double u) {
        const double b = (a2 - std::cos(u)) / (a2 - 1.0);
        return b - std::sqrt(std::max(b * b - 1.0, 0.0));
    };

    Contour c;
    const int n_cap = std::max(2, static_cast<int>(std::ceil(2.0 * u_max / (spacing / r)))) + 1;
    for (int j = 0; j < n_cap; ++j) {
        const double u = -u_max + 2.0 * u_max * j / (n_cap - 1);
        c.vertices.push_back(std::polar(r, s.theta0 + u));
    }

    const double span = kTwoPi - 2.0 * u_max;
    int n_branch = std::max(16, static_cast<int>(std::ceil(span / (spacing / r))));
    for (int attempt = 0; attempt < 14; ++attempt) {
        std::vector<Complex> branch;
        branch.reserve(static_cast<std::size_t>(n_branch));
        for (int j = 1; j < n_branch; ++j) {
            const double u = u_max + span * j / n_branch;
            branch.push_back(std::polar(rho(u), s.theta0 + u));
        }
        double chord = 0.0;
        Complex prev = c.vertices.back();
        for (Complex p : branch) {
            chord = std::max(chord, std::abs(p - prev));
            prev = p;
        }
        chord = std::max(chord, std::abs(c.vertices.front() - prev));
        if (chord <= spacing || attempt == 13) {
            c.vertices.insert(c.vertices.end(), branch.begin(), branch.end());
            break;
        }
        n_branch *= 2;
    }
    c.vertices.push_back(c.vertices.front());
    c.refinement = spacing;
    return c;
}

// N(g') - N(h') over the truncated sector, per truncation level.
inline ZeroCountReport count_dilatation_zeros(const HarmonicMap& map, const StolzAngle& s,
                                              const std::vector<double>& eps_ladder,
                                              int n_side = 96) {
    if (eps_ladder.empty()) fail("BadParam", "eps ladder is empty");
    for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
        if (!(eps_ladder[i] > 0.0 && eps_ladder[i] < 0.5))
            fail("BadEps", "eps must be in (0, 0.5)");
        if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1]))
            fail("BadParam", "eps ladder must be strictly decreasing");
    }

    ZeroCountReport report;
    if (map.g_identically_zero()) {
        report.degenerate = true;
        for (double eps : eps_ladder) report.eps_history.emplace_back(eps, 0);
        return report;
    }

    auto gp = [&](Complex z) { return map.g_prime(z); };
    auto hp = [&](Complex z) { return map.h_prime(z); };
    for (double eps : eps_ladder) {
        const Contour contour = truncated_stolz_contour(s, eps, n_side);
        const ZeroCountReport zg = argument_principle_count(gp, contour);
        const ZeroCountReport zh = argument_principle_count(hp, contour);
        report.count = zg.count - zh.count;
        report.winding_residual =
            std::max({report.winding_residual, zg.winding_residual, zh.winding_residual});
        report.eps_history.emplace_back(eps, report.count);
    }
    const std::size_t m = report.eps_history.size();
    report.stabilized =
        m >= 2 && report.eps_history[m - 1].second == report.eps_history[m - 2].second;
    return report;
}

struct ScanRegion {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    std::function<bool(Complex)> inside;

    static ScanRegion disk(Complex center, double radius) {
        if (!(radius > 0.0)) fail("BadParam", "radius must be positive");
        ScanRegion r;
        r.x0 = center.real() - radius;
        r.x1 = center.real() + radius;
        r.y0 = center.imag() - radius;
        r.y1 = center.imag() + radius;
        r.inside = [center, radius](Complex z) { return std::abs(z - center) <= radius; };
        return r;
    }

    static ScanRegion rect(double x0, double y0, double x1, double y1) {
        if (!(x0 < x1 && y0 < y1)) fail("BadParam", "degenerate rectangle");
        ScanRegion r;
        r.x0 = x0; r.y0 = y0; r.x1 = x1; r.y1 = y1;
        r.inside = [x0, y0, x1, y1](Complex z) {
            return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
        };
        return r;
    }

    static ScanRegion from_contour(Contour c) {
        if (c.vertices.size() < 4) fail("BadParam", "contour needs at least 3 vertices");
        ScanRegion r;
        r.x0 = r.y0 = std::numeric_limits<double>::infinity();
        r.x1 = r.y1 = -std::numeric_limits<double>::infinity();
        for (Complex v : c.vertices) {
            r.x0 = std::min(r.x0, v.real());
            r.x1 = std::max(r.x1, v.real());
            r.y0 = std::min(r.y0, v.imag());
            r.y1 = std::max(r.y1, v.imag());
        }
        auto shared = std::make_shared<Contour>(std::move(c));
        r.inside = [shared](Complex z) { return contour_contains(*shared, z); };
        return r;
    }
};

// Coarse grid scan for zeros, polished by damped Newton on (Re fn, Im fn)
// with a central-difference Jacobian. Deterministic: output sorted by
// real part, then imaginary part.
inline std::vector<Complex> grid_zero_scan(const std::function<Complex(Complex)>& fn,
                                           const ScanRegion& region, double cell) {
    if (!(cell > 0.0)) fail("BadParam", "cell size must be positive");
    if (!region.inside) fail("BadParam", "region has no membership test");

    const int nx = static_cast<int>(std::floor((region.x1 - region.x0) / cell)) + 1;
    const int ny = static_cast<int>(std::floor((region.y1 - region.y0) / cell)) + 1;
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> mag(static_cast<std::size_t>(nx) * ny, inf);
    auto at = [&](int i, int j) -> double& { return mag[static_cast<std::size_t>(j) * nx + i]; };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const Complex z{region.x0 + i * cell, region.y0 + j * cell};
            if (region.inside(z)) at(i, j) = std::abs(fn(z));
        }
    }

    std::vector<Complex> seeds;
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const double v = at(i, j);
            if (!(v < 0.05)) continue;
            bool is_min = true;
            for (int dj = -1; dj <= 1 && is_min; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    const int ii = i + di, jj = j + dj;
                    if (ii < 0 || ii >= nx || jj < 0 || jj >= ny) continue;
                    if (at(ii, jj) < v) { is_min = false; break; }
                }
            if (is_min) seeds.emplace_back(region.x0 + i * cell, region.y0 + j * cell);
        }
    }

    const double fd = std::max(cell * 1e-3, 1e-9);
    std::vector<Complex> zeros;
    for (Complex z : seeds) {
        double best = std::abs(fn(z));
        bool ok = true;
        for (int iter = 0; iter < 80 && best > 1e-14; ++iter) {
            const Complex fx1 = fn(z + Complex{fd, 0.0});
            const Complex fx0 = fn(z - Complex{fd, 0.0});
            const Complex fy1 = fn(z + Complex{0.0, fd});
            const Complex fy0 = fn(z - Complex{0.0, fd});
            const double a = (fx1.real() - fx0.real()) / (2.0 * fd);
            const double b = (fy1.real() - fy0.real()) / (2.0 * fd);
            const double c = (fx1.imag() - fx0.imag()) / (2.0 * fd);
            const double d = (fy1.imag() - fy0.imag()) / (2.0 * fd);
            const double det = a * d - b * c;
            if (std::abs(det) < 1e-300) { ok = false; break; }
            const Complex fz = fn(z);
            const double dx = (d * fz.real() - b * fz.imag()) / det;
            const double dy = (a * fz.imag() - c * fz.real()) / det;
            double step = 1.0;
            Complex next = z;
            double next_mag = best;
            bool improved = false;
            for (int k = 0; k < 25; ++k) {
                const Complex cand{z.real() - step * dx, z.imag() - step * dy};
                if (region.inside(cand)) {
                    const double cm = std::abs(fn(cand));
                    if (cm < best) { next = cand; next_mag = cm; improved = true; break; }
                }
                step *= 0.5;
            }
            if (!improved) break;
            z = next;
            best = next_mag;
        }
        if (!ok || !(best < 1e-10) || !region.inside(z)) continue;
        bool dup = false;
        for (Complex& w : zeros) {
            if (std::abs(w - z) < cell / 2.0) {
                if (best < std::abs(fn(w))) w = z;
                dup = true;
                break;
            }
        }
        if (!dup) zeros.push_back(z);
    }

    std::sort(zeros.begin(), zeros.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return zeros;
}

} // namespace disklab
