#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "disklab/disk_geometry.hpp"
#include "disklab/error.hpp"
#include "disklab/harmonic_map.hpp"

namespace disklab {

struct RenderSpec {
    int n_radii = 8;
    int n_rays = 16;
    double r_max = 0.99;
    int samples_per_curve = 512;
    double stroke_grid = 0.006;
    double stroke_boundary = 0.012;
    std::string color_grid = "#c8c8c8";
    std::string color_boundary = "#d62728";
};

struct Polyline {
    std::vector<Complex> points;
    bool is_boundary = false;
};

using PolylineSet = std::vector<Polyline>;

// Image of the polar grid under fn: concentric circles, radial rays, and the
// near-boundary circle at r_max drawn as the distinguished curve.
inline PolylineSet image_grid(const std::function<Complex(Complex)>& fn,
                              const RenderSpec& spec = {}) {
    if (spec.n_radii < 2 || spec.n_rays < 2) fail("BadParam", "grid needs >= 2 circles and rays");
    if (spec.samples_per_curve < 64) fail("BadParam", "need at least 64 samples per curve");
    if (!(spec.r_max > 0.0 && spec.r_max < 1.0)) fail("BadParam", "r_max must be in (0, 1)");
    if (!fn) fail("BadParam", "map callable is empty");

    PolylineSet out;
    const int s = spec.samples_per_curve;

    for (int i = 0; i < spec.n_radii; ++i) {
        const double r = spec.r_max * (i + 1) / (spec.n_radii + 1);
        Polyline line;
        line.points.reserve(static_cast<std::size_t>(s) + 1);
        for (int j = 0; j < s; ++j)
            line.points.push_back(fn(std::polar(r, kTwoPi * j / s)));
        line.points.push_back(line.points.front());
        out.push_back(std::move(line));
    }

    for (int j = 0; j < spec.n_rays; ++j) {
        const double t = kTwoPi * j / spec.n_rays;
        Polyline line;
        line.points.reserve(static_cast<std::size_t>(s));
        for (int i = 0; i < s; ++i)
            line.points.push_back(fn(std::polar(spec.r_max * i / (s - 1), t)));
        out.push_back(std::move(line));
    }

    Polyline rim;
    rim.is_boundary = true;
    rim.points.reserve(static_cast<std::size_t>(s) + 1);
    for (int j = 0; j < s; ++j)
        rim.points.push_back(fn(std::polar(spec.r_max, kTwoPi * j / s)));
    rim.points.push_back(rim.points.front());
    out.push_back(std::move(rim));
    return out;
}

inline PolylineSet image_grid(const HarmonicMap& map, const RenderSpec& spec = {}) {
    return image_grid([&map](Complex z) { return map.f(z); }, spec);
}

namespace detail {

inline std::string fmt_g9(double v) {
    if (v == 0.0) v = 0.0;  // never print -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

} // namespace detail

// Deterministic SVG: fixed number formatting, grid curves before the
// boundary curve, y axis flipped so the upper half plane is up.
inline std::string render_svg_string(const PolylineSet& lines,
                                     const RenderSpec& spec = {}) {
    if (lines.empty()) fail("EmptyInput", "nothing to render");
    bool any = false;
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
    for (const Polyline& line : lines) {
        for (Complex p : line.points) {
            const double x = p.real(), y = -p.imag();
            if (!any) { x0 = x1 = x; y0 = y1 = y; any = true; }
            x0 = std::min(x0, x); x1 = std::max(x1, x);
            y0 = std::min(y0, y); y1 = std::max(y1, y);
        }
    }
    if (!any) fail("EmptyInput", "all polylines are empty");

    const double margin = 0.025 * std::max(std::max(x1 - x0, y1 - y0), 1e-12);
    x0 -= margin; y0 -= margin; x1 += margin; y1 += margin;

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" +
                      detail::fmt_g9(x0) + " " + detail::fmt_g9(y0) + " " +
                      detail::fmt_g9(x1 - x0) + " " + detail::fmt_g9(y1 - y0) + "\">\n";

    auto emit = [&](const Polyline& line, const std::string& color, double width) {
        if (line.points.size() < 2) return;
        svg += "  <path fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
               detail::fmt_g9(width) + "\" d=\"";
        for (std::size_t i = 0; i < line.points.size(); ++i) {
            svg += i == 0 ? "M" : " L";
            svg += detail::fmt_g9(line.points[i].real());
            svg += " ";
            svg += detail::fmt_g9(-line.points[i].imag());
        }
        svg += "\"/>\n";
    };

    for (const Polyline& line : lines)
        if (!line.is_boundary) emit(line, spec.color_grid, spec.stroke_grid);
    for (const Polyline& line : lines)
        if (line.is_boundary) emit(line, spec.color_boundary, spec.stroke_boundary);
    svg += "</svg>\n";
    return svg;
}

inline void render_svg(const PolylineSet& lines, const std::string& path,
                       const RenderSpec& spec = {}) {
    const std::string svg = render_svg_string(lines, spec);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("IoError", "cannot open " + path + " for writing");
    out.write(svg.data(), static_cast<std::streamsize>(svg.size()));
    if (!out) fail("IoError", "write failed for " + path);
}

} // namespace disklab
