#pragma once

#include <cstdlib>
#include <string>
#include <vector>

#include "disklab/harmonic_map.hpp"
#include "disklab/json_io.hpp"
#include "disklab/poisson.hpp"

namespace disklab {

namespace detail {

inline double parse_double_strict(const std::string& s, const char* what) {
    if (s.empty()) fail("BadFormat", std::string(what) + " is empty");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v))
        fail("BadFormat", std::string(what) + ": cannot parse '" + s + "'");
    return v;
}

// Entries are scalars or (re,im); commas inside parentheses do not split.
inline std::vector<Complex> parse_complex_list(const std::string& body, const char* what) {
    std::vector<Complex> out;
    std::string token;
    int depth = 0;
    auto flush = [&] {
        if (token.empty()) fail("BadFormat", std::string(what) + ": empty entry");
        if (token.front() == '(') {
            if (token.back() != ')')
                fail("BadFormat", std::string(what) + ": unbalanced parentheses");
            const std::string inner = token.substr(1, token.size() - 2);
            const std::size_t comma = inner.find(',');
            if (comma == std::string::npos)
                fail("BadFormat", std::string(what) + ": pair needs re,im");
            out.emplace_back(parse_double_strict(inner.substr(0, comma), what),
                             parse_double_strict(inner.substr(comma + 1), what));
        } else {
            out.emplace_back(parse_double_strict(token, what), 0.0);
        }
        token.clear();
    };
    for (char ch : body) {
        if (ch == ' ' || ch == '\t') continue;
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            flush();
            continue;
        }
        token += ch;
    }
    if (depth != 0) fail("BadFormat", std::string(what) + ": unbalanced parentheses");
    if (!token.empty()) flush();
    return out;
}

inline std::vector<Complex> parse_bracketed_list(const std::string& text, const char* what) {
    if (text.size() < 2 || text.front() != '[' || text.back() != ']')
        fail("BadFormat", std::string(what) + " must be bracketed, like [0,1]");
    const std::string body = text.substr(1, text.size() - 2);
    if (body.empty()) return {};
    return parse_complex_list(body, what);
}

} // namespace detail

// Textual map descriptions:
//   shear:k=0.5
//   square
//   poly:a=[0,1];b=[0,0,(0,0.25)]
//   boundary:samples.csv:deg=128   (deg optional, default 256)
//   json:map.json
inline HarmonicMap parse_map_spec(const std::string& spec) {
    if (spec == "square") return gallery("square");

    if (spec.rfind("shear:", 0) == 0) {
        const std::string rest = spec.substr(6);
        if (rest.rfind("k=", 0) != 0) fail("BadFormat", "shear spec needs k=, like shear:k=0.5");
        GalleryParams params;
        params.k = detail::parse_double_strict(rest.substr(2), "shear k");
        return gallery("shear", params);
    }

    if (spec.rfind("poly:", 0) == 0) {
        const std::string rest = spec.substr(5);
        GalleryParams params;
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t next = rest.find(';', pos);
            if (next == std::string::npos) next = rest.size();
            const std::string part = rest.substr(pos, next - pos);
            if (part.rfind("a=", 0) == 0)
                params.a = detail::parse_bracketed_list(part.substr(2), "poly a");
            else if (part.rfind("b=", 0) == 0)
                params.b = detail::parse_bracketed_list(part.substr(2), "poly b");
            else if (!part.empty())
                fail("BadFormat", "poly spec parts must be a=[...] or b=[...]");
            pos = next + 1;
        }
        return gallery("poly", params);
    }

    if (spec.rfind("boundary:", 0) == 0) {
        std::string rest = spec.substr(9);
        int degree = 256;
        const std::size_t tail = rest.rfind(":deg=");
        if (tail != std::string::npos) {
            const std::string num = rest.substr(tail + 5);
            const double d = detail::parse_double_strict(num, "boundary degree");
            if (d < 1.0 || d != std::floor(d)) fail("BadFormat", "degree must be a positive integer");
            degree = static_cast<int>(d);
            rest = rest.substr(0, tail);
        }
        if (rest.empty()) fail("BadFormat", "boundary spec needs a file path");
        const BoundaryFunction phi = load_boundary_csv(rest);
        return decompose(phi, degree);
    }

    if (spec.rfind("json:", 0) == 0) {
        const std::string path = spec.substr(5);
        if (path.empty()) fail("BadFormat", "json spec needs a file path");
        return map_from_json(load_json_file(path), "json:" + path);
    }

    fail("BadFormat", "unrecognized map spec '" + spec + "'");
}

} // namespace disklab
