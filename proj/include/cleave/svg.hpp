#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cleave/cube_slice.hpp"
#include "cleave/errors.hpp"
#include "cleave/obj_io.hpp"
#include "cleave/shape.hpp"

namespace cleave {

/// 2D fragment as a single SVG polygon. The points carry the fragment's
/// raw coordinates (the viewBox adapts to them, they are never rescaled),
/// so reading the file back reproduces the geometry bit for bit as text.
inline std::string fragment_svg(const Polygon2& f) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& v : f.vertices) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    }
    const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(xmin - pad) << ' '
        << format_double(ymin - pad) << ' ' << format_double(xmax - xmin + 2 * pad) << ' '
        << format_double(ymax - ymin + 2 * pad) << "\">\n";
    out << "  <polygon points=\"";
    for (std::size_t i = 0; i < f.vertices.size(); ++i) {
        if (i) out << ' ';
        out << format_double(f.vertices[i].x) << ',' << format_double(f.vertices[i].y);
    }
    out << "\" fill=\"#b0c4de\" stroke=\"#1f3a5f\" stroke-width=\""
        << format_double(0.01 * std::max(xmax - xmin, ymax - ymin)) << "\"/>\n";
    out << "</svg>\n";
    return out.str();
}

inline void write_fragment_svg(const std::string& path, const Polygon2& f) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write svg: " + path);
    out << fragment_svg(f);
}

namespace detail {

// Fixed isometric camera used for all cube scenes.
inline Vec2 isometric(const Vec3& p) {
    const double c30 = std::sqrt(3.0) / 2.0;
    return {(p.x - p.y) * c30, (p.x + p.y) * 0.5 - p.z};
}

} // namespace detail

/// Cube wireframe plus highlighted section facet, orthographically projected
/// with a fixed isometric camera: lines and one polygon, nothing else.
inline std::string scene_svg(const SliceScene& scene) {
    std::vector<std::pair<Vec2, Vec2>> lines;
    lines.reserve(scene.wire_edges.size());
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto touch = [&](const Vec2& v) {
        xmin = std::min(xmin, v.x);
        xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y);
        ymax = std::max(ymax, v.y);
    };
    for (const auto& e : scene.wire_edges) {
        const Vec2 a = detail::isometric(e.first), b = detail::isometric(e.second);
        touch(a);
        touch(b);
        lines.emplace_back(a, b);
    }
    std::vector<Vec2> facet;
    facet.reserve(scene.facet.size());
    for (const auto& v : scene.facet.vertices) {
        const Vec2 p = detail::isometric(v);
        touch(p);
        facet.push_back(p);
    }

    const double pad = 0.08 * std::max(xmax - xmin, ymax - ymin);
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_double(xmin - pad) << ' '
        << format_double(ymin - pad) << ' ' << format_double(xmax - xmin + 2 * pad) << ' '
        << format_double(ymax - ymin + 2 * pad) << "\">\n";
    for (const auto& [a, b] : lines) {
        out << "  <line x1=\"" << format_double(a.x) << "\" y1=\"" << format_double(a.y) << "\" x2=\""
            << format_double(b.x) << "\" y2=\"" << format_double(b.y)
            << "\" stroke=\"#444444\" stroke-width=\"0.012\"/>\n";
    }
    out << "  <polygon points=\"";
    for (std::size_t i = 0; i < facet.size(); ++i) {
        if (i) out << ' ';
        out << format_double(facet[i].x) << ',' << format_double(facet[i].y);
    }
    out << "\" fill=\"#cc3333\" fill-opacity=\"0.55\" stroke=\"#881111\" stroke-width=\"0.015\"/>\n";
    out << "</svg>\n";
    return out.str();
}

inline void write_scene_svg(const std::string& path, const SliceScene& scene) {
    std::ofstream out(path);
    if (!out) throw io_error("cannot write svg: " + path);
    out << scene_svg(scene);
}

/// Read back a fragment SVG: the points attribute of the first polygon.
inline Polygon2 read_fragment_svg(std::istream& in) {
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto poly_pos = text.find("<polygon");
    if (poly_pos == std::string::npos) throw io_error("no <polygon> element in svg");
    const auto pts_pos = text.find("points=\"", poly_pos);
    if (pts_pos == std::string::npos) throw io_error("polygon without points attribute");
    const auto start = pts_pos + 8;
    const auto end = text.find('"', start);
    if (end == std::string::npos) throw io_error("unterminated points attribute");

    Polygon2 f;
    std::string body = text.substr(start, end - start);
    for (auto& c : body) {
        if (c == ',') c = ' ';
    }
    std::istringstream ps(body);
    double x, y;
    while (ps >> x >> y) f.vertices.push_back({x, y});
    if (f.vertices.size() < 3) throw degenerate_polygon_error("svg polygon has fewer than 3 vertices");
    return f;
}

/// Plain-text fragment: one "x y" pair per line, '#' comments allowed.
inline Polygon2 read_fragment_txt(std::istream& in) {
    Polygon2 f;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double x, y;
        if (ls >> x >> y) f.vertices.push_back({x, y});
    }
    if (f.vertices.size() < 3) throw degenerate_polygon_error("fragment file has fewer than 3 vertices");
    return f;
}

/// Load a fragment from .svg or a plain vertex list, by extension.
inline Polygon2 load_fragment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open fragment file: " + path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".svg") return read_fragment_svg(in);
    return read_fragment_txt(in);
}

} // namespace cleave
