#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cleave/cube_slice.hpp"
#include "cleave/errors.hpp"
#include "cleave/tolerances.hpp"
#include "cleave/vec.hpp"

namespace cleave {

/// A 2D fragment: the observable side of a cut. Clean fragments are convex
/// counterclockwise loops; jitter-augmented ones may bend slightly.
struct Polygon2 {
    std::vector<Vec2> vertices;

    std::size_t size() const { return vertices.size(); }
    const Vec2& operator[](std::size_t i) const { return vertices[i]; }

    double perimeter() const {
        double p = 0;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            p += distance(vertices[i], vertices[(i + 1) % vertices.size()]);
        }
        return p;
    }

    double area() const {
        double a2 = 0;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            a2 += vertices[i].cross(vertices[(i + 1) % vertices.size()]);
        }
        return 0.5 * std::abs(a2);
    }
};

/// Map a coplanar 3D polygon into an orthonormal in-plane frame. Lengths and
/// angles survive unchanged, which is all downstream matching relies on.
inline Polygon2 project(const Polygon3& p, const CutPlane& plane, double eps_plane = 1e-9) {
    const Vec3 n = plane.normal.unit_normal();
    const double scale = plane.normal.direction().norm();
    const double d = plane.offset.to_double() / scale;
    for (const auto& v : p.vertices) {
        if (std::abs(n.dot(v) - d) > eps_plane) {
            throw not_coplanar_error("vertex off plane by " + std::to_string(n.dot(v) - d));
        }
    }

    Vec3 u;
    if (std::abs(n.x) > 1e-12 || std::abs(n.y) > 1e-12) {
        u = Vec3{-n.y, n.x, 0.0}.normalized();
    } else {
        u = {1, 0, 0};
    }
    const Vec3 w = n.cross(u);

    Vec3 c{};
    for (const auto& v : p.vertices) c = c + v;
    c = c / double(p.vertices.size());

    Polygon2 out;
    out.vertices.reserve(p.vertices.size());
    for (const auto& v : p.vertices) {
        const Vec3 r = v - c;
        out.vertices.push_back({r.dot(u), r.dot(w)});
    }
    return out;
}

/// Similarity-invariant canonical form: edge lengths normalized by perimeter
/// plus the interior angle sequence. Scale and rotation drop out by
/// construction; cyclic alignment and reflection are handled by match().
struct ShapeSignature {
    std::vector<double> edge_ratios; // sums to 1
    std::vector<double> angles;      // radians, interior
    std::size_t n = 0;
};

inline ShapeSignature signature(const Polygon2& f) {
    const std::size_t n = f.size();
    if (n < 3) throw degenerate_polygon_error("polygon needs at least 3 vertices");
    const double per = f.perimeter();
    if (!(per > 0)) throw degenerate_polygon_error("zero perimeter");

    ShapeSignature sig;
    sig.n = n;
    sig.edge_ratios.resize(n);
    sig.angles.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& prev = f[(i + n - 1) % n];
        const Vec2& cur = f[i];
        const Vec2& next = f[(i + 1) % n];
        sig.edge_ratios[i] = distance(cur, next) / per;
        const Vec2 a = prev - cur;
        const Vec2 b = next - cur;
        const double la = a.norm(), lb = b.norm();
        if (!(la > 0) || !(lb > 0)) throw degenerate_polygon_error("repeated consecutive vertices");
        const double cosang = std::clamp(a.dot(b) / (la * lb), -1.0, 1.0);
        sig.angles[i] = std::acos(cosang);
    }
    return sig;
}

/// Signature of the same fragment traversed in the opposite direction.
inline ShapeSignature reflect(const ShapeSignature& s) {
    const std::size_t n = s.n;
    ShapeSignature out;
    out.n = n;
    out.edge_ratios.resize(n);
    out.angles.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.edge_ratios[j] = s.edge_ratios[(2 * n - 2 - j) % n];
        out.angles[j] = s.angles[(n - 1 - j) % n];
    }
    return out;
}

struct MatchResult {
    bool matched = false;
    double distance = std::numeric_limits<double>::infinity();
};

namespace detail {

inline double aligned_gap(const ShapeSignature& a, const ShapeSignature& b, std::size_t shift) {
    const std::size_t n = a.n;
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + shift) % n;
        worst = std::max(worst, std::abs(a.edge_ratios[i] - b.edge_ratios[j]));
        worst = std::max(worst, std::abs(a.angles[i] - b.angles[j]) / std::numbers::pi);
        if (worst == std::numeric_limits<double>::infinity()) break;
    }
    return worst;
}

} // namespace detail

/// Distance between two fragments as shapes: the smallest L-inf gap between
/// paired (edge ratio, angle/pi) sequences over every cyclic rotation and
/// the reflection. Fragments with different vertex counts never match.
/// Reflection is accepted because a physical fragment has no canonical
/// facing.
inline MatchResult match(const ShapeSignature& a, const ShapeSignature& b, double tol) {
    if (a.n != b.n || a.n == 0) return {false, std::numeric_limits<double>::infinity()};
    double best = std::numeric_limits<double>::infinity();
    const ShapeSignature br = reflect(b);
    for (std::size_t shift = 0; shift < a.n; ++shift) {
        best = std::min(best, detail::aligned_gap(a, b, shift));
        best = std::min(best, detail::aligned_gap(a, br, shift));
    }
    return {best <= tol, best};
}

inline MatchResult match(const Polygon2& a, const Polygon2& b, double tol) {
    return match(signature(a), signature(b), tol);
}

enum class ShapeClass {
    Triangle,
    Square,
    Rectangle,
    SkewQuadrilateral,
    Pentagon,
    Hexagon,
    RegularHexagon,
    Irregular,
};

inline std::string to_string(ShapeClass c) {
    switch (c) {
        case ShapeClass::Triangle: return "triangle";
        case ShapeClass::Square: return "square";
        case ShapeClass::Rectangle: return "rectangle";
        case ShapeClass::SkewQuadrilateral: return "skew-quadrilateral";
        case ShapeClass::Pentagon: return "pentagon";
        case ShapeClass::Hexagon: return "hexagon";
        case ShapeClass::RegularHexagon: return "regular-hexagon";
        case ShapeClass::Irregular: return "irregular";
    }
    return "irregular";
}

/// Label a fragment by vertex count, then by angle/edge bands from the
/// tolerance profile. Quadrilaterals that are not right-angled fall into
/// the skew class.
inline ShapeClass classify(const Polygon2& f, const ToleranceProfile& tol = ToleranceProfile::exact()) {
    const ShapeSignature sig = signature(f);
    const std::size_t n = sig.n;

    auto all_angles = [&](double target) {
        return std::all_of(sig.angles.begin(), sig.angles.end(),
                           [&](double a) { return std::abs(a - target) <= tol.angle_tol; });
    };
    auto equal_edges = [&] {
        const double mean = 1.0 / double(n);
        return std::all_of(sig.edge_ratios.begin(), sig.edge_ratios.end(),
                           [&](double e) { return std::abs(e - mean) <= tol.edge_tol; });
    };

    switch (n) {
        case 3: return ShapeClass::Triangle;
        case 4:
            if (all_angles(std::numbers::pi / 2)) {
                return equal_edges() ? ShapeClass::Square : ShapeClass::Rectangle;
            }
            return ShapeClass::SkewQuadrilateral;
        case 5: return ShapeClass::Pentagon;
        case 6:
            if (all_angles(2 * std::numbers::pi / 3) && equal_edges()) return ShapeClass::RegularHexagon;
            return ShapeClass::Hexagon;
        default: return ShapeClass::Irregular;
    }
}

} // namespace cleave
