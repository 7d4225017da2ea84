#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "cleave/errors.hpp"
#include "cleave/miller.hpp"
#include "cleave/rational.hpp"
#include "cleave/vec.hpp"

namespace cleave {

/// The plane a*x + b*y + c*z = d with (a,b,c) a canonical Miller index and
/// the cube fixed to [0,1]^3. Offsets are rational so generated cuts slice
/// exactly.
struct CutPlane {
    MillerIndex normal;
    Rational offset;

    double offset_value() const { return offset.to_double(); }
};

/// Convex cross-section polygon in cube coordinates, counterclockwise when
/// viewed from the +normal side.
struct Polygon3 {
    std::vector<Vec3> vertices;

    std::size_t size() const { return vertices.size(); }
    const Vec3& operator[](std::size_t i) const { return vertices[i]; }
};

namespace cube {

inline constexpr std::array<Vec3, 8> corners{{{0, 0, 0},
                                              {1, 0, 0},
                                              {0, 1, 0},
                                              {1, 1, 0},
                                              {0, 0, 1},
                                              {1, 0, 1},
                                              {0, 1, 1},
                                              {1, 1, 1}}};

// Each edge as a corner-index pair.
inline constexpr std::array<std::array<int, 2>, 12> edges{{{0, 1},
                                                           {0, 2},
                                                           {0, 4},
                                                           {1, 3},
                                                           {1, 5},
                                                           {2, 3},
                                                           {2, 6},
                                                           {3, 7},
                                                           {4, 5},
                                                           {4, 6},
                                                           {5, 7},
                                                           {6, 7}}};

} // namespace cube

/// d-interval over which the plane meets the closed unit cube: the min and
/// max of n . corner. Proper cuts use the open interval.
inline std::pair<double, double> valid_offset_range(const MillerIndex& n) {
    double lo = 0, hi = 0;
    for (int c : {n.h, n.k, n.l}) {
        if (c < 0) lo += c;
        if (c > 0) hi += c;
    }
    return {lo, hi};
}

namespace detail {

template <class S>
struct SliceOps;

// Exact path: zero tests are exact, no merge tolerance needed.
template <>
struct SliceOps<Rational> {
    static int sign(const Rational& v) { return v.sign(); }
    static bool same_point(const std::array<Rational, 3>& a, const std::array<Rational, 3>& b) {
        return a == b;
    }
    static double to_double(const Rational& v) { return v.to_double(); }
};

template <>
struct SliceOps<double> {
    static constexpr double eps_zero = 1e-12;
    static constexpr double eps_merge = 1e-9;
    static int sign(double v) { return v > eps_zero ? 1 : (v < -eps_zero ? -1 : 0); }
    static bool same_point(const std::array<double, 3>& a, const std::array<double, 3>& b) {
        return std::abs(a[0] - b[0]) < eps_merge && std::abs(a[1] - b[1]) < eps_merge &&
               std::abs(a[2] - b[2]) < eps_merge;
    }
    static double to_double(double v) { return v; }
};

// Plane/cube section for scalar S (Rational = exact, double = tolerant):
// intersect the plane with each of the 12 cube edges, dedupe the hits, order
// them angularly around their centroid inside the plane, and drop zero-area
// results. A fixed in-plane basis u = (-b,a,0) (or (1,0,0) for normals on
// the z axis) and v = n x u keeps every comparison in S.
template <class S>
std::optional<Polygon3> slice_impl(const std::array<S, 3>& n, const S& d) {
    using Ops = SliceOps<S>;
    using P = std::array<S, 3>;

    std::array<S, 8> corner_val;
    std::array<P, 8> corner_pt;
    for (int i = 0; i < 8; ++i) {
        const Vec3& c = cube::corners[i];
        corner_pt[i] = {S(static_cast<int>(c.x)), S(static_cast<int>(c.y)), S(static_cast<int>(c.z))};
        corner_val[i] = n[0] * corner_pt[i][0] + n[1] * corner_pt[i][1] + n[2] * corner_pt[i][2] - d;
    }

    std::vector<P> hits;
    auto push = [&](const P& p) {
        for (const auto& q : hits) {
            if (Ops::same_point(p, q)) return;
        }
        hits.push_back(p);
    };

    for (const auto& e : cube::edges) {
        const int i = e[0], j = e[1];
        const int si = Ops::sign(corner_val[i]);
        const int sj = Ops::sign(corner_val[j]);
        if (si == 0) push(corner_pt[i]);
        if (sj == 0) push(corner_pt[j]);
        if (si * sj < 0) {
            const S t = corner_val[i] / (corner_val[i] - corner_val[j]);
            P p;
            for (int a = 0; a < 3; ++a) {
                p[a] = corner_pt[i][a] + t * (corner_pt[j][a] - corner_pt[i][a]);
            }
            push(p);
        }
    }

    if (hits.size() < 3) return std::nullopt;

    // In-plane 2D coordinates about the vertex centroid.
    P u, v;
    if (Ops::sign(n[0]) != 0 || Ops::sign(n[1]) != 0) {
        u = {S(0) - n[1], n[0], S(0)};
    } else {
        u = {S(1), S(0), S(0)};
    }
    v = {n[1] * u[2] - n[2] * u[1], n[2] * u[0] - n[0] * u[2], n[0] * u[1] - n[1] * u[0]};

    P centroid{S(0), S(0), S(0)};
    for (const auto& p : hits) {
        for (int a = 0; a < 3; ++a) centroid[a] = centroid[a] + p[a];
    }
    const S count = S(static_cast<int>(hits.size()));
    for (int a = 0; a < 3; ++a) centroid[a] = centroid[a] / count;

    struct Planar {
        S x, y;
        P point;
    };
    std::vector<Planar> planar;
    planar.reserve(hits.size());
    for (const auto& p : hits) {
        P r;
        for (int a = 0; a < 3; ++a) r[a] = p[a] - centroid[a];
        planar.push_back({r[0] * u[0] + r[1] * u[1] + r[2] * u[2],
                          r[0] * v[0] + r[1] * v[1] + r[2] * v[2], p});
    }

    // Angular order: upper half-plane first, exact cross-product comparisons
    // within a half. Convexity of the section makes this the cyclic order.
    auto half = [](const Planar& p) {
        const int sy = Ops::sign(p.y);
        if (sy > 0) return 0;
        if (sy == 0 && Ops::sign(p.x) > 0) return 0;
        return 1;
    };
    std::sort(planar.begin(), planar.end(), [&](const Planar& a, const Planar& b) {
        const int ha = half(a), hb = half(b);
        if (ha != hb) return ha < hb;
        const S cross = a.x * b.y - a.y * b.x;
        return Ops::sign(cross) > 0;
    });

    // Shoelace in (u,v): positive means counterclockwise about +normal.
    S doubled_area = S(0);
    for (std::size_t i = 0; i < planar.size(); ++i) {
        const auto& a = planar[i];
        const auto& b = planar[(i + 1) % planar.size()];
        doubled_area = doubled_area + (a.x * b.y - a.y * b.x);
    }
    if (Ops::sign(doubled_area) == 0) return std::nullopt;
    if (Ops::sign(doubled_area) < 0) std::reverse(planar.begin(), planar.end());

    Polygon3 out;
    out.vertices.reserve(planar.size());
    for (const auto& p : planar) {
        out.vertices.push_back(
            {Ops::to_double(p.point[0]), Ops::to_double(p.point[1]), Ops::to_double(p.point[2])});
    }
    return out;
}

} // namespace detail

/// Exact section of the unit cube. Returns nothing when the plane misses the
/// cube or only touches a vertex or an edge (zero-area contact).
inline std::optional<Polygon3> slice_cube(const CutPlane& p) {
    const std::array<Rational, 3> n{Rational(p.normal.h), Rational(p.normal.k), Rational(p.normal.l)};
    return detail::slice_impl<Rational>(n, p.offset);
}

/// Float fallback for fitted planes whose normals are not integer triples.
inline std::optional<Polygon3> slice_cube(const Vec3& normal, double d) {
    const std::array<double, 3> n{normal.x, normal.y, normal.z};
    return detail::slice_impl<double>(n, d);
}

inline Vec3 polygon_centroid(const Polygon3& p) {
    Vec3 c{};
    for (const auto& v : p.vertices) c = c + v;
    return c / double(p.vertices.size());
}

/// Area of a planar 3D polygon (sum of cross products).
inline double polygon_area(const Polygon3& p) {
    if (p.vertices.size() < 3) return 0.0;
    Vec3 s{};
    const Vec3& o = p.vertices[0];
    for (std::size_t i = 1; i + 1 < p.vertices.size(); ++i) {
        s = s + (p.vertices[i] - o).cross(p.vertices[i + 1] - o);
    }
    return 0.5 * s.norm();
}

/// Drawable cut scene: the cube wireframe plus the highlighted section facet.
struct SliceScene {
    std::vector<std::pair<Vec3, Vec3>> wire_edges; // the 12 cube edges
    Polygon3 facet;
    MillerIndex normal;
    double offset = 0.0;
};

inline SliceScene plane_patch_mesh(const CutPlane& p) {
    auto poly = slice_cube(p);
    if (!poly) throw empty_slice_error{};
    SliceScene scene;
    scene.wire_edges.reserve(cube::edges.size());
    for (const auto& e : cube::edges) {
        scene.wire_edges.emplace_back(cube::corners[e[0]], cube::corners[e[1]]);
    }
    scene.facet = std::move(*poly);
    scene.normal = p.normal;
    scene.offset = p.offset_value();
    return scene;
}

} // namespace cleave
