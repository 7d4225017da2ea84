#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "cleave/errors.hpp"
#include "cleave/miller.hpp"
#include "cleave/vec.hpp"

namespace cleave {

/// Triangulated fracture surface, indexed. Face groups are optional labels
/// carried through from generators (e.g. one group per grain).
struct FragmentSurface {
    std::vector<Vec3> vertices;
    std::vector<std::array<int, 3>> faces;
    std::vector<int> face_groups;          // empty, or one group id per face
    std::vector<std::string> group_names;  // indexed by group id

    std::size_t triangle_count() const { return faces.size(); }

    std::array<Vec3, 3> triangle(std::size_t i) const {
        const auto& f = faces[i];
        return {vertices[f[0]], vertices[f[1]], vertices[f[2]]};
    }

    double triangle_area(std::size_t i) const {
        const auto t = triangle(i);
        return 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).norm();
    }

    Vec3 triangle_normal(std::size_t i) const {
        const auto t = triangle(i);
        return (t[1] - t[0]).cross(t[2] - t[0]).normalized();
    }

    double total_area() const {
        double a = 0;
        for (std::size_t i = 0; i < faces.size(); ++i) a += triangle_area(i);
        return a;
    }

    /// Max pairwise vertex distance. Rotation-invariant by construction,
    /// which keeps the assess() thresholds rotation-invariant too.
    double diameter() const {
        double best = 0;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            for (std::size_t j = i + 1; j < vertices.size(); ++j) {
                best = std::max(best, distance(vertices[i], vertices[j]));
            }
        }
        return best;
    }

    void validate() const {
        if (faces.empty()) throw degenerate_cloud_error("surface has no triangles");
        for (std::size_t i = 0; i < faces.size(); ++i) {
            for (int v : faces[i]) {
                if (v < 0 || std::size_t(v) >= vertices.size()) {
                    throw io_error("face references missing vertex");
                }
            }
            if (!(triangle_area(i) > 0)) throw degenerate_cloud_error("zero-area triangle in surface");
        }
    }

    /// Build an indexed surface from a raw triangle soup, welding vertices
    /// that coincide exactly.
    static FragmentSurface from_triangles(std::span<const std::array<Vec3, 3>> tris) {
        FragmentSurface s;
        std::map<std::array<double, 3>, int> index;
        auto weld = [&](const Vec3& v) {
            const std::array<double, 3> key{v.x, v.y, v.z};
            auto it = index.find(key);
            if (it != index.end()) return it->second;
            const int id = int(s.vertices.size());
            s.vertices.push_back(v);
            index.emplace(key, id);
            return id;
        };
        for (const auto& t : tris) {
            s.faces.push_back({weld(t[0]), weld(t[1]), weld(t[2])});
        }
        return s;
    }
};

/// A fitted plane over some portion of a surface.
struct PlaneFit {
    Vec3 normal{0, 0, 1};          // unit
    double offset = 0.0;           // normal . x = offset
    double rms_residual = 0.0;     // RMS orthogonal distance, length units
    double support_area = 1.0;     // fraction of total surface area
    std::optional<MillerIndex> miller; // nearest low-index direction, if any
};

enum class Mode { Inference, Partial, Rejection };

inline std::string to_string(Mode m) {
    switch (m) {
        case Mode::Inference: return "inference";
        case Mode::Partial: return "partial";
        case Mode::Rejection: return "rejection";
    }
    return "rejection";
}

inline Mode mode_from_string(const std::string& s) {
    if (s == "inference") return Mode::Inference;
    if (s == "partial") return Mode::Partial;
    if (s == "rejection") return Mode::Rejection;
    throw error("unknown regime mode: " + s);
}

/// Three-way applicability verdict: one plane explains the surface
/// (Inference), several local planes do (Partial), or no planar description
/// holds (Rejection). The applicable bit is mode != Rejection.
struct RegimeVerdict {
    Mode mode = Mode::Rejection;
    std::vector<PlaneFit> fits;
    bool applicable = false;
};

namespace detail {

struct EigenSym3 {
    std::array<double, 3> values;          // ascending
    std::array<Vec3, 3> vectors;           // matching unit eigenvectors
};

/// Cyclic Jacobi on a symmetric 3x3. More than enough accuracy for plane
/// fitting, no external dependency.
inline EigenSym3 eigen_sym3(std::array<std::array<double, 3>, 3> a) {
    std::array<std::array<double, 3>, 3> v{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int sweep = 0; sweep < 32; ++sweep) {
        double off = std::abs(a[0][1]) + std::abs(a[0][2]) + std::abs(a[1][2]);
        if (off < 1e-300) break;
        for (int p = 0; p < 2; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1.0 / std::sqrt(t * t + 1);
                const double s = t * c;
                for (int k = 0; k < 3; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 3; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < 3; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a[i][i] < a[j][j]; });
    EigenSym3 out;
    for (int i = 0; i < 3; ++i) {
        out.values[i] = a[order[i]][order[i]];
        out.vectors[i] = Vec3{v[0][order[i]], v[1][order[i]], v[2][order[i]]}.normalized();
    }
    return out;
}

/// Deterministic sign: largest-magnitude component positive.
inline Vec3 orient_normal(Vec3 n) {
    const double ax = std::abs(n.x), ay = std::abs(n.y), az = std::abs(n.z);
    double lead = n.z;
    if (ax >= ay && ax >= az) {
        lead = n.x;
    } else if (ay >= az) {
        lead = n.y;
    }
    return lead < 0 ? n * -1.0 : n;
}

} // namespace detail

/// Least-squares plane through a point cloud: centroid plus the smallest
/// principal direction of the centered covariance. rms_residual is the RMS
/// orthogonal distance of the points.
inline PlaneFit fit_plane(std::span<const Vec3> points) {
    if (points.size() < 3) throw degenerate_cloud_error("plane fit needs at least 3 points");
    Vec3 c{};
    for (const auto& p : points) c = c + p;
    c = c / double(points.size());

    std::array<std::array<double, 3>, 3> m{};
    for (const auto& p : points) {
        const Vec3 r = p - c;
        const std::array<double, 3> rr{r.x, r.y, r.z};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) m[i][j] += rr[i] * rr[j];
        }
    }
    const auto eig = detail::eigen_sym3(m);
    // Collinear clouds have two near-zero principal components.
    const double scale = std::max(eig.values[2], 1e-300);
    if (eig.values[1] / scale < 1e-12) {
        throw degenerate_cloud_error("points are collinear or coincident");
    }

    PlaneFit fit;
    fit.normal = detail::orient_normal(eig.vectors[0]);
    fit.offset = fit.normal.dot(c);
    fit.rms_residual = std::sqrt(std::max(0.0, eig.values[0]) / double(points.size()));
    fit.support_area = 1.0;
    return fit;
}

namespace detail {

/// Area-weighted plane fit over a set of triangles, integrating the
/// covariance of the uniform surface measure exactly (edge-midpoint
/// quadrature is exact for quadratics).
inline PlaneFit fit_plane_area(const FragmentSurface& s, std::span<const int> tri_ids) {
    double area = 0;
    Vec3 first_moment{};
    std::array<std::array<double, 3>, 3> second{};

    for (int id : tri_ids) {
        const auto t = s.triangle(std::size_t(id));
        const double a = s.triangle_area(std::size_t(id));
        const std::array<Vec3, 3> mids{(t[0] + t[1]) / 2.0, (t[1] + t[2]) / 2.0, (t[0] + t[2]) / 2.0};
        area += a;
        for (const auto& mp : mids) {
            first_moment = first_moment + mp * (a / 3.0);
            const std::array<double, 3> rr{mp.x, mp.y, mp.z};
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j) second[i][j] += (a / 3.0) * rr[i] * rr[j];
            }
        }
    }

    const Vec3 c = first_moment / area;
    const std::array<double, 3> cc{c.x, c.y, c.z};
    std::array<std::array<double, 3>, 3> centered{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) centered[i][j] = second[i][j] - area * cc[i] * cc[j];
    }

    const auto eig = eigen_sym3(centered);
    PlaneFit fit;
    fit.normal = orient_normal(eig.vectors[0]);
    fit.offset = fit.normal.dot(c);
    fit.rms_residual = std::sqrt(std::max(0.0, eig.values[0]) / area);
    return fit;
}

} // namespace detail

/// Nearest canonical Miller direction within tol_deg of a unit normal, or
/// nothing if every low-index direction is farther ("unindexed facet").
inline std::optional<MillerIndex> nearest_miller_direction(const Vec3& unit_normal, int max_index = 3,
                                                           double tol_deg = 2.0) {
    std::optional<MillerIndex> best;
    double best_angle = tol_deg * std::numbers::pi / 180.0;
    for (const auto& m : enumerate_canonical_indices(max_index)) {
        const double cosang = std::min(1.0, std::abs(unit_normal.dot(m.unit_normal())));
        const double ang = std::acos(cosang);
        if (ang <= best_angle) {
            best_angle = ang;
            best = m;
        }
    }
    return best;
}

/// Greedy planar segmentation: grow regions over triangle adjacency from
/// large seed faces, admitting a neighbor when its normal agrees with the
/// seed plane within angle_tol (orientation-insensitive) and its vertices
/// sit within dist_tol of it. Each region is refit area-weighted; regions
/// come back sorted by support fraction, largest first.
inline std::vector<PlaneFit> segment_planes(const FragmentSurface& s, double angle_tol, double dist_tol) {
    s.validate();
    const std::size_t nf = s.faces.size();

    std::map<std::pair<int, int>, std::vector<int>> edge_faces;
    for (std::size_t f = 0; f < nf; ++f) {
        for (int e = 0; e < 3; ++e) {
            int a = s.faces[f][e], b = s.faces[f][(e + 1) % 3];
            if (a > b) std::swap(a, b);
            edge_faces[{a, b}].push_back(int(f));
        }
    }

    std::vector<Vec3> normals(nf);
    std::vector<double> areas(nf);
    std::vector<int> order(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        normals[f] = s.triangle_normal(f);
        areas[f] = s.triangle_area(f);
        order[f] = int(f);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (areas[a] != areas[b]) return areas[a] > areas[b];
        return a < b;
    });

    const double cos_tol = std::cos(angle_tol);
    std::vector<char> visited(nf, 0);
    std::vector<PlaneFit> fits;
    const double total = s.total_area();

    for (int seed : order) {
        if (visited[seed]) continue;
        const Vec3 seed_n = normals[seed];
        const double seed_off = seed_n.dot(s.vertices[s.faces[seed][0]]);

        std::vector<int> region;
        std::queue<int> frontier;
        visited[seed] = 1;
        frontier.push(seed);
        while (!frontier.empty()) {
            const int f = frontier.front();
            frontier.pop();
            region.push_back(f);
            for (int e = 0; e < 3; ++e) {
                int a = s.faces[f][e], b = s.faces[f][(e + 1) % 3];
                if (a > b) std::swap(a, b);
                for (int g : edge_faces[{a, b}]) {
                    if (visited[g]) continue;
                    if (std::abs(normals[g].dot(seed_n)) < cos_tol) continue;
                    bool close = true;
                    for (int v : s.faces[g]) {
                        if (std::abs(seed_n.dot(s.vertices[v]) - seed_off) > dist_tol) {
                            close = false;
                            break;
                        }
                    }
                    if (!close) continue;
                    visited[g] = 1;
                    frontier.push(g);
                }
            }
        }

        PlaneFit fit = detail::fit_plane_area(s, region);
        double region_area = 0;
        for (int f : region) region_area += areas[f];
        fit.support_area = region_area / total;
        fits.push_back(fit);
    }

    std::sort(fits.begin(), fits.end(), [](const PlaneFit& a, const PlaneFit& b) {
        return a.support_area > b.support_area;
    });
    return fits;
}

/// Thresholds for the three-regime classification. The source material
/// defines the regimes but not numeric bounds, so these are configuration
/// with documented defaults. Distance-like bounds are relative to the
/// surface diameter, which keeps the verdict scale-invariant.
struct RegimeThresholds {
    double theta_single = 0.8;   // area fraction one plane must cover
    double theta_facet = 0.1;    // area fraction a local facet must cover
    double rho_max = 0.01;       // planarity: rms residual / diameter
    double angle_tol = 3.0 * std::numbers::pi / 180.0;
    double dist_tol_rel = 0.02;  // segmentation distance gate / diameter
    int snap_max_index = 3;
    double snap_tol_deg = 2.0;
};

/// Classify a fracture surface: Inference when a single plane fit covers
/// theta_single of the area within the planarity bound, Partial when at
/// least two planar facets pass the facet test and jointly reach
/// theta_single, Rejection otherwise.
inline RegimeVerdict assess(const FragmentSurface& s, const RegimeThresholds& th = {}) {
    const double diam = s.diameter();
    auto fits = segment_planes(s, th.angle_tol, th.dist_tol_rel * diam);

    auto planar = [&](const PlaneFit& f) { return f.rms_residual <= th.rho_max * diam; };
    for (auto& f : fits) {
        f.miller = nearest_miller_direction(f.normal, th.snap_max_index, th.snap_tol_deg);
    }

    RegimeVerdict verdict;
    verdict.fits = fits;

    if (!fits.empty() && fits.front().support_area >= th.theta_single && planar(fits.front())) {
        verdict.mode = Mode::Inference;
    } else {
        double joint = 0;
        int facets = 0;
        for (const auto& f : fits) {
            if (f.support_area >= th.theta_facet && planar(f)) {
                ++facets;
                joint += f.support_area;
            }
        }
        verdict.mode = (facets >= 2 && joint >= th.theta_single) ? Mode::Partial : Mode::Rejection;
    }
    verdict.applicable = verdict.mode != Mode::Rejection;
    return verdict;
}

} // namespace cleave
