#pragma once

// Independent reference implementations used only by tests. These
// deliberately take different routes than the library: the slice oracle
// clips a large plane quad against the six cube halfspaces instead of
// walking cube edges, and the family oracle multiplies explicit 3x3 signed
// permutation matrices.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "cleave/rng.hpp"
#include "cleave/vec.hpp"

namespace oracles {

using cleave::Vec3;

/// Plane/cube section by Sutherland-Hodgman clipping of a big in-plane quad
/// against the six cube face halfspaces.
inline std::vector<Vec3> clip_slice(const Vec3& normal, double d) {
    const Vec3 n = normal.normalized();
    const double dn = d / normal.norm();

    Vec3 u = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    u = (u - n * u.dot(n)).normalized();
    const Vec3 v = n.cross(u);

    const double r = 10.0;
    const Vec3 c = n * dn;
    std::vector<Vec3> poly{c + (u + v) * r, c + (v - u) * r, c - (u + v) * r, c + (u - v) * r};

    struct Halfspace {
        Vec3 n;
        double off;
    };
    const std::vector<Halfspace> faces{
        {{-1, 0, 0}, 0}, {{1, 0, 0}, 1}, {{0, -1, 0}, 0}, {{0, 1, 0}, 1}, {{0, 0, -1}, 0}, {{0, 0, 1}, 1}};

    for (const auto& h : faces) {
        std::vector<Vec3> next;
        const std::size_t m = poly.size();
        for (std::size_t i = 0; i < m; ++i) {
            const Vec3& a = poly[i];
            const Vec3& b = poly[(i + 1) % m];
            const double fa = h.n.dot(a) - h.off;
            const double fb = h.n.dot(b) - h.off;
            if (fa <= 1e-12) next.push_back(a);
            if ((fa < -1e-12 && fb > 1e-12) || (fa > 1e-12 && fb < -1e-12)) {
                const double t = fa / (fa - fb);
                next.push_back(a + (b - a) * t);
            }
        }
        poly = std::move(next);
        if (poly.size() < 3) return {};
    }

    // merge duplicates and collinear runs introduced by successive clips
    std::vector<Vec3> merged;
    for (const auto& p : poly) {
        if (merged.empty() || cleave::distance(merged.back(), p) > 1e-9) merged.push_back(p);
    }
    while (merged.size() > 1 && cleave::distance(merged.front(), merged.back()) < 1e-9) merged.pop_back();
    if (merged.size() < 3) return {};
    std::vector<Vec3> out;
    const std::size_t m = merged.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec3& prev = merged[(i + m - 1) % m];
        const Vec3& cur = merged[i];
        const Vec3& next = merged[(i + 1) % m];
        if ((cur - prev).cross(next - cur).norm() > 1e-9) out.push_back(cur);
    }
    return out.size() >= 3 ? out : std::vector<Vec3>{};
}

inline double polygon_area3(const std::vector<Vec3>& poly) {
    if (poly.size() < 3) return 0;
    Vec3 s{};
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        s = s + (poly[i] - poly[0]).cross(poly[i + 1] - poly[0]);
    }
    return 0.5 * s.norm();
}

/// Same vertex set within tol, as unordered sets.
inline bool same_vertex_set(const std::vector<Vec3>& a, const std::vector<Vec3>& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& p : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && cleave::distance(p, b[j]) <= tol) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

/// Monte-Carlo slab estimate of the plane/cube cross-section area: the
/// fraction of cube samples within half-thickness t/2 of the plane,
/// divided by the slab thickness.
inline double mc_slab_area(const Vec3& normal, double d, double thickness, std::size_t samples,
                           std::uint64_t seed) {
    const Vec3 n = normal.normalized();
    const double dn = d / normal.norm();
    cleave::Rng rng(seed);
    std::size_t inside = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const Vec3 p{rng.uniform(), rng.uniform(), rng.uniform()};
        if (std::abs(n.dot(p) - dn) <= thickness / 2) ++inside;
    }
    return double(inside) / double(samples) / thickness;
}

/// Count of planes equivalent to (h,k,l) under the full cubic point group,
/// modulo (h,k,l) == (-h,-k,-l), via explicit signed permutation matrices.
inline int family_size_bruteforce(int h, int k, int l) {
    std::array<int, 3> perm{0, 1, 2};
    std::sort(perm.begin(), perm.end());
    std::set<std::array<int, 3>> seen;
    const std::array<int, 3> in{h, k, l};
    do {
        for (int bits = 0; bits < 8; ++bits) {
            std::array<std::array<int, 3>, 3> mat{};
            for (int row = 0; row < 3; ++row) {
                mat[row][perm[row]] = (bits >> row) & 1 ? -1 : 1;
            }
            std::array<int, 3> out{};
            for (int row = 0; row < 3; ++row) {
                for (int col = 0; col < 3; ++col) out[row] += mat[row][col] * in[col];
            }
            // normalize: divide by gcd, then fix sign of first nonzero
            int g = std::gcd(std::gcd(std::abs(out[0]), std::abs(out[1])), std::abs(out[2]));
            for (auto& c : out) c /= g;
            for (int c : out) {
                if (c > 0) break;
                if (c < 0) {
                    for (auto& x : out) x = -x;
                    break;
                }
            }
            seen.insert(out);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return int(seen.size());
}

} // namespace oracles
