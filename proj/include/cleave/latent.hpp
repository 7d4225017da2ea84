#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "cleave/cube_slice.hpp"
#include "cleave/miller.hpp"
#include "cleave/shape.hpp"
#include "cleave/tolerances.hpp"

namespace cleave {

/// One candidate plane family for an observed fragment. Lower score is
/// better; the score is the signature distance at the best offset found,
/// so it is a deterministic geometric quantity, not a probability.
struct LatentHypothesis {
    PlaneFamily family;
    double best_offset = 0.0;
    double score = std::numeric_limits<double>::infinity();
};

struct ConsistencyVerdict {
    bool consistent = false;
    double residual = std::numeric_limits<double>::infinity();
    double threshold = 0.0;
};

struct AxesSummary {
    int axes_cut = 0;    // how many coordinate axes the plane intersects
    bool symmetric = false; // nonzero components all equal in magnitude
};

namespace detail {

/// Project a coplanar polygon into 2D without an index-typed plane; used on
/// slices coming from the float kernel during hypothesis scoring.
inline Polygon2 project_onto(const Polygon3& p, const Vec3& unit_normal) {
    Vec3 u;
    if (std::abs(unit_normal.x) > 1e-12 || std::abs(unit_normal.y) > 1e-12) {
        u = Vec3{-unit_normal.y, unit_normal.x, 0.0}.normalized();
    } else {
        u = {1, 0, 0};
    }
    const Vec3 w = unit_normal.cross(u);
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

inline double score_offset(const ShapeSignature& target, const MillerIndex& rep, const Vec3& unit_normal,
                           double d) {
    const auto poly = slice_cube(rep.direction(), d);
    if (!poly || poly->size() != target.n) return std::numeric_limits<double>::infinity();
    const ShapeSignature sig = signature(project_onto(*poly, unit_normal));
    return match(target, sig, std::numeric_limits<double>::infinity()).distance;
}

struct FamilyScore {
    double score = std::numeric_limits<double>::infinity();
    double offset = 0.0;
};

/// Best signature distance over the valid offset interval: a uniform grid
/// pass followed by golden-section refinement inside the best bracket. The
/// distance is piecewise smooth in d between vertex-count transitions, so
/// the local search converges once the grid has found the right piece.
inline FamilyScore score_family(const ShapeSignature& target, const MillerIndex& rep, int grid_points) {
    const auto [lo, hi] = valid_offset_range(rep);
    const Vec3 unit_normal = rep.unit_normal();
    const double span = hi - lo;

    FamilyScore best;
    int best_i = -1;
    for (int i = 0; i < grid_points; ++i) {
        const double d = lo + span * (i + 0.5) / grid_points;
        const double s = score_offset(target, rep, unit_normal, d);
        if (s < best.score) {
            best = {s, d};
            best_i = i;
        }
    }
    if (best_i < 0) return best;

    double a = lo + span * (best_i - 0.5) / grid_points;
    double b = lo + span * (best_i + 1.5) / grid_points;
    const double margin = span * 1e-12;
    a = std::max(a, lo + margin);
    b = std::min(b, hi - margin);

    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = score_offset(target, rep, unit_normal, x1);
    double f2 = score_offset(target, rep, unit_normal, x2);
    for (int it = 0; it < 80 && (b - a) > 1e-13 * span; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = score_offset(target, rep, unit_normal, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = score_offset(target, rep, unit_normal, x2);
        }
        const double f = std::min(f1, f2);
        const double x = f1 <= f2 ? x1 : x2;
        if (f < best.score) best = {f, x};
    }
    return best;
}

} // namespace detail

/// Rank plane families against an observed fragment. Families are
/// enumerated up to max_index under a uniform prior, scored independently
/// (parallel when n_threads > 1, merged deterministically), and sorted
/// ascending by score. Scores within the profile's tie resolution count as
/// tied and are ordered by lower max index component, then lexicographic
/// representative — the usual preference for low-index planes.
inline std::vector<LatentHypothesis> infer_latent(const Polygon2& fragment, int max_index,
                                                  int offsets_per_plane, int top_k,
                                                  const ToleranceProfile& profile = ToleranceProfile::exact(),
                                                  unsigned n_threads = 1) {
    const ShapeSignature target = signature(fragment); // throws on degenerate input
    const std::vector<PlaneFamily> families = enumerate_families(max_index);

    std::vector<LatentHypothesis> hyps(families.size());
    auto score_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto fs = detail::score_family(target, families[i].representative, offsets_per_plane);
            hyps[i] = {families[i], fs.offset, fs.score};
        }
    };
    if (n_threads <= 1 || families.size() < 2) {
        score_range(0, families.size());
    } else {
        const unsigned workers = std::min<unsigned>(n_threads, families.size());
        std::vector<std::thread> pool;
        const std::size_t chunk = (families.size() + workers - 1) / workers;
        for (unsigned t = 0; t < workers; ++t) {
            const std::size_t begin = t * chunk;
            const std::size_t end = std::min(families.size(), begin + chunk);
            if (begin < end) pool.emplace_back(score_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    std::sort(hyps.begin(), hyps.end(), [](const LatentHypothesis& a, const LatentHypothesis& b) {
        if (a.score != b.score) return a.score < b.score;
        const int ma = a.family.representative.max_abs(), mb = b.family.representative.max_abs();
        if (ma != mb) return ma < mb;
        return a.family.representative < b.family.representative;
    });

    // Near-tie clusters reorder by index preference.
    std::size_t i = 0;
    while (i < hyps.size()) {
        std::size_t j = i + 1;
        while (j < hyps.size() && hyps[j].score - hyps[i].score <= profile.tie_resolution) ++j;
        if (j - i > 1) {
            std::sort(hyps.begin() + i, hyps.begin() + j,
                      [](const LatentHypothesis& a, const LatentHypothesis& b) {
                          const int ma = a.family.representative.max_abs();
                          const int mb = b.family.representative.max_abs();
                          if (ma != mb) return ma < mb;
                          if (a.family.representative != b.family.representative) {
                              return a.family.representative < b.family.representative;
                          }
                          return a.score < b.score;
                      });
        }
        i = j;
    }

    if (top_k >= 0 && hyps.size() > std::size_t(top_k)) hyps.resize(top_k);
    return hyps;
}

/// Is this fragment explainable by this specific plane? The residual is the
/// same match distance infer_latent scores with; there is one code path.
inline ConsistencyVerdict check_consistency(const Polygon2& fragment, const CutPlane& plane,
                                            double threshold) {
    const auto poly = slice_cube(plane);
    if (!poly) throw empty_slice_error{};
    const MatchResult m = match(signature(fragment), signature(project(*poly, plane)), threshold);
    return {m.matched, m.distance, threshold};
}

/// Coarse qualitative view of a plane family: how many axes it cuts and
/// whether the cuts are symmetric. This is the level of description that
/// survives even when exact index values are ambiguous.
inline AxesSummary qualitative_axes(const MillerIndex& m) {
    AxesSummary s;
    int mag = 0;
    bool symmetric = true;
    for (int c : {m.h, m.k, m.l}) {
        if (c == 0) continue;
        ++s.axes_cut;
        if (mag == 0) {
            mag = std::abs(c);
        } else if (std::abs(c) != mag) {
            symmetric = false;
        }
    }
    s.symmetric = symmetric;
    return s;
}

inline AxesSummary qualitative_axes(const LatentHypothesis& h) {
    return qualitative_axes(h.family.representative);
}

} // namespace cleave
