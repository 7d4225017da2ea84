#include <catch2/catch_amalgamated.hpp>

#include "cleave/cube_slice.hpp"
#include "cleave/rng.hpp"
#include "oracles.hpp"

using namespace cleave;

namespace {

bool cyclically_equal(const std::vector<Vec3>& got, const std::vector<Vec3>& want, double tol) {
    if (got.size() != want.size()) return false;
    const std::size_t n = got.size();
    for (std::size_t off = 0; off < n; ++off) {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            ok = distance(got[(i + off) % n], want[i]) <= tol;
        }
        if (ok) return true;
    }
    return false;
}

double hausdorff(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
    double worst = 0;
    for (const auto& p : a) {
        double best = 1e300;
        for (const auto& q : b) best = std::min(best, distance(p, q));
        worst = std::max(worst, best);
    }
    for (const auto& p : b) {
        double best = 1e300;
        for (const auto& q : a) best = std::min(best, distance(p, q));
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

TEST_CASE("axis-aligned cut is the expected square") {
    const auto poly = slice_cube({{1, 0, 0}, Rational(1, 2)});
    REQUIRE(poly.has_value());
    REQUIRE(poly->size() == 4);
    const std::vector<Vec3> want{{0.5, 0, 0}, {0.5, 1, 0}, {0.5, 1, 1}, {0.5, 0, 1}};
    CHECK(cyclically_equal(poly->vertices, want, 1e-12));
}

TEST_CASE("corner cut of (111) is the expected triangle") {
    const auto poly = slice_cube({{1, 1, 1}, Rational(1, 2)});
    REQUIRE(poly.has_value());
    REQUIRE(poly->size() == 3);
    CHECK(oracles::same_vertex_set(poly->vertices, {{0.5, 0, 0}, {0, 0.5, 0}, {0, 0, 0.5}}, 1e-12));
}

TEST_CASE("(111) at the cube center is a regular hexagon") {
    const auto poly = slice_cube({{1, 1, 1}, Rational(3, 2)});
    REQUIRE(poly.has_value());
    REQUIRE(poly->size() == 6);
    const double side = std::sqrt(2.0) / 2.0;
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(distance(poly->vertices[i], poly->vertices[(i + 1) % 6]) == Catch::Approx(side).margin(1e-12));
    }
}

TEST_CASE("offsets outside the cube give no slice") {
    CHECK_FALSE(slice_cube({{1, 1, 1}, Rational(16, 5)}).has_value()); // d = 3.2
    CHECK_FALSE(slice_cube({{1, 0, 0}, Rational(-1, 10)}).has_value());
}

TEST_CASE("vertex and edge contacts collapse to empty") {
    // plane through the (1,1,1) corner only
    CHECK_FALSE(slice_cube({{1, 1, 1}, Rational(3)}).has_value());
    CHECK_FALSE(slice_cube({{1, 1, 1}, Rational(0)}).has_value());
    // plane containing the x=1,y=1 edge only
    CHECK_FALSE(slice_cube({{1, 1, 0}, Rational(2)}).has_value());
}

TEST_CASE("winding is counterclockwise about the +normal side") {
    for (const auto& m : enumerate_canonical_indices(2)) {
        const auto [lo, hi] = valid_offset_range(m);
        const Rational d = Rational(rationalize((lo + hi) / 2 + 0.1 * (hi - lo), 1 << 20).value());
        const auto poly = slice_cube({m, d});
        if (!poly) continue;
        Vec3 area_vec{};
        for (std::size_t i = 1; i + 1 < poly->size(); ++i) {
            area_vec = area_vec +
                       (poly->vertices[i] - poly->vertices[0]).cross(poly->vertices[i + 1] - poly->vertices[0]);
        }
        CHECK(area_vec.dot(m.direction()) > 0);
    }
}

TEST_CASE("every vertex lies on the plane and inside the cube") {
    Rng rng(20240811);
    const auto indices = enumerate_canonical_indices(3);
    for (int trial = 0; trial < 500; ++trial) {
        const MillerIndex m = indices[rng.uniform_int(indices.size())];
        const auto [lo, hi] = valid_offset_range(m);
        const double d = lo + (hi - lo) * rng.uniform(0.01, 0.99);
        const auto poly = slice_cube(m.direction(), d);
        if (!poly) continue;
        REQUIRE(poly->size() >= 3);
        REQUIRE(poly->size() <= 6);
        for (const auto& v : poly->vertices) {
            CHECK(std::abs(m.direction().dot(v) - d) <= 1e-7);
            CHECK(v.x >= -1e-9);
            CHECK(v.x <= 1 + 1e-9);
            CHECK(v.y >= -1e-9);
            CHECK(v.y <= 1 + 1e-9);
            CHECK(v.z >= -1e-9);
            CHECK(v.z <= 1 + 1e-9);
        }
    }
}

TEST_CASE("exact slices match the halfspace-clipping oracle") {
    Rng rng(7);
    const auto indices = enumerate_canonical_indices(3);
    int compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const MillerIndex m = indices[rng.uniform_int(indices.size())];
        const auto [lo, hi] = valid_offset_range(m);
        // dyadic offset keeps the rational kernel exact
        const double frac = double(1 + rng.uniform_int(4094)) / 4096.0;
        const Rational d = Rational(lo) + Rational(int(frac * 4096), 4096) * Rational(int(hi - lo));
        const auto poly = slice_cube({m, d});
        const auto ref = oracles::clip_slice(m.direction(), d.to_double());
        if (!poly) {
            CHECK(oracles::polygon_area3(ref) <= 1e-9);
            continue;
        }
        ++compared;
        REQUIRE(ref.size() == poly->size());
        CHECK(oracles::same_vertex_set(poly->vertices, ref, 1e-7));
        CHECK(polygon_area(*poly) == Catch::Approx(oracles::polygon_area3(ref)).margin(1e-9));
    }
    CHECK(compared > 250);
}

TEST_CASE("slicing commutes with the cube symmetries") {
    using oracles::same_vertex_set;
    const std::vector<std::pair<MillerIndex, double>> cases{
        {{1, 1, 1}, 0.7}, {{2, 1, 0}, 1.3}, {{2, 1, 1}, 1.9}, {{1, 1, 0}, 0.9}};
    for (const auto& [m, d] : cases) {
        const auto base = slice_cube(m.direction(), d);
        REQUIRE(base.has_value());
        for (const auto& op : detail::cube_signed_permutations()) {
            // affine cube symmetry: w = S x + t with t restoring [0,1]^3
            Vec3 t{op.sign[0] < 0 ? 1.0 : 0.0, op.sign[1] < 0 ? 1.0 : 0.0, op.sign[2] < 0 ? 1.0 : 0.0};
            auto apply = [&](const Vec3& x) {
                const std::array<double, 3> xs{x.x, x.y, x.z};
                return Vec3{op.sign[0] * xs[op.perm[0]] + t.x, op.sign[1] * xs[op.perm[1]] + t.y,
                            op.sign[2] * xs[op.perm[2]] + t.z};
            };
            const std::array<int, 3> mv{m.h, m.k, m.l};
            const auto nv = op.apply(mv);
            const Vec3 n2{double(nv[0]), double(nv[1]), double(nv[2])};
            const double d2 = d + n2.dot(t);
            const auto mapped = slice_cube(n2, d2);
            REQUIRE(mapped.has_value());
            std::vector<Vec3> transformed;
            transformed.reserve(base->size());
            for (const auto& v : base->vertices) transformed.push_back(apply(v));
            CHECK(same_vertex_set(transformed, mapped->vertices, 1e-9));
        }
    }
}

TEST_CASE("slices vary continuously in the offset away from transitions") {
    const MillerIndex m{1, 1, 1};
    Rng rng(99);
    for (int i = 0; i < 40; ++i) {
        const double d = rng.uniform(0.05, 2.95);
        if (std::abs(d - 1.0) < 0.01 || std::abs(d - 2.0) < 0.01) continue;
        const auto a = slice_cube(m.direction(), d);
        const auto b = slice_cube(m.direction(), d + 1e-6);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(hausdorff(a->vertices, b->vertices) < 1e-4);
    }
}

TEST_CASE("shoelace area agrees with Monte-Carlo slab estimates") {
    Rng rng(123);
    const auto indices = enumerate_canonical_indices(2);
    for (int trial = 0; trial < 5; ++trial) {
        const MillerIndex m = indices[rng.uniform_int(indices.size())];
        const auto [lo, hi] = valid_offset_range(m);
        const double d = lo + (hi - lo) * rng.uniform(0.25, 0.75);
        const auto poly = slice_cube(m.direction(), d);
        REQUIRE(poly.has_value());
        const double area = polygon_area(*poly);
        const double mc = oracles::mc_slab_area(m.direction(), d, 0.05, 2'000'000, 1000 + trial);
        CHECK(mc == Catch::Approx(area).epsilon(0.01));
    }
}

TEST_CASE("plane_patch_mesh bundles wireframe and facet") {
    const auto scene = plane_patch_mesh({{1, 0, 0}, Rational(1, 2)});
    CHECK(scene.wire_edges.size() == 12);
    CHECK(scene.facet.size() == 4);

    const auto tri = plane_patch_mesh({{1, 1, 1}, Rational(1)});
    REQUIRE(tri.facet.size() == 3);
    CHECK(oracles::same_vertex_set(tri.facet.vertices, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 1e-12));

    const auto ref = oracles::clip_slice(Vec3{1, 1, 2}, 1.0);
    const auto scene2 = plane_patch_mesh({canonicalize(1, 1, 2), Rational(1)});
    CHECK(scene2.facet.size() == ref.size());

    CHECK_THROWS_AS(plane_patch_mesh({{1, 1, 1}, Rational(9)}), empty_slice_error);
}
