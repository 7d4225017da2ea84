#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "cleave/errors.hpp"
#include "cleave/rational.hpp"
#include "cleave/vec.hpp"

namespace cleave {

/// Integer plane-orientation indices (h k l), kept in canonical form:
/// gcd(|h|,|k|,|l|) = 1 and the first nonzero component positive. The
/// canonical form identifies (h,k,l) with (-h,-k,-l): both name the same
/// stack of parallel planes, and a cube cross-section depends only on the
/// unsigned orientation. The sign convention itself is arbitrary; it is
/// fixed here so printed indices and signatures are stable across runs.
struct MillerIndex {
    int h = 0;
    int k = 0;
    int l = 0;

    int operator[](int i) const { return i == 0 ? h : (i == 1 ? k : l); }

    int max_abs() const { return std::max({std::abs(h), std::abs(k), std::abs(l)}); }

    Vec3 direction() const { return {double(h), double(k), double(l)}; }
    Vec3 unit_normal() const { return direction().normalized(); }

    friend auto operator<=>(const MillerIndex&, const MillerIndex&) = default;
};

/// Reduce an arbitrary nonzero integer triple to canonical form.
/// Throws zero_index_error on (0,0,0).
inline MillerIndex canonicalize(int h, int k, int l) {
    if (h == 0 && k == 0 && l == 0) throw zero_index_error{};
    int g = std::gcd(std::gcd(std::abs(h), std::abs(k)), std::abs(l));
    h /= g;
    k /= g;
    l /= g;
    const int first = h != 0 ? h : (k != 0 ? k : l);
    if (first < 0) {
        h = -h;
        k = -k;
        l = -l;
    }
    return {h, k, l};
}

inline MillerIndex canonicalize(const std::array<int, 3>& t) { return canonicalize(t[0], t[1], t[2]); }

inline bool is_canonical(const MillerIndex& m) {
    if (m.h == 0 && m.k == 0 && m.l == 0) return false;
    return canonicalize(m.h, m.k, m.l) == m;
}

/// Axis intercepts of a plane in lattice units (a = b = c = 1).
/// infinity() marks a plane parallel to that axis.
struct Intercepts {
    double x0 = std::numeric_limits<double>::infinity();
    double y0 = std::numeric_limits<double>::infinity();
    double z0 = std::numeric_limits<double>::infinity();

    static constexpr double inf() { return std::numeric_limits<double>::infinity(); }
};

/// Miller indices from axis intercepts: the reciprocals of the intercepts,
/// scaled to the smallest integer triple. Intercepts must be positive or
/// infinite. Rationalization of each reciprocal is bounded by max_den;
/// reciprocals that admit no such fraction raise non_rational_intercepts_error.
inline MillerIndex from_intercepts(const Intercepts& i, std::int64_t max_den = 64) {
    const std::array<double, 3> raw{i.x0, i.y0, i.z0};
    std::array<Rational, 3> recip{};
    bool any_finite = false;
    for (int a = 0; a < 3; ++a) {
        const double v = raw[a];
        if (std::isinf(v)) continue; // parallel axis: index 0
        if (!(v > 0.0)) throw non_rational_intercepts_error("intercepts must be strictly positive or infinite");
        any_finite = true;
        const auto r = rationalize(1.0 / v, max_den);
        if (!r) {
            throw non_rational_intercepts_error(
                "no rational reciprocal with denominator <= " + std::to_string(max_den));
        }
        recip[a] = *r;
    }
    if (!any_finite) throw all_parallel_error{};

    // Common integer scaling: multiply by the lcm of the denominators.
    std::int64_t lcm = 1;
    for (const auto& r : recip) lcm = std::lcm(lcm, r.den());
    std::array<std::int64_t, 3> scaled{};
    for (int a = 0; a < 3; ++a) scaled[a] = recip[a].num() * (lcm / recip[a].den());
    if (std::max({std::llabs(scaled[0]), std::llabs(scaled[1]), std::llabs(scaled[2])}) >
        std::numeric_limits<int>::max()) {
        throw non_rational_intercepts_error("intercept reciprocals scale past integer range");
    }
    return canonicalize(int(scaled[0]), int(scaled[1]), int(scaled[2]));
}

/// Intercepts of a canonical index with all components nonzero: (1/h, 1/k, 1/l).
inline Intercepts intercepts_of(const MillerIndex& m) {
    auto rec = [](int c) {
        return c == 0 ? Intercepts::inf() : 1.0 / double(c);
    };
    return {rec(m.h), rec(m.k), rec(m.l)};
}

namespace detail {

// The 48 signed permutations of the cube axes: 6 axis permutations x 8 sign
// choices. Op i maps v to w with w[j] = sign[j] * v[perm[j]].
struct SignedPermutation {
    std::array<int, 3> perm;
    std::array<int, 3> sign;

    std::array<int, 3> apply(const std::array<int, 3>& v) const {
        return {sign[0] * v[perm[0]], sign[1] * v[perm[1]], sign[2] * v[perm[2]]};
    }
};

inline const std::vector<SignedPermutation>& cube_signed_permutations() {
    static const std::vector<SignedPermutation> ops = [] {
        std::vector<SignedPermutation> out;
        std::array<int, 3> p{0, 1, 2};
        std::sort(p.begin(), p.end());
        do {
            for (int bits = 0; bits < 8; ++bits) {
                SignedPermutation op;
                op.perm = p;
                op.sign = {bits & 1 ? -1 : 1, bits & 2 ? -1 : 1, bits & 4 ? -1 : 1};
                out.push_back(op);
            }
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }();
    return ops;
}

} // namespace detail

/// All planes equivalent to a given one under the cubic symmetry group,
/// modulo the antipodal identification. With that identification {100}
/// has 3 members, {110} 6, {111} 4, {211} 12.
struct PlaneFamily {
    MillerIndex representative;
    std::vector<MillerIndex> members;

    bool contains(const MillerIndex& m) const {
        return std::find(members.begin(), members.end(), m) != members.end();
    }

    friend bool operator==(const PlaneFamily& a, const PlaneFamily& b) {
        return a.representative == b.representative;
    }
};

inline PlaneFamily family_of(const MillerIndex& m) {
    const std::array<int, 3> v{m.h, m.k, m.l};
    std::vector<MillerIndex> members;
    for (const auto& op : detail::cube_signed_permutations()) {
        const MillerIndex c = canonicalize(op.apply(v));
        if (std::find(members.begin(), members.end(), c) == members.end()) members.push_back(c);
    }
    std::sort(members.begin(), members.end());

    // Representative: among members whose components already satisfy
    // |h| >= |k| >= |l|, the lexicographically greatest. That member always
    // exists and has nonnegative components, e.g. (2,1,1) for the family of
    // (1,1,2).
    MillerIndex rep{};
    bool have = false;
    for (const auto& cand : members) {
        if (std::abs(cand.h) >= std::abs(cand.k) && std::abs(cand.k) >= std::abs(cand.l)) {
            if (!have || rep < cand) {
                rep = cand;
                have = true;
            }
        }
    }
    return {rep, std::move(members)};
}

/// Text forms. "(1-10)" is (1,-1,0) — a leading '-' plays the overbar.
/// "{hkl}" names the family of (hkl).
inline std::string format_index(const MillerIndex& m, char open = '(', char close = ')') {
    std::string s;
    s += open;
    for (int c : {m.h, m.k, m.l}) s += std::to_string(c);
    s += close;
    return s;
}

inline std::string format_family(const PlaneFamily& f) { return format_index(f.representative, '{', '}'); }
inline std::string format_family_of(const MillerIndex& m) { return format_family(family_of(m)); }

namespace detail {

inline std::vector<int> parse_index_components(const std::string& body) {
    // Either separator-delimited integers ("1, -1, 0") or a run of single
    // digits with optional leading '-' per digit ("1-10").
    std::vector<int> comps;
    const bool separated = body.find_first_of(", \t") != std::string::npos;
    if (separated) {
        std::string token;
        auto flush = [&] {
            if (token.empty()) return;
            size_t pos = 0;
            const int v = std::stoi(token, &pos);
            if (pos != token.size()) throw malformed_index_error("bad index component: " + token);
            comps.push_back(v);
            token.clear();
        };
        for (char ch : body) {
            if (ch == ',' || ch == ' ' || ch == '\t') {
                flush();
            } else {
                token += ch;
            }
        }
        flush();
    } else {
        bool minus = false;
        for (char ch : body) {
            if (ch == '-') {
                if (minus) throw malformed_index_error("doubled '-' in index");
                minus = true;
            } else if (std::isdigit(static_cast<unsigned char>(ch))) {
                comps.push_back(minus ? -(ch - '0') : (ch - '0'));
                minus = false;
            } else {
                throw malformed_index_error(std::string("unexpected character '") + ch + "' in index");
            }
        }
        if (minus) throw malformed_index_error("trailing '-' in index");
    }
    return comps;
}

} // namespace detail

/// Parse "(hkl)", "{hkl}" or bare "hkl" notation and canonicalize.
inline MillerIndex parse_index(const std::string& text) {
    std::string s = text;
    // trim
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s.size() >= 2 && ((s.front() == '(' && s.back() == ')') || (s.front() == '{' && s.back() == '}'))) {
        s = s.substr(1, s.size() - 2);
    }
    if (s.empty()) throw malformed_index_error("empty index");
    const auto comps = detail::parse_index_components(s);
    if (comps.size() != 3) {
        throw malformed_index_error("expected 3 index components, got " + std::to_string(comps.size()));
    }
    if (comps[0] == 0 && comps[1] == 0 && comps[2] == 0) throw malformed_index_error("(000) is not a plane");
    return canonicalize(comps[0], comps[1], comps[2]);
}

/// Canonical indices with every |component| <= max_index, one per orientation.
inline std::vector<MillerIndex> enumerate_canonical_indices(int max_index) {
    std::vector<MillerIndex> out;
    for (int h = -max_index; h <= max_index; ++h) {
        for (int k = -max_index; k <= max_index; ++k) {
            for (int l = -max_index; l <= max_index; ++l) {
                if (h == 0 && k == 0 && l == 0) continue;
                const MillerIndex c = canonicalize(h, k, l);
                if (c.max_abs() > max_index) continue;
                if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Distinct families with representative components <= max_index,
/// sorted by (max component, representative).
inline std::vector<PlaneFamily> enumerate_families(int max_index) {
    std::vector<PlaneFamily> out;
    for (const auto& m : enumerate_canonical_indices(max_index)) {
        PlaneFamily f = family_of(m);
        const bool seen = std::any_of(out.begin(), out.end(),
                                      [&](const PlaneFamily& g) { return g.representative == f.representative; });
        if (!seen) out.push_back(std::move(f));
    }
    std::sort(out.begin(), out.end(), [](const PlaneFamily& a, const PlaneFamily& b) {
        const int ma = a.representative.max_abs(), mb = b.representative.max_abs();
        if (ma != mb) return ma < mb;
        return a.representative < b.representative;
    });
    return out;
}

} // namespace cleave
