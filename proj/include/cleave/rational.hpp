#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace cleave {

/// Exact rational on 64-bit numerator/denominator, always normalized
/// (gcd 1, denominator positive). Intermediate products run through
/// __int128 so cube-slicing arithmetic on small indices never overflows.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t v) : num_(v), den_(1) {} // NOLINT: implicit by design
    Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return raw(-num_, den_); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }

    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

private:
    using i128 = __int128;

    static Rational raw(std::int64_t n, std::int64_t d) {
        Rational r;
        r.num_ = n;
        r.den_ = d;
        return r;
    }

    static Rational make(i128 n, i128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (n > std::numeric_limits<std::int64_t>::max() || n < std::numeric_limits<std::int64_t>::min() ||
            d > std::numeric_limits<std::int64_t>::max()) {
            throw std::overflow_error("rational overflow");
        }
        return raw(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b != 0) {
            const i128 t = a % b;
            a = b;
            b = t;
        }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        *this = make(num_, den_);
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Best rational approximation p/q of x with q <= max_den, by continued
/// fractions. Returns nothing when even the best candidate misses x by
/// more than tol (relative to max(1,|x|)).
inline std::optional<Rational> rationalize(double x, std::int64_t max_den, double tol = 1e-9) {
    if (max_den < 1) return std::nullopt;
    const bool neg = x < 0;
    double v = neg ? -x : x;

    std::int64_t p_prev = 1, q_prev = 0; // h_{-1}/k_{-1}
    std::int64_t p = static_cast<std::int64_t>(v), q = 1;
    double frac = v - static_cast<double>(p);

    while (frac > 1e-15) {
        const double inv = 1.0 / frac;
        const auto a = static_cast<std::int64_t>(inv);
        frac = inv - static_cast<double>(a);
        // next convergent
        if (q_prev + a * q > max_den) break;
        const std::int64_t p_next = a * p + p_prev;
        const std::int64_t q_next = a * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        if (q == max_den) break;
    }

    const double approx = static_cast<double>(p) / static_cast<double>(q);
    const double scale = std::abs(x) > 1.0 ? std::abs(x) : 1.0;
    if (std::abs(approx - v) > tol * scale) return std::nullopt;
    return Rational(neg ? -p : p, q);
}

} // namespace cleave
