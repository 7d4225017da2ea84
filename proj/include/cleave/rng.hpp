#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace cleave {

/// Deterministic splitmix64 stream. The standard library engines are
/// portable but its distributions are not, and dataset bytes must reproduce
/// across platforms and thread counts, so both the engine and the
/// distributions are pinned here. Per-sample streams are derived from
/// (master seed, sample id), which makes generation order irrelevant.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    static Rng derive(std::uint64_t master_seed, const std::string& stream_id) {
        // FNV-1a over the id, folded into the master seed.
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : stream_id) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        Rng r(master_seed ^ h);
        r.next(); // decouple nearby seeds
        return r;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        // modulo bias is negligible for the small n used here, but bounding
        // by rejection keeps the stream exactly uniform
        const std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Box-Muller, explicit formulas so the byte stream is pinned.
    double normal(double mu = 0.0, double sigma = 1.0) {
        if (have_spare_) {
            have_spare_ = false;
            return mu + sigma * spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return mu + sigma * r * std::cos(a);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace cleave
