#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ixp {

/// One splitmix64 step; the standard finalizer, used here to derive sub-seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Independent sub-seed for stream `stream` of a master seed.  Streams are
 * decorrelated by the splitmix64 finalizer, so per-region generators drawn
 * from consecutive stream ids are order-independent: generating regions in
 * any order (or in parallel) yields identical panels.
 */
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t s = master ^ (0x589965cc75374cc3ULL * (stream + 1));
    return splitmix64(s);
}

/**
 * Deterministic random source: mt19937_64 with explicitly constructed
 * uniforms and a Box–Muller normal, avoiding std::*_distribution whose
 * algorithms are implementation-defined.  Same seed => same stream of
 * doubles, bit for bit, on any conforming platform.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on (0, 1]: 53 random bits, never exactly zero.
    double uniform01() {
        return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * (uniform01() - 0x1.0p-53); }

    /// Standard normal via Box–Muller (pairs generated, second value cached).
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t next_u64() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/**
 * Halton low-discrepancy point,  dimension d < 4 uses prime bases 2,3,5,7.
 * index is 1-based; a seed-derived offset shifts the sequence so different
 * seeds explore different (still deterministic) start sets.
 */
inline double halton(std::uint64_t index, int dim) {
    static const int bases[4] = {2, 3, 5, 7};
    const int b = bases[dim & 3];
    double f = 1.0, r = 0.0;
    for (std::uint64_t i = index; i > 0; i /= static_cast<std::uint64_t>(b)) {
        f /= b;
        r += f * static_cast<double>(i % static_cast<std::uint64_t>(b));
    }
    return r;
}

}  // namespace ixp
