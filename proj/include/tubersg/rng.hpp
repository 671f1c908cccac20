#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace tubersg {

// The pinned random source for synthetic data. mt19937_64 is specified
// bit-exactly by the C++ standard; the distributions below are fixed here
// (stdlib distribution objects are implementation-defined), so identically
// seeded runs produce identical datasets on every platform:
//   uniform01 : (next() >> 11) * 2^-53                      -> [0, 1)
//   normal    : Box-Muller cosine branch, fresh pair each   -> N(0, 1)
//   below     : modulo rejection on the 64-bit stream       -> [0, bound)
class PinnedRng {
public:
    explicit PinnedRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

    double normal(double mean = 0.0, double stddev = 1.0) {
        const double u1 = 1.0 - uniform01();  // (0, 1], keeps log() finite
        const double u2 = uniform01();
        const double z = std::sqrt(-2.0 * std::log(u1)) *
                         std::cos(2.0 * std::numbers::pi * u2);
        return mean + stddev * z;
    }

    std::uint64_t below(std::uint64_t bound) {
        // Unbiased: reject the wrap-around remainder of the 2^64 range.
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer; chains a base seed with stream indices so each
// sample gets an independent, order-free substream.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

}  // namespace tubersg
