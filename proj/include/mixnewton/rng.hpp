#ifndef MIXNEWTON_RNG_HPP
#define MIXNEWTON_RNG_HPP

#include <cstdint>

namespace mixnewton {

// Deterministic, platform-independent PRNG (xoshiro256++ seeded via splitmix64).
// Every multistart kernel derives its own stream from (seed, salt, index), so
// results do not depend on thread scheduling.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    static Rng from(std::uint64_t seed, std::uint64_t salt = 0, std::uint64_t index = 0) {
        std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + salt * 0x3c6ef372fe94f82bULL);
        s ^= (index + 1) * 0xa54ff53a5f1d36f1ULL;
        Rng r;
        for (auto& w : r.state_) w = splitmix64(s);
        return r;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0,1) with 53 bits, identical on every conforming platform.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Log-uniform over [lo, hi], lo > 0.
    double log_uniform(double lo, double hi);

    double angle() { return uniform() * 6.283185307179586476925286766559; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4] = {1, 2, 3, 4};
};

} // namespace mixnewton

#include <cmath>

namespace mixnewton {
inline double Rng::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}
} // namespace mixnewton

#endif
