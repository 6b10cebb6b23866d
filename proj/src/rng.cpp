#include "grassmatch/rng.hpp"

#include <cmath>

namespace grassmatch {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}
} // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& s : state_) s = splitmix64(sm);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i0) {
    std::uint64_t sm = master;
    splitmix64(sm);
    sm ^= i0;
    return splitmix64(sm);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i0,
                          std::uint64_t i1) {
    return derive_seed(derive_seed(master, i0), i1);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i0,
                          std::uint64_t i1, std::uint64_t i2) {
    return derive_seed(derive_seed(master, i0, i1), i2);
}

Rng Rng::derive(std::uint64_t master, std::uint64_t i0) {
    return Rng(derive_seed(master, i0));
}

Rng Rng::derive(std::uint64_t master, std::uint64_t i0, std::uint64_t i1) {
    return Rng(derive_seed(master, i0, i1));
}

Rng Rng::derive(std::uint64_t master, std::uint64_t i0, std::uint64_t i1,
                std::uint64_t i2) {
    return Rng(derive_seed(master, i0, i1, i2));
}

std::uint64_t Rng::next() {
    // xoshiro256++
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

double Rng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    // Box-Muller; u1 bounded away from 0 so log stays finite.
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_normal_ = r * std::sin(a);
    has_cached_normal_ = true;
    return r * std::cos(a);
}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Rejection sampling over the largest multiple of bound.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = 0;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

} // namespace grassmatch
