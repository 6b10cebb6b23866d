#pragma once

#include <array>
#include <cstdint>

namespace grassmatch {

// xoshiro256++ stream with splitmix64 seeding. Streams for parallel work are
// derived from (master seed, indices) by a splitmix chain, so every trial,
// grid cell and scenario owns a generator that does not depend on scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    // Derivation is a fold: each index advances a splitmix64 state. Distinct
    // index tuples give unrelated streams.
    static Rng derive(std::uint64_t master, std::uint64_t i0);
    static Rng derive(std::uint64_t master, std::uint64_t i0, std::uint64_t i1);
    static Rng derive(std::uint64_t master, std::uint64_t i0, std::uint64_t i1,
                      std::uint64_t i2);

    std::uint64_t next();

    // Uniform on [0,1), 53-bit resolution.
    double uniform();

    // Standard normal via Box-Muller; second deviate is cached.
    double normal();

    // Uniform integer in [0, bound), bound >= 1, rejection-free of modulo bias.
    std::uint64_t below(std::uint64_t bound);

private:
    std::array<std::uint64_t, 4> state_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

std::uint64_t splitmix64(std::uint64_t& state);

// Seed values for sub-streams, same fold as Rng::derive.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i0);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i0,
                          std::uint64_t i1);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t i0,
                          std::uint64_t i1, std::uint64_t i2);

} // namespace grassmatch
