#pragma once

#include <cstdint>
#include <vector>

#include "grassmatch/matrix.hpp"

namespace grassmatch {

// Bijection on {0..n-1}; map[i] is the image of i. Its matrix has a 1 at
// (i, map[i]), so permuting the columns of a cloud X is X * matrix().
struct Permutation {
    std::vector<std::int32_t> map;

    Permutation() = default;
    explicit Permutation(std::vector<std::int32_t> m) : map(std::move(m)) {}

    static Permutation identity(std::size_t n);

    std::size_t size() const { return map.size(); }
    std::int32_t operator()(std::size_t i) const { return map[i]; }

    bool is_valid() const;
    Permutation inverse() const;
    Matrix matrix() const;

    bool operator==(const Permutation& o) const { return map == o.map; }
};

} // namespace grassmatch
