#include "grassmatch/permutation.hpp"

#include <algorithm>
#include <numeric>

namespace grassmatch {

Permutation Permutation::identity(std::size_t n) {
    Permutation p;
    p.map.resize(n);
    std::iota(p.map.begin(), p.map.end(), 0);
    return p;
}

bool Permutation::is_valid() const {
    std::vector<bool> seen(map.size(), false);
    for (const std::int32_t v : map) {
        if (v < 0 || static_cast<std::size_t>(v) >= map.size() || seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.map.resize(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        inv.map[static_cast<std::size_t>(map[i])] = static_cast<std::int32_t>(i);
    }
    return inv;
}

Matrix Permutation::matrix() const {
    Matrix m(map.size(), map.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        m(i, static_cast<std::size_t>(map[i])) = 1.0;
    }
    return m;
}

} // namespace grassmatch
