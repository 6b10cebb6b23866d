#pragma once

// Test-side oracles, deliberately independent of the library's numerical
// paths: naive triple-loop products, power iteration, adjugate inverses and
// a small XML well-formedness scanner.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "grassmatch/grassmann.hpp"
#include "grassmatch/matrix.hpp"
#include "grassmatch/permutation.hpp"
#include "grassmatch/rng.hpp"

namespace testsupport {

using grassmatch::Matrix;
using grassmatch::Permutation;
using grassmatch::PointCloud;
using grassmatch::Rng;

inline Matrix mat_mul_naive(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < b.cols; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) acc += a(i, k) * b(k, j);
            c(i, j) = acc;
        }
    }
    return c;
}

inline double trace_naive(const Matrix& a) {
    double t = 0.0;
    for (std::size_t i = 0; i < std::min(a.rows, a.cols); ++i) t += a(i, i);
    return t;
}

inline Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng,
                            bool gaussian = false) {
    Matrix m(r, c);
    for (double& x : m.data) x = gaussian ? rng.normal() : rng.uniform();
    return m;
}

inline PointCloud random_cloud_t(std::size_t d, std::size_t n, Rng& rng) {
    return PointCloud(random_matrix(d, n, rng));
}

// Spectral norm by power iteration on A^T A; independent of the SVD code.
inline double power_iteration_norm(const Matrix& a, int iters = 2000) {
    const std::size_t n = a.cols;
    std::vector<double> v(n);
    Rng rng(12345);
    for (double& x : v) x = rng.normal();
    double norm_sq = 0.0;
    for (int it = 0; it < iters; ++it) {
        // w = A v, v' = A^T w
        std::vector<double> w(a.rows, 0.0);
        for (std::size_t i = 0; i < a.rows; ++i) {
            for (std::size_t j = 0; j < n; ++j) w[i] += a(i, j) * v[j];
        }
        std::vector<double> next(n, 0.0);
        for (std::size_t i = 0; i < a.rows; ++i) {
            for (std::size_t j = 0; j < n; ++j) next[j] += a(i, j) * w[i];
        }
        const double len = std::sqrt(
            std::inner_product(next.begin(), next.end(), next.begin(), 0.0));
        if (len == 0.0) return 0.0;
        for (double& x : next) x /= len;
        norm_sq = len;
        v = std::move(next);
    }
    return std::sqrt(norm_sq);
}

// tr(P_Y S^T P_X S) via explicit dense products.
inline double qap_objective_naive(const Matrix& px, const Matrix& py,
                                  const Permutation& s) {
    const Matrix sm = s.matrix();
    const Matrix st = sm.transposed();
    return trace_naive(mat_mul_naive(mat_mul_naive(py, st),
                                     mat_mul_naive(px, sm)));
}

inline void for_each_permutation(std::size_t n,
                                 const std::function<void(const Permutation&)>& fn) {
    std::vector<std::int32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    do {
        fn(Permutation(idx));
    } while (std::next_permutation(idx.begin(), idx.end()));
}

inline Matrix invert3x3_adjugate(const Matrix& a) {
    if (a.rows != 3 || a.cols != 3) throw std::invalid_argument("need 3x3");
    const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                       a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                       a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    Matrix inv(3, 3);
    inv(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) / det;
    inv(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) / det;
    inv(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) / det;
    inv(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / det;
    inv(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) / det;
    inv(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) / det;
    inv(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) / det;
    inv(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) / det;
    inv(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / det;
    return inv;
}

// Minimal well-formedness scan: single root, balanced tags, quoted
// attributes, no stray '<'. Good enough to vet generated SVG.
inline bool xml_well_formed(const std::string& text) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    std::vector<std::string> stack;
    bool seen_root = false;
    auto skip_ws = [&](std::size_t& p) {
        while (p < n && std::isspace(static_cast<unsigned char>(text[p]))) ++p;
    };
    while (i < n) {
        if (text[i] != '<') {
            if (text[i] == '>') return false;
            ++i;
            continue;
        }
        if (text.compare(i, 4, "<!--") == 0) {
            const auto end = text.find("-->", i + 4);
            if (end == std::string::npos) return false;
            i = end + 3;
            continue;
        }
        if (text.compare(i, 2, "<?") == 0) {
            const auto end = text.find("?>", i + 2);
            if (end == std::string::npos) return false;
            i = end + 2;
            continue;
        }
        const bool closing = i + 1 < n && text[i + 1] == '/';
        std::size_t p = i + (closing ? 2 : 1);
        std::size_t name_start = p;
        while (p < n && (std::isalnum(static_cast<unsigned char>(text[p])) ||
                         text[p] == ':' || text[p] == '-' || text[p] == '_')) {
            ++p;
        }
        if (p == name_start) return false;
        const std::string name = text.substr(name_start, p - name_start);
        if (closing) {
            skip_ws(p);
            if (p >= n || text[p] != '>') return false;
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
            i = p + 1;
            continue;
        }
        // attributes
        bool self_closing = false;
        while (p < n) {
            skip_ws(p);
            if (p < n && text[p] == '/') {
                self_closing = true;
                ++p;
                skip_ws(p);
            }
            if (p < n && text[p] == '>') break;
            if (self_closing) return false;
            std::size_t attr_start = p;
            while (p < n && text[p] != '=' && text[p] != '>' &&
                   !std::isspace(static_cast<unsigned char>(text[p]))) {
                ++p;
            }
            if (p == attr_start || p >= n || text[p] != '=') return false;
            ++p;
            if (p >= n || (text[p] != '"' && text[p] != '\'')) return false;
            const char quote = text[p];
            ++p;
            while (p < n && text[p] != quote) {
                if (text[p] == '<') return false;
                ++p;
            }
            if (p >= n) return false;
            ++p;
        }
        if (p >= n) return false;
        i = p + 1;
        if (!self_closing) {
            if (stack.empty() && seen_root) return false; // second root
            stack.push_back(name);
            seen_root = true;
        } else if (stack.empty()) {
            if (seen_root) return false;
            seen_root = true;
        }
    }
    return stack.empty() && seen_root;
}

inline std::size_t count_occurrences(const std::string& text,
                                     const std::string& needle) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

} // namespace testsupport
