#include "grassmatch/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "grassmatch/errors.hpp"
#include "grassmatch/kernels.hpp"

namespace grassmatch {

namespace {

// Dijkstra shortest augmenting path on the dense bipartite graph with dual
// potentials (costs are negated profits, folded into the scan kernel).
// Every column is settled at most once per augmentation, so each call
// terminates after <= n rounds.
struct LapWorkspace {
    std::vector<double> u, v;            // dual potentials
    std::vector<double> dist;            // tentative path costs
    std::vector<double> origin;          // predecessor row per column
    std::vector<double> done;            // 0 active, 1 settled
    std::vector<std::int32_t> col4row, row4col;
    std::vector<std::int32_t> scanned_rows, settled_cols;

    explicit LapWorkspace(std::size_t n)
        : u(n, 0.0), v(n, 0.0), dist(n), origin(n), done(n),
          col4row(n, -1), row4col(n, -1) {
        scanned_rows.reserve(n);
        settled_cols.reserve(n);
    }
};

} // namespace

Permutation lap_max(const Matrix& profit) {
    if (profit.rows != profit.cols) {
        throw SizeMismatch("lap_max: matrix is " + std::to_string(profit.rows) +
                           "x" + std::to_string(profit.cols));
    }
    const std::size_t n = profit.rows;
    if (n == 0) return Permutation{};
    const auto& k = kernels::active();
    if (!k.all_finite(profit.data.data(), profit.data.size())) {
        throw NonFinite("lap_max: non-finite profit entry");
    }

    const double inf = std::numeric_limits<double>::infinity();
    LapWorkspace ws(n);

    for (std::size_t cur_row = 0; cur_row < n; ++cur_row) {
        std::fill(ws.dist.begin(), ws.dist.end(), inf);
        std::fill(ws.origin.begin(), ws.origin.end(), -1.0);
        std::fill(ws.done.begin(), ws.done.end(), 0.0);
        ws.scanned_rows.clear();
        ws.settled_cols.clear();

        double min_val = 0.0;
        std::int32_t i = static_cast<std::int32_t>(cur_row);
        std::int64_t sink = -1;
        while (sink < 0) {
            ws.scanned_rows.push_back(i);
            const kernels::ScanHit hit = k.lap_scan(
                profit.row(static_cast<std::size_t>(i)), ws.v.data(),
                ws.done.data(), min_val - ws.u[static_cast<std::size_t>(i)],
                ws.dist.data(), ws.origin.data(), static_cast<double>(i), n);
            if (hit.column < 0) {
                throw NonFinite("lap_max: no reachable column");
            }
            min_val = hit.value;
            const auto j = static_cast<std::size_t>(hit.column);
            ws.done[j] = 1.0;
            ws.settled_cols.push_back(static_cast<std::int32_t>(hit.column));
            if (ws.row4col[j] < 0) {
                sink = hit.column;
            } else {
                i = ws.row4col[j];
            }
        }

        ws.u[cur_row] += min_val;
        for (const std::int32_t r : ws.scanned_rows) {
            if (static_cast<std::size_t>(r) == cur_row) continue;
            ws.u[r] += min_val - ws.dist[static_cast<std::size_t>(ws.col4row[r])];
        }
        for (const std::int32_t j : ws.settled_cols) {
            ws.v[j] -= min_val - ws.dist[static_cast<std::size_t>(j)];
        }

        auto j = static_cast<std::int32_t>(sink);
        while (true) {
            const auto r = static_cast<std::int32_t>(ws.origin[static_cast<std::size_t>(j)]);
            ws.row4col[static_cast<std::size_t>(j)] = r;
            std::swap(ws.col4row[static_cast<std::size_t>(r)], j);
            if (static_cast<std::size_t>(r) == cur_row) break;
        }
    }

    return Permutation(std::move(ws.col4row));
}

Permutation brute_force_lap(const Matrix& profit) {
    if (profit.rows != profit.cols) {
        throw SizeMismatch("brute_force_lap: matrix is " +
                           std::to_string(profit.rows) + "x" +
                           std::to_string(profit.cols));
    }
    const std::size_t n = profit.rows;
    if (n > 9) {
        throw TooLarge("brute_force_lap: n = " + std::to_string(n) + " > 9");
    }
    if (n == 0) return Permutation{};
    if (!profit.all_finite()) {
        throw NonFinite("brute_force_lap: non-finite profit entry");
    }

    std::vector<std::int32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::int32_t> best = idx;
    double best_value = -std::numeric_limits<double>::infinity();
    do {
        double value = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            value += profit(i, static_cast<std::size_t>(idx[i]));
        }
        // next_permutation enumerates in lexicographic order, so strict
        // improvement keeps the lexicographically smallest argmax.
        if (value > best_value) {
            best_value = value;
            best = idx;
        }
    } while (std::next_permutation(idx.begin(), idx.end()));

    return Permutation(std::move(best));
}

double assignment_value(const Matrix& profit, const Permutation& p) {
    double value = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        value += profit(i, static_cast<std::size_t>(p.map[i]));
    }
    return value;
}

} // namespace grassmatch
