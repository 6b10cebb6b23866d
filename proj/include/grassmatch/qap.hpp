#pragma once

#include <cstdint>
#include <vector>

#include "grassmatch/assignment.hpp"
#include "grassmatch/grassmann.hpp"
#include "grassmatch/matrix.hpp"
#include "grassmatch/rng.hpp"

namespace grassmatch {

// Member of the Birkhoff polytope: nonnegative with unit row/column sums.
struct DoublyStochastic {
    Matrix matrix;

    std::size_t size() const { return matrix.rows; }
    // Max deviation of any row/column sum from 1 and most negative entry.
    double balance_error() const;
    double min_entry() const;
};

struct FaqOptions {
    std::size_t max_iters = 30;
    double tol = 1e-6; // relative objective change per iteration
};

struct QapTrialResult {
    DoublyStochastic relaxed;
    Permutation projected;
    double objective = 0.0; // trace value at the projected permutation
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace; // relaxed objective per iterate
};

// trace(P_Y S^T P_X S) for a permutation S; O(d^2 n) through the stored
// factors, O(n^2) off the dense matrices otherwise.
double qap_objective(const Projector& px, const Projector& py,
                     const Permutation& s);

// Sinkhorn-balanced Uniform(0,1)+0.1 matrix: interior point of the polytope
// with full support. 50 rounds or 1e-9 balance, whichever first.
DoublyStochastic random_doubly_stochastic(std::size_t n, Rng& rng);

// One Frank-Wolfe ascent of trace(P_Y S^T P_X S) over the Birkhoff polytope
// from the given start, followed by projection to the nearest permutation.
// The relaxed objective sequence is non-decreasing.
QapTrialResult faq_trial(const Projector& px, const Projector& py,
                         const DoublyStochastic& init, const FaqOptions& opts);

} // namespace grassmatch
