#include <doctest.h>

#include <cmath>
#include <limits>

#include "grassmatch/assignment.hpp"
#include "grassmatch/errors.hpp"
#include "grassmatch/synth.hpp"
#include "support.hpp"

using namespace grassmatch;
using namespace testsupport;

TEST_CASE("identity profit is solved by the identity") {
    const Matrix eye = Matrix::identity(7);
    const Permutation p = lap_max(eye);
    CHECK(p == Permutation::identity(7));
    CHECK(assignment_value(eye, p) == doctest::Approx(7.0));
}

TEST_CASE("projection of a permutation vertex is itself") {
    Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        const Permutation s = random_permutation(8, rng);
        CHECK(lap_max(s.matrix()) == s);
    }
}

TEST_CASE("lap_max matches exhaustive search on random instances") {
    Rng rng(32);
    for (int rep = 0; rep < 100; ++rep) {
        const Matrix profit = random_matrix(6, 6, rng, true);
        const Permutation fast = lap_max(profit);
        const Permutation slow = brute_force_lap(profit);
        CHECK(assignment_value(profit, fast) ==
              doctest::Approx(assignment_value(profit, slow)).epsilon(1e-12));
        CHECK(fast == slow); // ties have measure zero here
    }
}

TEST_CASE("lap_max beats random permutations") {
    Rng rng(33);
    const Matrix profit = random_matrix(25, 25, rng, true);
    const double best = assignment_value(profit, lap_max(profit));
    for (int rep = 0; rep < 1000; ++rep) {
        const Permutation p = random_permutation(25, rng);
        CHECK(best >= assignment_value(profit, p) - 1e-12);
    }
}

TEST_CASE("row and column shifts keep the assignment optimal") {
    Rng rng(34);
    for (int rep = 0; rep < 20; ++rep) {
        Matrix profit = random_matrix(6, 6, rng, true);
        const double base = assignment_value(profit, lap_max(profit));

        Matrix shifted = profit;
        for (std::size_t j = 0; j < 6; ++j) shifted(2, j) += 3.5;
        const Permutation p = lap_max(shifted);
        CHECK(assignment_value(shifted, p) ==
              doctest::Approx(base + 3.5).epsilon(1e-12));
        CHECK(assignment_value(shifted, p) ==
              doctest::Approx(assignment_value(shifted, brute_force_lap(shifted)))
                  .epsilon(1e-12));

        for (std::size_t i = 0; i < 6; ++i) shifted(i, 4) -= 1.25;
        const Permutation q = lap_max(shifted);
        CHECK(assignment_value(shifted, q) ==
              doctest::Approx(base + 3.5 - 1.25).epsilon(1e-12));
    }
}

TEST_CASE("brute_force_lap corner cases") {
    CHECK(brute_force_lap(Matrix(1, 1, 3.0)) == Permutation::identity(1));
    // all-equal profits: lexicographic tie-break picks the identity
    CHECK(brute_force_lap(Matrix(4, 4, 1.0)) == Permutation::identity(4));
    CHECK_THROWS_AS(brute_force_lap(Matrix(10, 10, 1.0)), TooLarge);
}

TEST_CASE("lap_max rejects bad input") {
    CHECK_THROWS_AS(lap_max(Matrix(3, 4, 1.0)), SizeMismatch);
    Matrix bad(3, 3, 1.0);
    bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(lap_max(bad), NonFinite);
    bad(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(lap_max(bad), NonFinite);
}

TEST_CASE("lap_max handles adversarial tie-heavy and low-rank profits") {
    // rank-1 profit: u v^T, optimum pairs the sorted orders
    Rng rng(35);
    for (int rep = 0; rep < 10; ++rep) {
        Matrix profit(7, 7);
        std::vector<double> u(7), v(7);
        for (auto& x : u) x = rng.uniform();
        for (auto& x : v) x = rng.uniform();
        for (std::size_t i = 0; i < 7; ++i) {
            for (std::size_t j = 0; j < 7; ++j) profit(i, j) = u[i] * v[j];
        }
        const Permutation fast = lap_max(profit);
        CHECK(fast.is_valid());
        CHECK(assignment_value(profit, fast) ==
              doctest::Approx(assignment_value(profit, brute_force_lap(profit)))
                  .epsilon(1e-12));
    }
    // constant matrix: any permutation is optimal, result must be valid
    const Permutation p = lap_max(Matrix(30, 30, 2.5));
    CHECK(p.is_valid());
}
