#include <doctest.h>

#include <cmath>

#include "spps/oracle.hpp"
#include "support.hpp"

using namespace spps;

TEST_CASE("harmonic eigenvalues by shooting") {
    const auto pp = test_support::prepared("harmonic", 500);
    CHECK(std::abs(refine_root(pp.shooting, 3.7, 2000) - 4.0) <= 1e-9);
    CHECK(std::abs(refine_root(pp.shooting, 24.0, 2000) - 25.0) <= 1e-8);
    // u(0) = 0, pu'(0) = -1 and p = -1 give u = sin(sqrt(lambda) x) / sqrt(lambda).
    const auto r = shoot(pp.shooting, 2.0, 4000);
    CHECK(std::abs(r.mismatch - std::sin(std::sqrt(2.0) * M_PI) / std::sqrt(2.0)) <= 1e-12);
    CHECK(r.step_count == 4000);
}

TEST_CASE("example 1 from 0.3") {
    const auto pp = test_support::prepared("example1", 500);
    CHECK(std::abs(refine_root(pp.shooting, 0.3, 20000) - 0.33593977069858758) <= 1e-9);
}

TEST_CASE("example 2 real lowest eigenvalue") {
    const auto pp = test_support::prepared("example2_real", 500);
    CHECK(std::abs(refine_root(pp.shooting, 0.15, 20000) - 0.1537166881459068) <= 1e-9);
}

TEST_CASE("oracle argument checks") {
    const auto pp = test_support::prepared("harmonic", 500);
    CHECK_THROWS_AS(shoot(pp.shooting, 1.0, 10), ConfigurationError);
    ShootingProblem neumann = pp.shooting;
    neumann.right = BoundaryCondition{Endpoint::right, {0.0}, {1.0}};
    neumann.left = BoundaryCondition{Endpoint::left, {0.0}, {1.0}};
    CHECK(std::abs(refine_root(neumann, 0.8, 2000) - 1.0) <= 1e-9);
}
