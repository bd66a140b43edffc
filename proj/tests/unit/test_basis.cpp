#include <doctest.h>

#include <cmath>
#include <random>

#include "spps/spps_basis.hpp"
#include "support.hpp"

using namespace spps;

namespace {

SppsBasis basis_for(const PreparedProblem& pp, PowerStorage storage = PowerStorage::streaming) {
    const auto& dp = pp.spectral.discrete;
    const ParticularSolution particular =
        pp.spectral.particular ? *pp.spectral.particular : build_seed_solution(*dp, pp.config.n_terms);
    return build_basis(particular, dp, pp.config.n_terms, storage);
}

// |u1 pu2' - u2 pu1' - 1| against the size of the two products, which cancel
// heavily where the solutions grow.
double wronskian_defect(const SppsBasis& basis, cplx lambda) {
    const auto s1 = evaluate_solution(basis, lambda, Which::first);
    const auto s2 = evaluate_solution(basis, lambda, Which::second);
    double worst = 0;
    for (std::size_t k = 0; k < s1.u.size(); ++k) {
        const cplx a = s1.u[k] * s2.pu_prime[k];
        const cplx b = s2.u[k] * s1.pu_prime[k];
        worst = std::max(worst, std::abs(a - b - 1.0) / std::max(1.0, std::abs(a) + std::abs(b)));
    }
    return worst;
}

}  // namespace

TEST_CASE("u1 of u'' = u is cosh") {
    const SppsBasis b = basis_for(test_support::prepared("trivial"));
    const auto s = evaluate_solution(b, 1.0, Which::first);
    CHECK(std::abs(s.u.at_b() - 1.5430806348152437) <= 1e-12);
    CHECK(std::abs(s.pu_prime.at_b() - std::sinh(1.0)) <= 1e-12);
    const auto t = evaluate_solution(b, 1.0, Which::second);
    CHECK(std::abs(t.u.at_b() - std::sinh(1.0)) <= 1e-12);
    CHECK(s.truncation_tail < 1e-30);
}

TEST_CASE("dense and streaming bases agree") {
    const auto pp = test_support::prepared("example4", 2000);
    const SppsBasis dense = basis_for(pp, PowerStorage::dense);
    const SppsBasis lean = basis_for(pp, PowerStorage::streaming);
    REQUIRE(dense.powers() != nullptr);
    CHECK(lean.powers() == nullptr);
    const auto a = evaluate_solution(dense, cplx(40, 3), Which::second);
    const auto b = evaluate_solution(lean, cplx(40, 3), Which::second);
    for (std::size_t k = 0; k < a.u.size(); k += 97) CHECK(a.u[k] == b.u[k]);
}

TEST_CASE("wronskian equals one at random lambda") {
    std::mt19937 rng(7);
    for (const std::string name : {"example1", "example2_complex", "example4"}) {
        CAPTURE(name);
        const auto pp = test_support::prepared(name, 4000);
        const SppsBasis b = basis_for(pp);
        const double radius = std::min(b.trust_radius(), 20.0);
        std::uniform_real_distribution<double> u(-radius / 2, radius / 2);
        for (int k = 0; k < 4; ++k) {
            const cplx lambda = b.center() + cplx(u(rng), u(rng));
            CHECK(wronskian_defect(b, lambda) <= 1e-9);
        }
    }
}

TEST_CASE("identity shift reproduces the powers") {
    const auto pp = test_support::prepared("example1", 2000);
    const SppsBasis b = basis_for(pp, PowerStorage::dense);
    const SppsBasis s = shift_basis(b, b.center(), Combination{1.0, 0.0});
    REQUIRE(s.powers() != nullptr);
    double worst = 0;
    for (int n = 0; n <= 2 * b.n_terms() + 1; ++n) {
        const auto& x = b.powers()->x_plain[n];
        const auto& y = s.powers()->x_plain[n];
        const auto& xt = b.powers()->x_tilde[n];
        const auto& yt = s.powers()->x_tilde[n];
        for (std::size_t k = 0; k < x.size(); ++k) {
            worst = std::max({worst, std::abs(x[k] - y[k]), std::abs(xt[k] - yt[k])});
        }
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("shifting keeps eigenfunctions") {
    const auto pp = test_support::prepared("harmonic", 3000);
    const SppsBasis b = basis_for(pp);
    const SppsBasis s = shift_basis(b, 2.5);
    CHECK(s.center() == cplx(2.5));
    CHECK(s.particular().residual <= 1e-9);
    CHECK(wronskian_defect(s, 4.0) <= 1e-9);
    // u2 vanishes at the left end in both bases, so the ratio at b is constant in lambda.
    const auto a1 = evaluate_solution(b, 3.3, Which::second);
    const auto a2 = evaluate_solution(s, 3.3, Which::second);
    const auto c1 = evaluate_solution(b, 1.1, Which::second);
    const auto c2 = evaluate_solution(s, 1.1, Which::second);
    CHECK(std::abs(a1.u.at_b() / a2.u.at_b() - c1.u.at_b() / c2.u.at_b()) <= 1e-9);
}

TEST_CASE("shift beyond the trust region is refused") {
    const auto pp = test_support::prepared("harmonic", 1000);
    const SppsBasis b = basis_for(pp);
    CHECK_THROWS_AS(shift_basis(b, 5000.0), ShiftFailure);
}

TEST_CASE("truncation residual") {
    const auto pp = test_support::prepared("example4", 20000);
    const SppsBasis b = basis_for(pp);
    const auto s = evaluate_solution(b, b.center(), Which::first);
    CHECK(truncation_residual(b, b.center(), Which::first) <= 1e-9 * s.pu_prime.max_abs());
    CHECK(truncation_residual(b, 17.89793137541756, Which::second) <= 1e-8);

    const SppsBasis t = basis_for(test_support::prepared("trivial"));
    CHECK(truncation_residual(t, 1.0, Which::first) <= 1e-9);
}

TEST_CASE("seed for q = 0, p = 1 is 1 + ix") {
    const auto pp = test_support::prepared("trivial");
    const ParticularSolution seed = build_seed_solution(*pp.spectral.discrete, 20);
    const auto& x = pp.spectral.discrete->mesh->slot_x();
    for (std::size_t k = 0; k < x.size(); k += 50) {
        CHECK(std::abs(seed.f[k] - cplx(1.0, x[k])) <= 1e-14);
        CHECK(std::abs(seed.pf_prime[k] - cplx(0.0, 1.0)) <= 1e-14);
    }
    CHECK(seed.lambda_star == cplx(0.0));
}

TEST_CASE("supplied particular solutions are checked") {
    const auto pp = test_support::prepared("harmonic", 500);
    const auto& dp = *pp.spectral.discrete;
    const auto one = SampledFunction::constant(dp.mesh, 1.0);
    const auto zero = SampledFunction::constant(dp.mesh, 0.0);
    // f = 1 solves -f'' = 0 f, not -f'' = 2 f.
    CHECK_NOTHROW(make_particular_solution(dp, one, zero, 0.0));
    CHECK_THROWS_AS(make_particular_solution(dp, one, zero, 2.0), SolverError);
    CHECK_THROWS_AS(make_particular_solution(dp, zero, zero, 0.0), NonvanishingError);
}
