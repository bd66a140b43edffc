#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "spps/spectral.hpp"
#include "support.hpp"

using namespace spps;

namespace {

CharacteristicPolynomial poly(std::vector<cplx> c, cplx center = 0.0) {
    double scale = 0;
    for (auto z : c) scale = std::max(scale, std::abs(z));
    return CharacteristicPolynomial{std::move(c), center, 0, scale};
}

std::vector<cplx> sorted(std::vector<cplx> v) {
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
}

}  // namespace

TEST_CASE("taylor shift") {
    const std::vector<cplx> p{1.0, -2.0, 3.0};
    const auto s = taylor_shift(p, 2.0);
    for (double nu : {-1.0, 0.0, 0.5}) {
        CHECK(std::abs(evaluate_polynomial(s, nu) - evaluate_polynomial(p, 2.0 + nu)) <= 1e-13);
    }
}

TEST_CASE("roots of lambda^2 - 1") {
    const auto r = sorted(roots_of(poly({-1.0, 0.0, 1.0})));
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0] + 1.0) <= 1e-14);
    CHECK(std::abs(r[1] - 1.0) <= 1e-14);
    const auto shifted = sorted(roots_of(poly(taylor_shift(std::vector<cplx>{-1.0, 0.0, 1.0}, 3.0), 3.0)));
    CHECK(std::abs(shifted[0] + 1.0) <= 1e-13);
}

TEST_CASE("negligible leading coefficients are dropped") {
    const auto r = roots_of(poly({-2.0, 1.0, 1e-30}));
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0] - 2.0) <= 1e-14);
    CHECK_THROWS_AS(roots_of(poly({0.0, 0.0})), DegeneratePolynomial);
}

TEST_CASE("validation residual") {
    CHECK(validation_residual(poly({1e-3, 1.0})) == doctest::Approx(1e-3));
    CHECK(validation_residual(poly({1e-3, 2.0}, 1.0)) == doctest::Approx(2.5e-4));
}

TEST_CASE("winding counts") {
    const PhiEvaluator f = [](cplx z) { return z * z - 1.0; };
    CHECK(count_zeros(f, 0.0, 2.0) == 2);
    CHECK(count_zeros(f, 0.0, 0.5) == 0);
    CHECK(count_zeros(f, 1.0, 0.5) == 1);
    CHECK(count_zeros([](cplx z) { return std::exp(20.0 * z) * (z - 0.1); }, 0.0, 1.0) == 1);
    CHECK_THROWS_AS(count_zeros(f, 0.0, 1.0), ContourTooClose);
    CHECK_THROWS_AS(count_zeros(f, 0.0, 2.0, 16), ConfigurationError);
}

TEST_CASE("dirichlet characteristic is -sin(sqrt(lambda) pi) / sqrt(lambda)") {
    const auto pp = test_support::prepared("harmonic");
    const SppsBasis b = initial_basis(pp.spectral, pp.config);
    const auto phi = assemble_characteristic(b, pp.spectral.left, pp.spectral.right);
    for (cplx z : {cplx(0.5), cplx(2.0, 1.0), cplx(10.0, -3.0)}) {
        const cplx s = std::sqrt(z);
        CHECK(std::abs(phi.evaluate(z) + std::sin(s * M_PI) / s) <= 1e-10);
    }
    CHECK(count_zeros([&](cplx z) { return phi.evaluate(z); }, 0.0, 10.0) == 3);
}

TEST_CASE("example 1 characteristic carries the lambda-dependent conditions") {
    const auto pp = test_support::prepared("example1", 5000);
    const SppsBasis b = initial_basis(pp.spectral, pp.config);
    const auto phi = assemble_characteristic(b, pp.spectral.left, pp.spectral.right);
    CHECK(phi.degree_from_bc == 2);
    CHECK(phi.coeffs.size() == static_cast<std::size_t>(b.n_terms() + 2 + 1));
    // Phi = (lam u1(-1) + u1'(-1)) (lam u2(1) - u2'(1)) - (lam u2(-1) + u2'(-1)) (lam u1(1) - u1'(1))
    const cplx lam(0.3, 0.2);
    const auto u1 = evaluate_solution(b, lam, Which::first);
    const auto u2 = evaluate_solution(b, lam, Which::second);
    auto d = [](const SolutionSample& s, bool right) { return -(right ? s.pu_prime.at_b() : s.pu_prime.at_a()); };
    const cplx expect = (lam * u1.u.at_a() + d(u1, false)) * (lam * u2.u.at_b() - d(u2, true)) -
                        (lam * u2.u.at_a() + d(u2, false)) * (lam * u1.u.at_b() - d(u1, true));
    CHECK(std::abs(phi.evaluate(lam) - expect) <= 1e-10 * (1 + std::abs(expect)));
    const auto lambda0 = roots_of(phi);
    CHECK(std::any_of(lambda0.begin(), lambda0.end(),
                      [](cplx z) { return std::abs(z + 0.8838501773806790) < 1e-8; }));
}

TEST_CASE("boundary condition validation") {
    BoundaryCondition bc{Endpoint::left, {0.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(bc.validate(), StructureError);
    bc.beta = {0.0, 2.0, 0.0};
    CHECK(bc.degree() == 1);
}

TEST_CASE("sweep on the harmonic fixture") {
    const auto pp = test_support::prepared("harmonic");
    const auto records = sweep_eigenvalues(pp.spectral, pp.config);
    REQUIRE(records.size() == 5);
    for (int k = 0; k < 5; ++k) {
        CHECK(records[k].index == k);
        CHECK(std::abs(records[k].lambda - double((k + 1) * (k + 1))) <= 1e-9);
        CHECK(records[k].validation_residual <= 1e-8);
    }
}

TEST_CASE("eigenvalues do not depend on the scale of f") {
    auto pp = test_support::prepared("example4", 5000);
    pp.config.schedule.max_eigenvalues = 3;
    const auto& dp = *pp.spectral.discrete;
    const ParticularSolution seed = build_seed_solution(dp, pp.config.n_terms);
    std::vector<cplx> f(seed.f.size()), d(seed.f.size());
    const cplx k(-0.3, 2.0);
    for (std::size_t s = 0; s < f.size(); ++s) {
        f[s] = k * seed.f[s];
        d[s] = k * seed.pf_prime[s];
    }
    const auto plain = sweep_eigenvalues(pp.spectral, pp.config);
    pp.spectral.particular =
        make_particular_solution(dp, SampledFunction(dp.mesh, f), SampledFunction(dp.mesh, d), 0.0);
    const auto scaled = sweep_eigenvalues(pp.spectral, pp.config);
    REQUIRE(plain.size() == scaled.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
        CHECK(std::abs(plain[i].lambda - scaled[i].lambda) <= 1e-10 * (1 + std::abs(plain[i].lambda)));
    }
}

TEST_CASE("sweep configuration errors") {
    auto pp = test_support::prepared("harmonic", 500);
    pp.config.schedule.delta = 0.0;
    CHECK_THROWS_AS(sweep_eigenvalues(pp.spectral, pp.config), ConfigurationError);
    pp.config.schedule.max_eigenvalues = 0;
    pp.config.schedule.policy = ShiftPolicy::fixed_center;
    CHECK(sweep_eigenvalues(pp.spectral, pp.config).empty());
}

TEST_CASE("landscape of an explicit function") {
    const Landscape land = landscape([](cplx z) { return z; }, 0.0, 1.0, 3);
    CHECK(land.at(1, 1) == landscape_cap);
    CHECK(land.point(0, 1) == cplx(0.0, 1.0));
    CHECK(land.point(2, 0) == cplx(-1.0, -1.0));
    CHECK(land.at(0, 1) == doctest::Approx(0.0));
    CHECK(land.at(2, 2) == doctest::Approx(-std::log(std::sqrt(2.0))));
    CHECK_FALSE(land.exceeds_trust);
    const Landscape nan = landscape([](cplx) { return cplx(NAN, 0.0); }, 0.0, 1.0, 2);
    CHECK(nan.at(0, 0) == -landscape_cap);
    CHECK(landscape([](cplx z) { return z; }, 0.0, 1.0, 2, 0.0, 0.5).exceeds_trust);
    CHECK_THROWS_AS(landscape([](cplx z) { return z; }, 0.0, 1.0, 1), ConfigurationError);
}

TEST_CASE("landscape peaks sit on eigenvalues") {
    const auto pp = test_support::prepared("harmonic");
    const Landscape land = landscape(pp.spectral, pp.config, 4.0, 1.0, 17);
    CHECK(land.at(8, 8) > 25.0);
    CHECK(land.at(8, 8) == *std::max_element(land.values.begin(), land.values.end()));
}
