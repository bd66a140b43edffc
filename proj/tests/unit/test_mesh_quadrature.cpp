#include <doctest.h>

#include <cmath>
#include <vector>

#include "spps/quadrature.hpp"

using namespace spps;

namespace {

std::vector<Piece> pieces_of(std::initializer_list<std::pair<double, double>> spans) {
    std::vector<Piece> out;
    for (auto [lo, hi] : spans) {
        out.push_back({lo, hi, Expression::parse("-1"), Expression::parse("0"), Expression::parse("1")});
    }
    return out;
}

}  // namespace

TEST_CASE("mesh shares subintervals in multiples of five") {
    const auto pieces = pieces_of({{-4, -2}, {-2, 0}, {0, 2}});
    const auto mesh = build_mesh({-4, 2}, pieces, 31);
    for (const auto& p : mesh->pieces()) CHECK(p.subintervals % 5 == 0);
    CHECK(mesh->effective_m() >= 31);
    CHECK(mesh->slot_count() == mesh->node_count() + 2);
    CHECK(mesh->breakpoint_indices().size() == 2);
    CHECK(mesh->node(0) == -4.0);
    CHECK(mesh->node(mesh->node_count() - 1) == 2.0);
}

TEST_CASE("pieces must tile the interval") {
    CHECK_THROWS_AS(build_mesh({0, 2}, pieces_of({{0, 1}, {1.5, 2}}), 20), StructureError);
    CHECK_THROWS_AS(build_mesh({0, 2}, pieces_of({{0, 1}}), 20), StructureError);
}

TEST_CASE("sampling keeps both one-sided limits at a breakpoint") {
    std::vector<Piece> pieces = pieces_of({{0, 1}, {1, 2}});
    pieces[1].q = Expression::parse("5");
    const auto mesh = build_mesh({0, 2}, pieces, 10);
    const auto c = sample_coefficients(pieces, mesh);
    const std::size_t k = mesh->breakpoint_indices().front();
    CHECK(c.q.left(k) == cplx(0.0));
    CHECK(c.q.right(k) == cplx(5.0));
}

TEST_CASE("zero p is rejected") {
    std::vector<Piece> pieces = pieces_of({{-1, 1}});
    pieces[0].p = Expression::parse("x");
    CHECK_THROWS_AS(sample_coefficients(pieces, build_mesh({-1, 1}, pieces, 10)), SingularCoefficientError);
}

TEST_CASE("panel weights") {
    const auto& w = panel_weights();
    double sum = 0;
    for (double v : w.full) sum += v;
    CHECK(sum == doctest::Approx(5.0).epsilon(1e-15));
    for (int k = 0; k < 6; ++k) CHECK(w.partial[4][k] == w.full[k]);
    CHECK(w.full[0] == doctest::Approx(95.0 / 288.0));
}

TEST_CASE("degree five polynomials integrate exactly") {
    const auto pieces = pieces_of({{-1, 0.3}, {0.3, 2}});
    const auto mesh = build_mesh({-1, 2}, pieces, 40);
    auto poly = [](double x) { return 1 - 2 * x + 0.5 * x * x * x - 0.25 * std::pow(x, 5); };
    auto prim = [](double x) { return x - x * x + 0.125 * std::pow(x, 4) - std::pow(x, 6) / 24.0; };
    std::vector<cplx> g(mesh->slot_count());
    for (std::size_t s = 0; s < g.size(); ++s) g[s] = poly(mesh->slot_x()[s]);
    const SampledFunction G = indefinite_integral(SampledFunction(mesh, g), 0);
    double worst = 0;
    for (std::size_t s = 0; s < g.size(); ++s) {
        worst = std::max(worst, std::abs(G[s] - (prim(mesh->slot_x()[s]) - prim(-1))));
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("anchor value is exactly zero and orientation flips left of it") {
    const auto pieces = pieces_of({{0, 1}});
    const auto mesh = build_mesh({0, 1}, pieces, 50);
    std::vector<cplx> g(mesh->slot_count(), cplx(1.0, 2.0));
    std::vector<cplx> out(g.size());
    const std::size_t anchor = 25;
    integrate_indefinite(*mesh, g, anchor, out);
    CHECK(out[anchor] == cplx(0.0));
    CHECK(out[0].real() == doctest::Approx(-0.5));
    CHECK(out.back().imag() == doctest::Approx(1.0));
    CHECK(l1_norm(SampledFunction(mesh, g)) == doctest::Approx(std::sqrt(5.0)));
}
