#include <algorithm>
#include <cmath>
#include <sstream>

#include "spps/spectral.hpp"

namespace spps {

namespace {

int poly_degree(const std::vector<cplx>& p) {
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
        if (p[static_cast<std::size_t>(k)] != cplx{}) return k;
    return -1;
}

std::vector<cplx> convolve(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.empty() || b.empty()) return {};
    std::vector<cplx> out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

void add_into(std::vector<cplx>& acc, std::span<const cplx> v, cplx sign = 1.0) {
    if (acc.size() < v.size()) acc.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) acc[i] += sign * v[i];
}

std::vector<cplx> scaled(std::span<const cplx> v, cplx s) {
    std::vector<cplx> out(v.begin(), v.end());
    for (auto& z : out) z *= s;
    return out;
}

}  // namespace

int BoundaryCondition::degree() const { return std::max({poly_degree(alpha), poly_degree(beta), 0}); }

void BoundaryCondition::validate() const {
    if (poly_degree(alpha) < 0 && poly_degree(beta) < 0) {
        throw StructureError(std::string(endpoint == Endpoint::left ? "left" : "right") +
                             " boundary condition has alpha and beta both zero");
    }
}

std::vector<cplx> taylor_shift(std::span<const cplx> poly, cplx c) {
    std::vector<cplx> out(poly.begin(), poly.end());
    if (c == cplx{}) return out;
    // Repeated synthetic division.
    const std::size_t n = out.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j > i; --j) out[j - 1] += c * out[j];
    return out;
}

cplx evaluate_polynomial(std::span<const cplx> poly, cplx z) {
    cplx acc{};
    for (std::size_t k = poly.size(); k-- > 0;) acc = acc * z + poly[k];
    return acc;
}

cplx CharacteristicPolynomial::evaluate(cplx lambda) const {
    return evaluate_polynomial(coeffs, lambda - center);
}

cplx CharacteristicPolynomial::derivative(cplx lambda) const {
    const cplx mu = lambda - center;
    cplx acc{};
    for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * mu + static_cast<double>(k) * coeffs[k];
    return acc;
}

CharacteristicPolynomial assemble_characteristic(const SppsBasis& basis,
                                                 const BoundaryCondition& bc_left,
                                                 const BoundaryCondition& bc_right) {
    const DiscreteProblem& problem = *basis.problem();
    if (problem.anchor_node != 0) {
        throw ConfigurationError("characteristic assembly needs the formal powers anchored at a");
    }
    bc_left.validate();
    bc_right.validate();
    const int N = basis.n_terms();
    const cplx c = basis.center();
    const auto& ps = basis.particular();
    const cplx fa = ps.f.at_a(), fb = ps.f.at_b();
    const cplx pfa = ps.pf_prime.at_a(), pfb = ps.pf_prime.at_b();
    const auto tb = basis.tilde_at_b();
    const auto xb = basis.plain_at_b();

    // Endpoint series in mu = lambda - c, k = 0..N.
    const std::size_t terms = static_cast<std::size_t>(N) + 1;
    std::vector<cplx> U1(terms), P1(terms), U2(terms), P2(terms);
    for (std::size_t k = 0; k < terms; ++k) {
        U1[k] = fb * tb[2 * k];
        P1[k] = pfb * tb[2 * k] + (k >= 1 ? tb[2 * k - 1] / fb : cplx{});
        U2[k] = fb * xb[2 * k + 1];
        P2[k] = pfb * xb[2 * k + 1] + xb[2 * k] / fb;
    }

    auto prepared = [&](const BoundaryCondition& bc, cplx p_end, const char* side) {
        std::vector<cplx> alpha = taylor_shift(bc.alpha, c);
        std::vector<cplx> beta = taylor_shift(bc.beta, c);
        if (bc.derivative_form == DerivativeForm::u_prime) {
            if (p_end == cplx{}) {
                throw SingularCoefficientError(std::string("u' boundary condition at the ") + side +
                                               " endpoint needs p nonzero there");
            }
            for (auto& z : beta) z /= p_end;
        }
        if (alpha.empty()) alpha.push_back(0.0);
        if (beta.empty()) beta.push_back(0.0);
        return std::pair{alpha, beta};
    };
    const auto [aL, bL] = prepared(bc_left, problem.p.at_a(), "left");
    const auto [aR, bR] = prepared(bc_right, problem.p.at_b(), "right");

    // B_L[u1] = aL f(a) + bL pf'(a), B_L[u2] = bL / f(a).
    std::vector<cplx> BL1 = scaled(aL, fa);
    add_into(BL1, scaled(bL, pfa));
    const std::vector<cplx> BL2 = scaled(bL, 1.0 / fa);

    std::vector<cplx> BR1 = convolve(aR, U1);
    add_into(BR1, convolve(bR, P1));
    std::vector<cplx> BR2 = convolve(aR, U2);
    add_into(BR2, convolve(bR, P2));

    std::vector<cplx> phi = convolve(BL1, BR2);
    add_into(phi, convolve(BL2, BR1), -1.0);

    const int dbc = bc_left.degree() + bc_right.degree();
    phi.resize(static_cast<std::size_t>(N + dbc) + 1);
    double scale = 0.0;
    for (const cplx& z : phi) scale = std::max(scale, std::abs(z));
    return CharacteristicPolynomial{std::move(phi), c, dbc, scale};
}

double validation_residual(const CharacteristicPolynomial& phi) {
    const double c0 = std::abs(phi.coeffs.empty() ? cplx{} : phi.coeffs[0]);
    const double c1 = std::abs(phi.coeffs.size() > 1 ? phi.coeffs[1] : cplx{});
    if (c0 == 0.0) return 0.0;
    if (c1 == 0.0) return INFINITY;
    return c0 / (c1 * (1.0 + std::abs(phi.center)));
}

}  // namespace spps
