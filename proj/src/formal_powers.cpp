#include "spps/formal_powers.hpp"

#include <cmath>
#include <sstream>

namespace spps {

PowerWeights make_power_weights(const SampledFunction& f, const SampledFunction& p,
                                const SampledFunction& r) {
    const auto fv = f.values();
    const auto pv = p.values();
    const auto rv = r.values();
    std::vector<cplx> rf2(fv.size()), inv(fv.size());
    for (std::size_t s = 0; s < fv.size(); ++s) {
        if (fv[s] == cplx{}) {
            std::ostringstream os;
            os.precision(16);
            os << "particular solution vanishes at x=" << f.mesh().slot_x()[s];
            throw NonvanishingError(os.str(), s);
        }
        const cplx f2 = fv[s] * fv[s];
        rf2[s] = rv[s] * f2;
        inv[s] = 1.0 / (pv[s] * f2);
    }
    return PowerWeights{SampledFunction(f.mesh_ptr(), std::move(rf2)),
                        SampledFunction(f.mesh_ptr(), std::move(inv))};
}

FormalPowerSet compute_formal_powers(const PowerWeights& weights, std::size_t anchor_node,
                                     int n_max) {
    FormalPowerSet fp{{}, {}, anchor_node, n_max, weights};
    fp.x_tilde.reserve(static_cast<std::size_t>(n_max) + 1);
    fp.x_plain.reserve(static_cast<std::size_t>(n_max) + 1);
    const auto mesh = weights.rf2.mesh_ptr();
    stream_formal_powers(weights, anchor_node, n_max,
                         [&](int, std::span<const cplx> t, std::span<const cplx> x) {
                             fp.x_tilde.emplace_back(mesh, std::vector<cplx>(t.begin(), t.end()));
                             fp.x_plain.emplace_back(mesh, std::vector<cplx>(x.begin(), x.end()));
                         });
    return fp;
}

FormalPowerSet compute_formal_powers(const SampledFunction& f, const SampledFunction& p,
                                     const SampledFunction& r, std::size_t anchor_node,
                                     int n_terms) {
    if (n_terms < 0) throw std::invalid_argument("n_terms must be non-negative");
    return compute_formal_powers(make_power_weights(f, p, r), anchor_node, 2 * n_terms + 1);
}

BoundConstants bound_constants(const PowerWeights& weights) {
    return BoundConstants{l1_norm(weights.inv_pf2), l1_norm(weights.rf2)};
}

std::pair<double, double> power_bounds(const BoundConstants& c, int n) {
    // Log space: for large n the factorials overflow long before the ratio does.
    auto term = [](double base, int power) -> double {
        if (power == 0) return 0.0;
        if (base == 0.0) return -HUGE_VAL;
        return power * std::log(base);
    };
    if (n % 2 == 0) {
        const int k = n / 2;
        const double lb = term(c.c1, k) + term(c.c2, k) - 2.0 * std::lgamma(k + 1.0);
        const double b = std::exp(lb);
        return {b, b};
    }
    const int k = (n + 1) / 2;
    const double plain = term(c.c1, k) + term(c.c2, k - 1) - std::lgamma(k + 1.0) - std::lgamma(k * 1.0);
    const double tilde = term(c.c1, k - 1) + term(c.c2, k) - std::lgamma(k * 1.0) - std::lgamma(k + 1.0);
    return {std::exp(tilde), std::exp(plain)};
}

BoundConstants check_bounds(const FormalPowerSet& fp) {
    const BoundConstants c = bound_constants(fp.weights);
    constexpr double slack = 1.0 + 1e-8;
    for (int n = 0; n <= fp.n_max; ++n) {
        const auto [tb, pb] = power_bounds(c, n);
        const double t_max = fp.x_tilde[static_cast<std::size_t>(n)].max_abs();
        const double p_max = fp.x_plain[static_cast<std::size_t>(n)].max_abs();
        if (t_max > tb * slack || p_max > pb * slack) {
            std::ostringstream os;
            os.precision(6);
            os << "formal power growth bound violated at n=" << n << ": max|X~|=" << t_max
               << " (bound " << tb << "), max|X|=" << p_max << " (bound " << pb << ")";
            throw BoundViolation(os.str());
        }
    }
    return c;
}

}  // namespace spps
