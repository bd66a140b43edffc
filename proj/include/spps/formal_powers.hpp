#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spps/mesh.hpp"
#include "spps/quadrature.hpp"

namespace spps {

/// The two integrand weights of the recursion: r f^2 and 1/(p f^2).
struct PowerWeights {
    SampledFunction rf2;
    SampledFunction inv_pf2;
};

/// Throws NonvanishingError naming the slot when f has a zero sample.
PowerWeights make_power_weights(const SampledFunction& f, const SampledFunction& p,
                                const SampledFunction& r);

/// Dense formal powers X~^(n), X^(n) for n = 0..n_max at every slot.
struct FormalPowerSet {
    std::vector<SampledFunction> x_tilde;
    std::vector<SampledFunction> x_plain;
    std::size_t anchor_node;
    int n_max;
    PowerWeights weights;
};

struct BoundConstants {
    double c1;  ///< L1 norm of 1/(p f^2)
    double c2;  ///< L1 norm of r f^2
};

/// Runs the recursion
///
///     X~^(n) = int_{x0}^{x} X~^(n-1) r f^2   (n odd)     X^(n) = int X^(n-1) / (p f^2)   (n odd)
///     X~^(n) = int_{x0}^{x} X~^(n-1) / (p f^2) (n even)  X^(n) = int X^(n-1) r f^2       (n even)
///
/// keeping only the two current buffers, and calls
/// visit(n, span<const cplx> x_tilde_n, span<const cplx> x_plain_n) for n = 0..n_max.
template <class Visitor>
void stream_formal_powers(const PowerWeights& weights, std::size_t anchor_node, int n_max,
                          Visitor&& visit) {
    const Mesh& mesh = weights.rf2.mesh();
    const std::size_t slots = mesh.slot_count();
    std::vector<cplx> tilde(slots, cplx{1.0});
    std::vector<cplx> plain(slots, cplx{1.0});
    std::vector<cplx> integrand(slots);
    const auto rf2 = weights.rf2.values();
    const auto inv = weights.inv_pf2.values();
    visit(0, std::span<const cplx>(tilde), std::span<const cplx>(plain));
    for (int n = 1; n <= n_max; ++n) {
        const bool odd = (n % 2) == 1;
        const auto wt = odd ? rf2 : inv;
        const auto wp = odd ? inv : rf2;
        for (std::size_t s = 0; s < slots; ++s) integrand[s] = tilde[s] * wt[s];
        integrate_indefinite(mesh, integrand, anchor_node, tilde);
        for (std::size_t s = 0; s < slots; ++s) integrand[s] = plain[s] * wp[s];
        integrate_indefinite(mesh, integrand, anchor_node, plain);
        visit(n, std::span<const cplx>(tilde), std::span<const cplx>(plain));
    }
}

/// All 2N+2 members of each family, n = 0..2N+1.
FormalPowerSet compute_formal_powers(const SampledFunction& f, const SampledFunction& p,
                                     const SampledFunction& r, std::size_t anchor_node,
                                     int n_terms);

FormalPowerSet compute_formal_powers(const PowerWeights& weights, std::size_t anchor_node,
                                     int n_max);

BoundConstants bound_constants(const PowerWeights& weights);

/// Upper bounds on |X~^(n)| and |X^(n)|:
///     n = 2k:   (C1 C2)^k / (k!)^2 for both families
///     n = 2k-1: X^(n) <= C1^k C2^(k-1) / (k!(k-1)!),  X~^(n) <= C1^(k-1) C2^k / ((k-1)! k!)
/// Returned as {tilde_bound, plain_bound}.
std::pair<double, double> power_bounds(const BoundConstants& c, int n);

/// Checks the growth bounds at every slot with a (1 + 1e-8) slack and
/// returns the constants. Throws BoundViolation on failure.
BoundConstants check_bounds(const FormalPowerSet& fp);

}  // namespace spps
