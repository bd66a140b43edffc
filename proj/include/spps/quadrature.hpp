#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "spps/mesh.hpp"

namespace spps {

/// Weights of the closed six-point Newton-Cotes rule on a unit-spacing panel
/// t = 0..5. partial[j-1][k] integrates the degree-5 interpolant from t=0 to
/// t=j, so partial[4] equals full. Multiply by the step h at use time.
struct PanelWeights {
    std::array<double, 6> full;
    std::array<std::array<double, 6>, 5> partial;
};

/// Integrates the Lagrange basis on nodes 0..5 exactly (integer arithmetic).
PanelWeights derive_partial_weights();

/// Process-wide copy of derive_partial_weights().
const PanelWeights& panel_weights();

/// Cumulative integral G(x) = int_{x0}^{x} g(t) dt of slot samples g, written
/// to out (slot indexed). G(x0) is exactly zero, G is continuous across
/// breakpoints, and values left of x0 carry the negative orientation.
void integrate_indefinite(const Mesh& mesh, std::span<const cplx> g, std::size_t anchor_node,
                          std::span<cplx> out);

SampledFunction indefinite_integral(const SampledFunction& g, std::size_t anchor_node);

/// Integral of |g| over [a, b].
double l1_norm(const SampledFunction& g);

}  // namespace spps
