#include <algorithm>
#include <cmath>

#include "spps/spectral.hpp"

namespace spps {

cplx Landscape::point(int row, int col) const {
    const double step = 2.0 * radius / static_cast<double>(grid - 1);
    return center + cplx(-radius + step * col, radius - step * row);
}

Landscape landscape(const PhiEvaluator& phi, cplx center, double radius, int grid, cplx basis_center,
                    double trust_radius) {
    if (grid < 2) throw ConfigurationError("landscape grid must be at least 2");
    if (!(radius > 0.0)) throw ConfigurationError("landscape radius must be positive");
    Landscape out{grid, center, radius, trust_radius, false,
                  std::vector<double>(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid))};
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const cplx z = out.point(i, j);
            if (std::abs(z - basis_center) > trust_radius) out.exceeds_trust = true;
            const double a = std::abs(phi(z));
            double v = std::isnan(a) ? -landscape_cap : a > 0.0 ? -std::log(a) : landscape_cap;
            v = std::clamp(v, -landscape_cap, landscape_cap);
            out.values[static_cast<std::size_t>(i * grid + j)] = v;
        }
    }
    return out;
}

Landscape landscape(const SpectralProblem& problem, const SweepConfig& config, cplx center,
                    double radius, int grid) {
    if (grid < 16) throw ConfigurationError("landscape grid must be at least 16");
    const SppsBasis basis = initial_basis(problem, config);
    const CharacteristicPolynomial phi = assemble_characteristic(basis, problem.left, problem.right);
    return landscape([&](cplx z) { return phi.evaluate(z); }, center, radius, grid, basis.center(),
                     basis.trust_radius());
}

}  // namespace spps
