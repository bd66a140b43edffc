#include <cmath>
#include <numbers>
#include <sstream>

#include "spps/spectral.hpp"

namespace spps {

int count_zeros(const PhiEvaluator& phi, cplx center, double radius, int samples) {
    if (samples < 256) throw ConfigurationError("count_zeros needs at least 256 samples");
    if (!(radius > 0.0)) throw ConfigurationError("count_zeros needs a positive radius");
    constexpr std::size_t max_samples = std::size_t{1} << 18;
    const double two_pi = 2.0 * std::numbers::pi;

    std::size_t n = static_cast<std::size_t>(samples);
    std::vector<cplx> z(n), v(n);
    for (std::size_t k = 0; k < n; ++k) {
        z[k] = center + std::polar(radius, two_pi * static_cast<double>(k) / static_cast<double>(n));
        v[k] = phi(z[k]);
    }

    double total = 0.0;
    for (;;) {
        double worst = 0.0;
        total = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double d = std::arg(v[(k + 1) % n] / v[k]);
            worst = std::max(worst, std::abs(d));
            total += d;
        }
        if (worst <= std::numbers::pi / 4.0 || n >= max_samples) break;
        // Insert midpoints.
        std::vector<cplx> z2(2 * n), v2(2 * n);
        for (std::size_t k = 0; k < n; ++k) {
            z2[2 * k] = z[k];
            v2[2 * k] = v[k];
            z2[2 * k + 1] =
                center + std::polar(radius, two_pi * static_cast<double>(2 * k + 1) / static_cast<double>(2 * n));
            v2[2 * k + 1] = phi(z2[2 * k + 1]);
        }
        z.swap(z2);
        v.swap(v2);
        n *= 2;
    }

    // Newton distance |phi| / |phi'| with a central difference along the contour.
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t prev = (k + n - 1) % n, next = (k + 1) % n;
        const double slope = std::abs(v[next] - v[prev]) / std::abs(z[next] - z[prev]);
        const double a = std::abs(v[k]);
        if (a == 0.0 || (slope > 0.0 && a / slope < 1e-6 * radius) || !std::isfinite(a)) {
            std::ostringstream os;
            os.precision(16);
            os << "a zero lies within 1e-6 radius of the contour near " << z[k].real()
               << (z[k].imag() < 0 ? "" : "+") << z[k].imag() << "i";
            throw ContourTooClose(os.str(), z[k]);
        }
    }
    return static_cast<int>(std::lround(total / two_pi));
}

}  // namespace spps
