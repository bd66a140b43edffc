#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "spps/spectral.hpp"

namespace spps {

namespace {

double norm1(cplx z) { return std::abs(z.real()) + std::abs(z.imag()); }

/// Parlett-Reinsch balancing with radix 2 (exact in floating point).
void balance(Eigen::MatrixXcd& a) {
    const Eigen::Index n = a.rows();
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (Eigen::Index i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == i) continue;
                c += norm1(a(j, i));
                r += norm1(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            const double s = c + r;
            double f = 1.0;
            double g = r / radix;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                a.row(i) /= f;
                a.col(i) *= f;
            }
        }
    }
}

}  // namespace

std::vector<cplx> roots_of(const CharacteristicPolynomial& phi) {
    const auto& c = phi.coeffs;
    int lo = -1, hi = -1;
    for (int k = 0; k < static_cast<int>(c.size()); ++k) {
        const cplx z = c[static_cast<std::size_t>(k)];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw DegeneratePolynomial("characteristic polynomial has non-finite coefficients");
        }
        if (z != cplx{}) {
            if (lo < 0) lo = k;
            hi = k;
        }
    }
    if (lo < 0) throw DegeneratePolynomial("characteristic polynomial is identically zero");

    std::vector<cplx> roots(static_cast<std::size_t>(lo), phi.center);
    if (hi == lo) return roots;

    // nu = (lambda - center) / rho balances |c_lo| against |c_hi|.
    const double log_lo = std::log(std::abs(c[static_cast<std::size_t>(lo)]));
    const double log_rho =
        (log_lo - std::log(std::abs(c[static_cast<std::size_t>(hi)]))) / static_cast<double>(hi - lo);
    const double rho = std::exp(log_rho);
    std::vector<cplx> s(static_cast<std::size_t>(hi - lo) + 1);
    double smax = 0.0;
    for (int k = lo; k <= hi; ++k) {
        const cplx z = c[static_cast<std::size_t>(k)];
        if (z == cplx{}) continue;
        const double mag = std::exp(std::log(std::abs(z)) + (k - lo) * log_rho - log_lo);
        s[static_cast<std::size_t>(k - lo)] = std::polar(mag, std::arg(z));
        smax = std::max(smax, mag);
    }
    int d = hi - lo;
    while (d > 0 && std::abs(s[static_cast<std::size_t>(d)]) <= 1e-14 * smax) --d;
    if (d == 0) return roots;

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    const cplx lead = s[static_cast<std::size_t>(d)];
    for (int j = 0; j < d; ++j) comp(0, j) = -s[static_cast<std::size_t>(d - 1 - j)] / lead;
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    balance(comp);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    if (solver.info() != Eigen::Success) {
        throw DegeneratePolynomial("companion eigenvalue iteration did not converge");
    }

    auto eval = [&](cplx nu, cplx& deriv) {
        cplx v{}, dv{};
        for (std::size_t k = s.size(); k-- > 0;) {
            dv = dv * nu + v;
            v = v * nu + s[k];
        }
        deriv = dv;
        return v;
    };
    for (Eigen::Index i = 0; i < d; ++i) {
        cplx nu = solver.eigenvalues()[i];
        cplx dv;
        cplx v = eval(nu, dv);
        for (int step = 0; step < 5 && v != cplx{} && dv != cplx{}; ++step) {
            const cplx trial = nu - v / dv;
            cplx dt;
            const cplx vt = eval(trial, dt);
            if (!(std::abs(vt) < std::abs(v))) break;
            nu = trial;
            v = vt;
            dv = dt;
        }
        roots.push_back(phi.center + rho * nu);
    }
    return roots;
}

}  // namespace spps
