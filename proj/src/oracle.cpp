#include "spps/oracle.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace spps {

namespace {

/// Samples an expression at lo + j h / 2, j = 0..2 steps.
std::vector<cplx> half_step_samples(const Expression& e, double lo, double h, int steps) {
    const std::size_t n = 2 * static_cast<std::size_t>(steps) + 1;
    if (e.is_constant()) return std::vector<cplx>(n, e.eval(lo));
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = e.eval(lo + 0.5 * h * static_cast<double>(j));
    return out;
}

}  // namespace

ShootingResult shoot(const ShootingProblem& problem, cplx lambda, int steps_per_piece) {
    if (steps_per_piece < 100) throw ConfigurationError("shooting needs at least 100 steps per piece");
    if (problem.pieces.empty()) throw StructureError("shooting problem has no pieces");

    const cplx alpha_l = evaluate_polynomial(problem.left.alpha, lambda);
    const cplx beta_l = evaluate_polynomial(problem.left.beta, lambda);
    const auto& first = problem.pieces.front();
    const auto& last = problem.pieces.back();

    cplx u = beta_l;
    cplx w = -alpha_l;
    if (problem.left.derivative_form == DerivativeForm::u_prime) w *= first.p.eval(first.lo);

    std::size_t count = 0;
    for (const Piece& pc : problem.pieces) {
        const double h = (pc.hi - pc.lo) / steps_per_piece;
        const auto p = half_step_samples(pc.p, pc.lo, h, steps_per_piece);
        const auto q = half_step_samples(pc.q, pc.lo, h, steps_per_piece);
        const auto r = half_step_samples(pc.r, pc.lo, h, steps_per_piece);
        auto rhs = [&](std::size_t j, cplx uu, cplx ww) {
            return std::array<cplx, 2>{ww / p[j], (lambda * r[j] - q[j]) * uu};
        };
        for (int s = 0; s < steps_per_piece; ++s) {
            const std::size_t j = 2 * static_cast<std::size_t>(s);
            const auto k1 = rhs(j, u, w);
            const auto k2 = rhs(j + 1, u + 0.5 * h * k1[0], w + 0.5 * h * k1[1]);
            const auto k3 = rhs(j + 1, u + 0.5 * h * k2[0], w + 0.5 * h * k2[1]);
            const auto k4 = rhs(j + 2, u + h * k3[0], w + h * k3[1]);
            u += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
            w += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
            ++count;
        }
    }

    const cplx alpha_r = evaluate_polynomial(problem.right.alpha, lambda);
    const cplx beta_r = evaluate_polynomial(problem.right.beta, lambda);
    cplx deriv = w;
    if (problem.right.derivative_form == DerivativeForm::u_prime) deriv /= last.p.eval(last.hi);
    return ShootingResult{alpha_r * u + beta_r * deriv, count};
}

cplx refine_root(const ShootingProblem& problem, cplx guess, int steps_per_piece) {
    cplx x0 = guess;
    cplx x1 = guess + 1e-6 * (1.0 + std::abs(guess));
    cplx f0 = shoot(problem, x0, steps_per_piece).mismatch;
    cplx f1 = shoot(problem, x1, steps_per_piece).mismatch;
    for (int it = 0; it < 50; ++it) {
        if (f1 == cplx{}) return x1;
        if (f1 == f0) break;
        const cplx x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        if (!std::isfinite(x2.real()) || !std::isfinite(x2.imag())) break;
        if (std::abs(x2 - x1) <= 1e-12 * (1.0 + std::abs(x2))) return x2;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = shoot(problem, x1, steps_per_piece).mismatch;
    }
    std::ostringstream os;
    os.precision(16);
    os << "secant iteration from " << guess.real() << (guess.imag() < 0 ? "" : "+") << guess.imag()
       << "i did not converge";
    throw OracleFailure(os.str());
}

}  // namespace spps
