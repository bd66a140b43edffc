#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "spps/spps_basis.hpp"

namespace spps {

enum class Endpoint { left, right };
enum class DerivativeForm { u_prime, p_u_prime };

/// alpha(lambda) u(E) + beta(lambda) D(E) = 0 where D is u' or p u'.
/// Polynomials are coefficient lists, lowest degree first.
struct BoundaryCondition {
    Endpoint endpoint = Endpoint::left;
    std::vector<cplx> alpha;
    std::vector<cplx> beta;
    DerivativeForm derivative_form = DerivativeForm::p_u_prime;

    /// max(deg alpha, deg beta), ignoring trailing zero coefficients.
    int degree() const;
    /// Throws StructureError when alpha and beta are both zero.
    void validate() const;
};

/// Polynomial coefficients of p(c + nu) in nu.
std::vector<cplx> taylor_shift(std::span<const cplx> poly, cplx c);

/// Horner evaluation, lowest degree first.
cplx evaluate_polynomial(std::span<const cplx> poly, cplx z);

/// Phi_N(lambda) ~ sum_k coeffs[k] (lambda - center)^k.
struct CharacteristicPolynomial {
    std::vector<cplx> coeffs;
    cplx center;
    int degree_from_bc;
    double scale;  ///< max |c_k|

    cplx evaluate(cplx lambda) const;
    cplx derivative(cplx lambda) const;
};

/// Phi = B_L[u1] B_R[u2] - B_L[u2] B_R[u1] from the basis's endpoint powers.
/// Throws ConfigurationError unless the anchor is the left endpoint, and
/// SingularCoefficientError when a u' condition meets p = 0 at its endpoint.
CharacteristicPolynomial assemble_characteristic(const SppsBasis& basis,
                                                 const BoundaryCondition& bc_left,
                                                 const BoundaryCondition& bc_right);

/// All roots of phi as absolute lambda values. Leading coefficients are
/// dropped when they fall below 1e-14 of the largest coefficient after
/// rescaling lambda - center to balance the lowest and highest ones; the rest
/// go through a balanced companion matrix and up to five Newton steps.
/// Throws DegeneratePolynomial when no coefficient is nonzero and finite.
std::vector<cplx> roots_of(const CharacteristicPolynomial& phi);

/// |c0| / (|c1| (1 + |center|)): the relative Newton step from the center.
double validation_residual(const CharacteristicPolynomial& phi);

using PhiEvaluator = std::function<cplx(cplx)>;

/// Winding number of phi along |lambda - center| = radius. Samples double
/// while a phase increment exceeds pi/4, up to 2^18. Throws ContourTooClose
/// when a zero is estimated within 1e-6 radius of the contour.
int count_zeros(const PhiEvaluator& phi, cplx center, double radius, int samples = 1024);

enum class ShiftPolicy { always_previous, previous_if_upper_half, fixed_center };

struct ShiftSchedule {
    cplx delta{0.5, 0.0};
    ShiftPolicy policy = ShiftPolicy::always_previous;
    int max_eigenvalues = 11;
};

struct EigenvalueRecord {
    int index;
    cplx lambda;
    cplx center_used;
    double validation_residual;
    double tail_indicator;
};

/// Everything the sweep needs besides solver settings.
struct SpectralProblem {
    std::shared_ptr<const DiscreteProblem> discrete;
    BoundaryCondition left;
    BoundaryCondition right;
    /// Replaces the seed solution when present.
    std::optional<ParticularSolution> particular;
};

struct SweepConfig {
    int n_terms = 60;
    ShiftSchedule schedule;
    double accept_threshold = 1e-8;
    PowerStorage storage = PowerStorage::streaming;
};

class SweepStalled : public SolverError {
public:
    SweepStalled(const std::string& what, std::vector<EigenvalueRecord> records, cplx last_center)
        : SolverError(what), records_(std::move(records)), last_center_(last_center) {}
    const std::vector<EigenvalueRecord>& records() const noexcept { return records_; }
    cplx last_center() const noexcept { return last_center_; }

private:
    std::vector<EigenvalueRecord> records_;
    cplx last_center_;
};

/// Seed (or supplied) basis for the problem.
SppsBasis initial_basis(const SpectralProblem& problem, const SweepConfig& config);

/// Shift-based sweep. Real problems come back sorted by real part and
/// re-indexed; complex ones in discovery order.
std::vector<EigenvalueRecord> sweep_eigenvalues(const SpectralProblem& problem,
                                                const SweepConfig& config);

struct Landscape {
    int grid;
    cplx center;
    double radius;
    double trust_radius;
    bool exceeds_trust;          ///< some grid point lies beyond trust_radius of the basis centre
    std::vector<double> values;  ///< row-major, rows by decreasing imaginary part

    double at(int row, int col) const { return values[static_cast<std::size_t>(row * grid + col)]; }
    cplx point(int row, int col) const;
};

/// Largest value written for -log|Phi| (at exact zeros).
inline constexpr double landscape_cap = 308.0;

Landscape landscape(const PhiEvaluator& phi, cplx center, double radius, int grid,
                    cplx basis_center = 0.0,
                    double trust_radius = std::numeric_limits<double>::infinity());

Landscape landscape(const SpectralProblem& problem, const SweepConfig& config, cplx center,
                    double radius, int grid);

}  // namespace spps
