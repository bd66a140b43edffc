#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "spps/formal_powers.hpp"
#include "spps/mesh.hpp"

namespace spps {

/// Sampled coefficients of (p u')' + q u = lambda r u together with the node
/// x0 at which every formal power is anchored.
struct DiscreteProblem {
    std::shared_ptr<const Mesh> mesh;
    SampledFunction p;
    SampledFunction q;
    SampledFunction r;
    std::size_t anchor_node = 0;

    bool is_real() const { return p.is_real() && q.is_real() && r.is_real(); }
};

std::shared_ptr<const DiscreteProblem> make_discrete_problem(const Interval& interval,
                                                             std::span<const Piece> pieces,
                                                             std::size_t m);

/// Nonvanishing solution f of (p f')' + q f = lambda_star r f, carried with its
/// quasi-derivative p f'.
struct ParticularSolution {
    SampledFunction f;
    SampledFunction pf_prime;
    cplx lambda_star;
    double min_abs;
    double residual;     ///< integrated equation residual relative to its scale
    double series_tail;  ///< relative size of the last series term used to build f (0 if supplied)
};

struct ResidualReport {
    double max_abs;
    double scale;
    double relative() const { return scale > 0.0 ? max_abs / scale : max_abs; }
};

/// max over slots of |pf'(x) - pf'(a) + int_a^x (q - lambda_star r) f dt|, with
/// scale max(max|pf'|, ||(q - lambda_star r) f||_1).
ResidualReport particular_residual(const DiscreteProblem& problem, const SampledFunction& f,
                                   const SampledFunction& pf_prime, cplx lambda_star);

/// Validates and wraps a user-supplied particular solution. Throws
/// NonvanishingError if f has a zero and SolverError if the residual exceeds
/// tolerance * scale.
ParticularSolution make_particular_solution(const DiscreteProblem& problem, SampledFunction f,
                                            SampledFunction pf_prime, cplx lambda_star,
                                            double tolerance = 1e-9);

/// Nonvanishing solution for lambda = 0 built from the series with f = 1 and
/// -q in place of r, evaluated at lambda = 1: f = c1 y1 + c2 y2 with (c1, c2)
/// tried in the order (1, i), (1, -i), (1, 1), (1, -1).
ParticularSolution build_seed_solution(const DiscreteProblem& problem, int n_terms);

enum class PowerStorage {
    dense,     ///< keep every formal power at every slot
    streaming  ///< keep endpoint values only; recompute on evaluation
};

/// Spectral parameter power series basis centred at particular.lambda_star:
///
///     u1 = f sum_k mu^k X~^(2k),   u2 = f sum_k mu^k X^(2k+1),   mu = lambda - center
class SppsBasis {
public:
    const std::shared_ptr<const DiscreteProblem>& problem() const noexcept { return problem_; }
    const ParticularSolution& particular() const noexcept { return particular_; }
    const PowerWeights& weights() const noexcept { return weights_; }
    cplx center() const noexcept { return particular_.lambda_star; }
    int n_terms() const noexcept { return n_terms_; }
    PowerStorage storage() const noexcept { return storage_; }
    /// Null for streaming storage.
    const FormalPowerSet* powers() const noexcept { return powers_.get(); }
    /// X~^(n)(b) and X^(n)(b), n = 0..2N+1.
    std::span<const cplx> tilde_at_b() const noexcept { return tilde_b_; }
    std::span<const cplx> plain_at_b() const noexcept { return plain_b_; }
    const BoundConstants& bounds() const noexcept { return bounds_; }

    /// Radius in mu within which the growth bounds put the last retained
    /// term below 1e-10: ((N!)^2 1e-10)^(1/N) / (C1 C2).
    double trust_radius() const;

private:
    friend SppsBasis build_basis(ParticularSolution, std::shared_ptr<const DiscreteProblem>, int,
                                 PowerStorage);
    SppsBasis(std::shared_ptr<const DiscreteProblem> problem, ParticularSolution particular,
              PowerWeights weights, int n_terms, PowerStorage storage)
        : problem_(std::move(problem)),
          particular_(std::move(particular)),
          weights_(std::move(weights)),
          n_terms_(n_terms),
          storage_(storage) {}

    std::shared_ptr<const DiscreteProblem> problem_;
    ParticularSolution particular_;
    PowerWeights weights_;
    std::shared_ptr<const FormalPowerSet> powers_;
    std::vector<cplx> tilde_b_;
    std::vector<cplx> plain_b_;
    BoundConstants bounds_{0.0, 0.0};
    int n_terms_;
    PowerStorage storage_;
};

SppsBasis build_basis(ParticularSolution particular, std::shared_ptr<const DiscreteProblem> problem,
                      int n_terms, PowerStorage storage = PowerStorage::streaming);

enum class Which { first, second };

struct SolutionSample {
    SampledFunction u;
    SampledFunction pu_prime;
    cplx lambda;
    double truncation_tail;  ///< max|last retained term| / max|u|
};

/// Partial sums of the four series at every slot for mu = lambda - center.
struct SeriesSums {
    std::vector<cplx> even_tilde;  ///< sum_{k=0}^{N} mu^k X~^(2k)
    std::vector<cplx> odd_tilde;   ///< sum_{k=1}^{N} mu^k X~^(2k-1)
    std::vector<cplx> odd_plain;   ///< sum_{k=0}^{N} mu^k X^(2k+1)
    std::vector<cplx> even_plain;  ///< sum_{k=0}^{N} mu^k X^(2k)
    std::vector<cplx> last_tilde;  ///< mu^N X~^(2N)
    std::vector<cplx> last_plain;  ///< mu^N X^(2N+1)
};

SeriesSums series_sums(const SppsBasis& basis, cplx mu);

SolutionSample evaluate_solution(const SppsBasis& basis, cplx lambda, Which which);

struct Combination {
    cplx c1;
    cplx c2;
};

/// Re-centres the basis at new_center using f* = c1 u1 + c2 u2 evaluated
/// there. Without an explicit combination the candidates (1,i), (1,-i),
/// (1,1), (1,-1), (1,0), (0,1) and (1, s 2^j e^(i k pi/8)) for j = -2..2,
/// k = 0..15, with s = rms|u1| / rms|u2|, are ranked by min|f*| / max|f*|. Throws ShiftFailure when the shift leaves the
/// trust region (last term above trust_tolerance) or no candidate stays
/// clear of zero.
SppsBasis shift_basis(const SppsBasis& basis, cplx new_center,
                      std::optional<Combination> combination = std::nullopt,
                      double trust_tolerance = 1e-10);

/// max over slots of |pu'_N(x) - pu'_N(a) - int_a^x (mu r u_{N-1} - (q - c r) u_N) dt|.
/// The identity is exact for the partial sums, so only quadrature error remains.
double truncation_residual(const SppsBasis& basis, cplx lambda, Which which);

}  // namespace spps
