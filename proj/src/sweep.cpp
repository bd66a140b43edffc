#include <algorithm>
#include <cmath>
#include <sstream>

#include "spps/spectral.hpp"

namespace spps {

namespace {

bool same_eigenvalue(cplx a, cplx b) { return std::abs(a - b) <= 1e-6 * (1.0 + std::abs(b)); }

bool is_real_problem(const SpectralProblem& problem) {
    auto real_poly = [](const std::vector<cplx>& p) {
        return std::all_of(p.begin(), p.end(), [](cplx z) { return z.imag() == 0.0; });
    };
    return problem.discrete->is_real() && real_poly(problem.left.alpha) &&
           real_poly(problem.left.beta) && real_poly(problem.right.alpha) &&
           real_poly(problem.right.beta);
}

std::string show(cplx z) {
    std::ostringstream os;
    os.precision(10);
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

struct Validated {
    cplx lambda;
    double residual;
    double tail;
    SppsBasis basis;
};

cplx nearest_root(const CharacteristicPolynomial& phi) {
    const auto roots = roots_of(phi);
    if (roots.empty()) return phi.center;
    return *std::min_element(roots.begin(), roots.end(), [&](cplx a, cplx b) {
        return std::abs(a - phi.center) < std::abs(b - phi.center);
    });
}

/// Re-centres at the candidate, checks the relative Newton step there and
/// refines with the nearest root of the re-centred polynomial.
std::optional<Validated> validate(const SppsBasis& from, cplx candidate, const SpectralProblem& problem,
                                  double threshold) {
    try {
        SppsBasis basis = shift_basis(from, candidate);
        const double tail = basis.particular().series_tail;
        CharacteristicPolynomial phi = assemble_characteristic(basis, problem.left, problem.right);
        double residual = validation_residual(phi);
        if (!(residual <= threshold)) return std::nullopt;
        cplx lambda = nearest_root(phi);
        for (int it = 0; it < 3; ++it) {
            if (std::abs(lambda - basis.center()) <= 1e-13 * (1.0 + std::abs(lambda))) break;
            basis = shift_basis(basis, lambda);
            phi = assemble_characteristic(basis, problem.left, problem.right);
            residual = validation_residual(phi);
            lambda = nearest_root(phi);
        }
        if (!(residual <= threshold)) return std::nullopt;
        return Validated{lambda, residual, tail, std::move(basis)};
    } catch (const ShiftFailure&) {
        return std::nullopt;
    } catch (const NonvanishingError&) {
        return std::nullopt;
    } catch (const DegeneratePolynomial&) {
        return std::nullopt;
    }
}

}  // namespace

SppsBasis initial_basis(const SpectralProblem& problem, const SweepConfig& config) {
    if (problem.particular) {
        return build_basis(*problem.particular, problem.discrete, config.n_terms, config.storage);
    }
    return build_basis(build_seed_solution(*problem.discrete, config.n_terms), problem.discrete,
                       config.n_terms, config.storage);
}

std::vector<EigenvalueRecord> sweep_eigenvalues(const SpectralProblem& problem,
                                                const SweepConfig& config) {
    const ShiftSchedule& sched = config.schedule;
    if (sched.max_eigenvalues < 0) throw ConfigurationError("max_eigenvalues must be non-negative");
    if (sched.policy != ShiftPolicy::fixed_center && sched.delta == cplx{}) {
        throw ConfigurationError("delta must be nonzero for a sweeping policy");
    }
    problem.left.validate();
    problem.right.validate();

    std::vector<EigenvalueRecord> records;
    if (sched.max_eigenvalues == 0) return records;

    SppsBasis basis = initial_basis(problem, config);
    auto recorded = [&](cplx z) {
        return std::any_of(records.begin(), records.end(),
                           [&](const EigenvalueRecord& r) { return same_eigenvalue(z, r.lambda); });
    };

    int consecutive_failures = 0;
    while (static_cast<int>(records.size()) < sched.max_eigenvalues) {
        const CharacteristicPolynomial phi = assemble_characteristic(basis, problem.left, problem.right);
        std::vector<cplx> candidates = roots_of(phi);
        const cplx c = basis.center();
        std::sort(candidates.begin(), candidates.end(),
                  [&](cplx a, cplx b) { return std::abs(a - c) < std::abs(b - c); });

        std::optional<Validated> accepted;
        for (const cplx z : candidates) {
            if (recorded(z)) continue;
            auto v = validate(basis, z, problem, config.accept_threshold);
            if (!v) {
                if (++consecutive_failures >= 3) {
                    throw SweepStalled("three consecutive candidate roots failed validation near center " +
                                           show(c) + "; try more formal powers or a finer mesh",
                                       records, c);
                }
                continue;
            }
            if (recorded(v->lambda)) continue;
            consecutive_failures = 0;
            accepted = std::move(v);
            break;
        }
        if (!accepted) {
            throw SweepStalled("no further candidate roots near center " + show(c) +
                                   "; try more formal powers or a finer mesh",
                               records, c);
        }
        records.push_back(EigenvalueRecord{static_cast<int>(records.size()), accepted->lambda, c,
                                           accepted->residual, accepted->tail});

        const cplx lambda = accepted->lambda;
        bool move = false;
        switch (sched.policy) {
            case ShiftPolicy::always_previous: move = true; break;
            case ShiftPolicy::previous_if_upper_half: move = lambda.imag() >= 0.0; break;
            case ShiftPolicy::fixed_center: move = false; break;
        }
        if (move && static_cast<int>(records.size()) < sched.max_eigenvalues) {
            try {
                basis = shift_basis(accepted->basis, lambda + sched.delta);
            } catch (const ShiftFailure&) {
                break;
            }
        }
    }

    if (is_real_problem(problem)) {
        std::stable_sort(records.begin(), records.end(), [](const EigenvalueRecord& a, const EigenvalueRecord& b) {
            return a.lambda.real() < b.lambda.real();
        });
        for (std::size_t i = 0; i < records.size(); ++i) records[i].index = static_cast<int>(i);
    }
    return records;
}

}  // namespace spps
