#include "spps/spps_basis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spps/quadrature.hpp"

namespace spps {

namespace {

double max_abs(std::span<const cplx> v) {
    double m = 0.0;
    for (const cplx& z : v) m = std::max(m, std::abs(z));
    return m;
}

double rms(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return v.empty() ? 0.0 : std::sqrt(s / static_cast<double>(v.size()));
}

double ratio_min_max(std::span<const cplx> v) {
    double lo = INFINITY, hi = 0.0;
    for (const cplx& z : v) {
        const double a = std::abs(z);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    return hi > 0.0 ? lo / hi : 0.0;
}

std::string describe(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

}  // namespace

std::shared_ptr<const DiscreteProblem> make_discrete_problem(const Interval& interval,
                                                             std::span<const Piece> pieces,
                                                             std::size_t m) {
    auto mesh = build_mesh(interval, pieces, m);
    auto c = sample_coefficients(pieces, mesh);
    return std::make_shared<const DiscreteProblem>(
        DiscreteProblem{mesh, std::move(c.p), std::move(c.q), std::move(c.r), 0});
}

ResidualReport particular_residual(const DiscreteProblem& problem, const SampledFunction& f,
                                   const SampledFunction& pf_prime, cplx lambda_star) {
    const auto fv = f.values();
    const auto dv = pf_prime.values();
    const auto q = problem.q.values();
    const auto r = problem.r.values();
    const std::size_t n = fv.size();
    std::vector<cplx> g(n), mod(n), G(n), M(n);
    for (std::size_t s = 0; s < n; ++s) {
        g[s] = (q[s] - lambda_star * r[s]) * fv[s];
        mod[s] = std::abs(g[s]);
    }
    integrate_indefinite(*problem.mesh, g, 0, G);
    integrate_indefinite(*problem.mesh, mod, 0, M);
    double worst = 0.0;
    for (std::size_t s = 0; s < n; ++s) worst = std::max(worst, std::abs(dv[s] - dv[0] + G[s]));
    const double scale = std::max(max_abs(dv), M.back().real());
    return ResidualReport{worst, scale};
}

ParticularSolution make_particular_solution(const DiscreteProblem& problem, SampledFunction f,
                                            SampledFunction pf_prime, cplx lambda_star,
                                            double tolerance) {
    const std::size_t zero = f.argmin_abs();
    const double min_abs = std::abs(f[zero]);
    if (!(min_abs > 0.0)) {
        std::ostringstream os;
        os.precision(16);
        os << "particular solution vanishes at x=" << problem.mesh->slot_x()[zero];
        throw NonvanishingError(os.str(), zero);
    }
    const ResidualReport rep = particular_residual(problem, f, pf_prime, lambda_star);
    if (!(rep.max_abs <= tolerance * rep.scale)) {
        throw SolverError("particular solution does not satisfy the equation: relative residual " +
                          describe(rep.relative()));
    }
    return ParticularSolution{std::move(f), std::move(pf_prime), lambda_star, min_abs,
                              rep.relative(), 0.0};
}

ParticularSolution build_seed_solution(const DiscreteProblem& problem, int n_terms) {
    if (n_terms < 1) throw ConfigurationError("n_powers must be at least 1");
    const auto& mesh = problem.mesh;
    const std::size_t slots = mesh->slot_count();
    std::vector<cplx> minus_q(slots), inv_p(slots);
    for (std::size_t s = 0; s < slots; ++s) {
        minus_q[s] = -problem.q[s];
        inv_p[s] = 1.0 / problem.p[s];
    }
    const PowerWeights w{SampledFunction(mesh, std::move(minus_q)),
                         SampledFunction(mesh, std::move(inv_p))};

    // Series at mu = 1 with f = 1 (so pf' = 0).
    std::vector<cplx> y1(slots), py1(slots), y2(slots), py2(slots);
    double last1 = 0.0, last2 = 0.0;
    const int n_max = 2 * n_terms + 1;
    stream_formal_powers(w, problem.anchor_node, n_max,
                         [&](int n, std::span<const cplx> t, std::span<const cplx> x) {
                             auto& tilde_sum = n % 2 == 0 ? y1 : py1;
                             auto& plain_sum = n % 2 == 0 ? py2 : y2;
                             // X~^(2N+1) would start the next term of p y1'.
                             const bool tilde_used = n <= 2 * n_terms;
                             for (std::size_t s = 0; s < slots; ++s) {
                                 if (tilde_used) tilde_sum[s] += t[s];
                                 plain_sum[s] += x[s];
                             }
                             if (n == 2 * n_terms) last1 = max_abs(t);
                             if (n == 2 * n_terms + 1) last2 = max_abs(x);
                         });
    const double tail = std::max(last1 / std::max(max_abs(y1), 1e-300),
                                 last2 / std::max(max_abs(y2), 1e-300));

    const std::array<std::pair<cplx, cplx>, 4> combos{{{1.0, cplx(0, 1)},
                                                       {1.0, cplx(0, -1)},
                                                       {1.0, 1.0},
                                                       {1.0, -1.0}}};
    for (const auto& [c1, c2] : combos) {
        std::vector<cplx> f(slots), pf(slots);
        for (std::size_t s = 0; s < slots; ++s) {
            f[s] = c1 * y1[s] + c2 * y2[s];
            pf[s] = c1 * py1[s] + c2 * py2[s];
        }
        if (ratio_min_max(f) <= 1e-10) continue;
        SampledFunction fs(mesh, std::move(f));
        SampledFunction ps(mesh, std::move(pf));
        try {
            ParticularSolution sol = make_particular_solution(problem, std::move(fs), std::move(ps), 0.0);
            sol.series_tail = tail;
            return sol;
        } catch (const NonvanishingError&) {
            continue;
        } catch (const SolverError& e) {
            throw SeedFailure(std::string("seed solution inaccurate: ") + e.what());
        }
    }
    throw SeedFailure("every seed combination of the two series solutions comes close to zero");
}

double SppsBasis::trust_radius() const {
    const double c = bounds_.c1 * bounds_.c2;
    if (!(c > 0.0)) return INFINITY;
    const double n = static_cast<double>(n_terms_);
    return std::exp((2.0 * std::lgamma(n + 1.0) + std::log(1e-10)) / n) / c;
}

SppsBasis build_basis(ParticularSolution particular, std::shared_ptr<const DiscreteProblem> problem,
                      int n_terms, PowerStorage storage) {
    if (n_terms < 1) throw ConfigurationError("n_powers must be at least 1");
    PowerWeights weights = make_power_weights(particular.f, problem->p, problem->r);
    SppsBasis basis(problem, std::move(particular), weights, n_terms, storage);
    const int n_max = 2 * n_terms + 1;
    basis.bounds_ = bound_constants(weights);
    basis.tilde_b_.reserve(static_cast<std::size_t>(n_max) + 1);
    basis.plain_b_.reserve(static_cast<std::size_t>(n_max) + 1);
    if (storage == PowerStorage::dense) {
        auto fp = std::make_shared<FormalPowerSet>(
            compute_formal_powers(weights, problem->anchor_node, n_max));
        for (int n = 0; n <= n_max; ++n) {
            basis.tilde_b_.push_back(fp->x_tilde[static_cast<std::size_t>(n)].at_b());
            basis.plain_b_.push_back(fp->x_plain[static_cast<std::size_t>(n)].at_b());
        }
        basis.powers_ = std::move(fp);
    } else {
        stream_formal_powers(weights, problem->anchor_node, n_max,
                             [&](int, std::span<const cplx> t, std::span<const cplx> x) {
                                 basis.tilde_b_.push_back(t.back());
                                 basis.plain_b_.push_back(x.back());
                             });
    }
    return basis;
}

SeriesSums series_sums(const SppsBasis& basis, cplx mu) {
    const std::size_t slots = basis.problem()->mesh->slot_count();
    const int N = basis.n_terms();
    SeriesSums out;
    out.even_tilde.assign(slots, cplx{});
    out.odd_tilde.assign(slots, cplx{});
    out.odd_plain.assign(slots, cplx{});
    out.even_plain.assign(slots, cplx{});
    out.last_tilde.assign(slots, cplx{});
    out.last_plain.assign(slots, cplx{});

    std::vector<cplx> mu_pow(static_cast<std::size_t>(N) + 2);
    mu_pow[0] = 1.0;
    for (std::size_t k = 1; k < mu_pow.size(); ++k) mu_pow[k] = mu_pow[k - 1] * mu;

    auto accumulate = [&](int n, std::span<const cplx> t, std::span<const cplx> x) {
        if (n % 2 == 0) {
            const int k = n / 2;
            if (k > N) return;
            const cplx m = mu_pow[static_cast<std::size_t>(k)];
            for (std::size_t s = 0; s < slots; ++s) {
                out.even_tilde[s] += m * t[s];
                out.even_plain[s] += m * x[s];
            }
            if (k == N)
                for (std::size_t s = 0; s < slots; ++s) out.last_tilde[s] = m * t[s];
        } else {
            // X~^(2k-1) carries mu^k, X^(2k+1) carries mu^k.
            const int kt = (n + 1) / 2;
            const int kp = (n - 1) / 2;
            const cplx mt = mu_pow[static_cast<std::size_t>(kt)];
            const cplx mp = mu_pow[static_cast<std::size_t>(kp)];
            if (kt <= N)
                for (std::size_t s = 0; s < slots; ++s) out.odd_tilde[s] += mt * t[s];
            for (std::size_t s = 0; s < slots; ++s) out.odd_plain[s] += mp * x[s];
            if (kp == N)
                for (std::size_t s = 0; s < slots; ++s) out.last_plain[s] = mp * x[s];
        }
    };

    const int n_max = 2 * N + 1;
    if (const FormalPowerSet* fp = basis.powers()) {
        for (int n = 0; n <= n_max; ++n) {
            accumulate(n, fp->x_tilde[static_cast<std::size_t>(n)].values(),
                       fp->x_plain[static_cast<std::size_t>(n)].values());
        }
    } else {
        stream_formal_powers(basis.weights(), basis.problem()->anchor_node, n_max, accumulate);
    }
    return out;
}

namespace {

struct Pair {
    std::vector<cplx> u1, pu1, u2, pu2;
    double tail1, tail2;
};

Pair evaluate_both(const SppsBasis& basis, const SeriesSums& s) {
    const auto f = basis.particular().f.values();
    const auto pf = basis.particular().pf_prime.values();
    const std::size_t n = f.size();
    Pair out{std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n),
             0.0, 0.0};
    double l1 = 0.0, l2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.u1[i] = f[i] * s.even_tilde[i];
        out.pu1[i] = pf[i] * s.even_tilde[i] + s.odd_tilde[i] / f[i];
        out.u2[i] = f[i] * s.odd_plain[i];
        out.pu2[i] = pf[i] * s.odd_plain[i] + s.even_plain[i] / f[i];
        l1 = std::max(l1, std::abs(f[i] * s.last_tilde[i]));
        l2 = std::max(l2, std::abs(f[i] * s.last_plain[i]));
    }
    const double m1 = max_abs(out.u1), m2 = max_abs(out.u2);
    out.tail1 = m1 > 0.0 ? l1 / m1 : l1;
    out.tail2 = m2 > 0.0 ? l2 / m2 : l2;
    return out;
}

}  // namespace

SolutionSample evaluate_solution(const SppsBasis& basis, cplx lambda, Which which) {
    const SeriesSums s = series_sums(basis, lambda - basis.center());
    Pair p = evaluate_both(basis, s);
    const auto& mesh = basis.problem()->mesh;
    if (which == Which::first) {
        return SolutionSample{SampledFunction(mesh, std::move(p.u1)),
                              SampledFunction(mesh, std::move(p.pu1)), lambda, p.tail1};
    }
    return SolutionSample{SampledFunction(mesh, std::move(p.u2)), SampledFunction(mesh, std::move(p.pu2)),
                          lambda, p.tail2};
}

SppsBasis shift_basis(const SppsBasis& basis, cplx new_center, std::optional<Combination> combination,
                      double trust_tolerance) {
    const cplx mu = new_center - basis.center();
    const SeriesSums s = series_sums(basis, mu);
    const Pair p = evaluate_both(basis, s);
    const double tail = std::max(p.tail1, p.tail2);
    if (!(tail <= trust_tolerance)) {
        throw ShiftFailure("shift by |mu|=" + describe(std::abs(mu)) +
                           " leaves the trust region (last term " + describe(tail) + ")");
    }

    std::vector<Combination> candidates;
    if (combination) {
        candidates.push_back(*combination);
    } else {
        const cplx i(0, 1);
        candidates = {{1.0, i}, {1.0, -i}, {1.0, 1.0}, {1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};
        // Polar grid around the amplitude-balanced weight s = rms|u1| / rms|u2|.
        const double r2 = rms(p.u2);
        if (r2 > 0.0) {
            const double bal = rms(p.u1) / r2;
            for (double scale : {0.25, 0.5, 1.0, 2.0, 4.0}) {
                for (int k = 0; k < 16; ++k) {
                    candidates.push_back({1.0, std::polar(bal * scale, k * std::numbers::pi / 8.0)});
                }
            }
        }
    }

    const std::size_t n = p.u1.size();
    double best_ratio = -1.0;
    Combination best{1.0, 0.0};
    std::vector<cplx> f(n);
    for (const Combination& c : candidates) {
        for (std::size_t k = 0; k < n; ++k) f[k] = c.c1 * p.u1[k] + c.c2 * p.u2[k];
        const double ratio = ratio_min_max(f);
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best = c;
        }
    }
    if (!(best_ratio > 1e-10)) {
        throw ShiftFailure("no combination of the shifted solutions stays clear of zero at lambda=" +
                           describe(new_center.real()) + (new_center.imag() < 0 ? "" : "+") +
                           describe(new_center.imag()) + "i");
    }

    std::vector<cplx> pf(n);
    for (std::size_t k = 0; k < n; ++k) {
        f[k] = best.c1 * p.u1[k] + best.c2 * p.u2[k];
        pf[k] = best.c1 * p.pu1[k] + best.c2 * p.pu2[k];
    }
    const auto& problem = basis.problem();
    ParticularSolution next = [&] {
        try {
            return make_particular_solution(*problem, SampledFunction(problem->mesh, std::move(f)),
                                            SampledFunction(problem->mesh, std::move(pf)), new_center);
        } catch (const ShiftFailure&) {
            throw;
        } catch (const SolverError& e) {
            throw ShiftFailure(std::string("shifted particular solution rejected: ") + e.what());
        }
    }();
    next.series_tail = tail;
    return build_basis(std::move(next), problem, basis.n_terms(), basis.storage());
}

double truncation_residual(const SppsBasis& basis, cplx lambda, Which which) {
    const cplx c = basis.center();
    const cplx mu = lambda - c;
    const SeriesSums s = series_sums(basis, mu);
    const Pair p = evaluate_both(basis, s);
    const auto& problem = *basis.problem();
    const auto f = basis.particular().f.values();
    const auto q = problem.q.values();
    const auto r = problem.r.values();
    const std::vector<cplx>& u = which == Which::first ? p.u1 : p.u2;
    const std::vector<cplx>& pu = which == Which::first ? p.pu1 : p.pu2;
    const std::vector<cplx>& last = which == Which::first ? s.last_tilde : s.last_plain;
    const std::size_t n = u.size();
    std::vector<cplx> g(n), G(n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx u_prev = u[k] - f[k] * last[k];
        g[k] = mu * r[k] * u_prev - (q[k] - c * r[k]) * u[k];
    }
    integrate_indefinite(*problem.mesh, g, 0, G);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(pu[k] - pu[0] - G[k]));
    return worst;
}

}  // namespace spps
