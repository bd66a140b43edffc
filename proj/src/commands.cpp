#include "spps/commands.hpp"

#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>

namespace spps {

namespace {

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return exit_code::input_error;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return exit_code::solver_error;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "input error: " << e.what() << "\n";
        return exit_code::input_error;
    }
}

ProblemFile load_with(const std::filesystem::path& file, const Overrides& overrides) {
    ProblemFile pf = load_problem(file);
    overrides.apply(pf.solver);
    return pf;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw InputError("cannot write " + path.string());
    return os;
}

void write_table(std::ostream& os, const std::vector<EigenvalueRecord>& records, const SweepConfig& config,
                 std::size_t effective_m, double seconds) {
    os << "# n_powers=" << config.n_terms << " mesh=" << effective_m << " runtime_s=" << format_real(seconds)
       << "\n";
    os << "n\tre\tim\tresidual\tcenter_re\tcenter_im\n";
    for (const auto& r : records) {
        os << r.index << '\t' << format_real(r.lambda.real()) << '\t' << format_real(r.lambda.imag()) << '\t'
           << format_real(r.validation_residual) << '\t' << format_real(r.center_used.real()) << '\t'
           << format_real(r.center_used.imag()) << "\n";
    }
}

}  // namespace

void Overrides::apply(SolverSettings& s) const {
    if (n_powers) {
        if (*n_powers < 1) throw ConfigurationError("--n-powers must be at least 1");
        s.n_powers = *n_powers;
    }
    if (mesh) {
        if (*mesh < 5) throw ConfigurationError("--mesh must be at least 5");
        s.mesh = *mesh;
    }
    if (delta) s.delta = *delta;
    if (policy) s.policy = *policy;
    if (max_eigenvalues) {
        if (*max_eigenvalues < 0) throw ConfigurationError("--max-eigs must be non-negative");
        s.max_eigenvalues = *max_eigenvalues;
    }
    if (threshold) {
        if (!(*threshold > 0.0)) throw ConfigurationError("--threshold must be positive");
        s.threshold = *threshold;
    }
}

int command_solve(const std::filesystem::path& file, const Overrides& overrides, std::ostream& out,
                  std::ostream& err) {
    return guarded(err, [&] {
        const ProblemFile pf = load_with(file, overrides);
        const auto start = std::chrono::steady_clock::now();
        const PreparedProblem prepared = prepare(pf);
        const std::size_t m = prepared.spectral.discrete->mesh->effective_m();
        auto elapsed = [&] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        };
        auto emit = [&](const std::vector<EigenvalueRecord>& records) {
            const double seconds = elapsed();
            write_table(out, records, prepared.config, m, seconds);
            if (overrides.out) {
                std::ofstream os = open_output(*overrides.out);
                write_table(os, records, prepared.config, m, seconds);
            }
        };
        try {
            emit(sweep_eigenvalues(prepared.spectral, prepared.config));
        } catch (const SweepStalled& e) {
            emit(e.records());
            throw;
        }
        return exit_code::success;
    });
}

int command_landscape(const std::filesystem::path& file, const Overrides& overrides, cplx center,
                      double radius, int grid, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ProblemFile pf = load_with(file, overrides);
        const PreparedProblem prepared = prepare(pf);
        const SppsBasis basis = initial_basis(prepared.spectral, prepared.config);
        const Landscape land = landscape(prepared.spectral, prepared.config, center, radius, grid);

        std::ostringstream meta;
        meta << "center=" << format_complex(center) << " radius=" << format_real(radius) << " grid=" << grid
             << " n_powers=" << prepared.config.n_terms
             << " mesh=" << prepared.spectral.discrete->mesh->effective_m()
             << " basis_center=" << format_complex(basis.center())
             << " trust_radius=" << format_real(land.trust_radius)
             << " exceeds_trust=" << (land.exceeds_trust ? 1 : 0) << " cap=" << format_real(landscape_cap);

        auto write = [&](std::ostream& os) {
            os << "# center=" << format_complex(center) << " radius=" << format_real(radius) << " grid=" << grid
               << "\n";
            for (int i = 0; i < grid; ++i) {
                for (int j = 0; j < grid; ++j) {
                    if (j) os << '\t';
                    os << format_real(land.at(i, j));
                }
                os << "\n";
            }
        };
        if (overrides.out) {
            std::ofstream os = open_output(*overrides.out);
            write(os);
            std::filesystem::path side = *overrides.out;
            side += ".meta";
            std::ofstream ms = open_output(side);
            ms << meta.str() << "\n";
            out << "wrote " << overrides.out->string() << " and " << side.string() << "\n";
        } else {
            write(out);
            err << meta.str() << "\n";
        }
        if (land.exceeds_trust) {
            err << "note: part of the grid lies beyond the trust radius " << format_real(land.trust_radius)
                << " of the expansion centre\n";
        }
        return exit_code::success;
    });
}

int command_count(const std::filesystem::path& file, const Overrides& overrides, cplx center,
                  double radius, int samples, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ProblemFile pf = load_with(file, overrides);
        const PreparedProblem prepared = prepare(pf);
        const SppsBasis basis = initial_basis(prepared.spectral, prepared.config);
        const CharacteristicPolynomial phi =
            assemble_characteristic(basis, prepared.spectral.left, prepared.spectral.right);
        out << count_zeros([&](cplx z) { return phi.evaluate(z); }, center, radius, samples) << "\n";
        return exit_code::success;
    });
}

int command_verify(const std::filesystem::path& file, const std::filesystem::path& references,
                   const Overrides& overrides, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        ProblemFile pf = load_with(file, overrides);
        const std::vector<ReferenceValue> refs = load_references(references);
        if (refs.empty()) throw InputError("reference file " + references.string() + " lists no values");
        pf.solver.max_eigenvalues = std::max(pf.solver.max_eigenvalues, static_cast<int>(refs.size()));
        const PreparedProblem prepared = prepare(pf);
        std::vector<EigenvalueRecord> records;
        try {
            records = sweep_eigenvalues(prepared.spectral, prepared.config);
        } catch (const SweepStalled& e) {
            err << "warning: " << e.what() << "\n";
            records = e.records();
        }
        out << "n\tref_re\tref_im\tre\tim\tabs_error\ttolerance\tstatus\n";
        bool all = true;
        for (const ReferenceValue& r : refs) {
            const EigenvalueRecord* best = nullptr;
            for (const auto& rec : records) {
                if (!best || std::abs(rec.lambda - r.value) < std::abs(best->lambda - r.value)) best = &rec;
            }
            const double e = best ? std::abs(best->lambda - r.value) : INFINITY;
            const bool ok = e <= r.tolerance;
            all = all && ok;
            out << r.index << '\t' << format_real(r.value.real()) << '\t' << format_real(r.value.imag()) << '\t'
                << (best ? format_real(best->lambda.real()) : "-") << '\t'
                << (best ? format_real(best->lambda.imag()) : "-") << '\t' << format_real(e) << '\t'
                << format_real(r.tolerance) << '\t' << (ok ? "PASS" : "FAIL") << "\n";
        }
        return all ? exit_code::success : exit_code::failure;
    });
}

int command_powers(const std::filesystem::path& file, const Overrides& overrides, int n, double x,
                   std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const ProblemFile pf = load_with(file, overrides);
        if (n < 0) throw ConfigurationError("power index must be non-negative");
        if (x < pf.interval.a || x > pf.interval.b) throw ConfigurationError("x lies outside [a, b]");
        const PreparedProblem prepared = prepare(pf);
        const DiscreteProblem& dp = *prepared.spectral.discrete;
        const ParticularSolution particular = prepared.spectral.particular
                                                  ? *prepared.spectral.particular
                                                  : build_seed_solution(dp, prepared.config.n_terms);
        const PowerWeights w = make_power_weights(particular.f, dp.p, dp.r);
        const std::size_t node = dp.mesh->nearest_node(x);
        const std::size_t slot = node + 1 >= dp.mesh->node_count() ? dp.mesh->slot_count() - 1
                                                                   : dp.mesh->right_slot(node);
        cplx tilde{}, plain{};
        stream_formal_powers(w, dp.anchor_node, n, [&](int k, std::span<const cplx> t, std::span<const cplx> p) {
            if (k == n) {
                tilde = t[slot];
                plain = p[slot];
            }
        });
        out << "x\t" << format_real(dp.mesh->node(node)) << "\n"
            << "x_tilde\t" << format_real(tilde.real()) << '\t' << format_real(tilde.imag()) << "\n"
            << "x_plain\t" << format_real(plain.real()) << '\t' << format_real(plain.imag()) << "\n";
        return exit_code::success;
    });
}

int command_shoot(const std::filesystem::path& file, cplx guess, int steps_per_piece, std::ostream& out,
                  std::ostream& err) {
    return guarded(err, [&] {
        const ProblemFile pf = load_problem(file);
        const ShootingProblem sp{pf.interval, pf.coefficient_pieces(), pf.left, pf.right};
        const cplx lambda = refine_root(sp, guess, steps_per_piece);
        out << format_real(lambda.real()) << '\t' << format_real(lambda.imag()) << "\n";
        return exit_code::success;
    });
}

}  // namespace spps
