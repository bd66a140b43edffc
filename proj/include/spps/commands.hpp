#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "spps/problem_file.hpp"

namespace spps {

/// Command-line values that take precedence over the file's [solver] section.
struct Overrides {
    std::optional<int> n_powers;
    std::optional<std::size_t> mesh;
    std::optional<cplx> delta;
    std::optional<ShiftPolicy> policy;
    std::optional<int> max_eigenvalues;
    std::optional<double> threshold;
    std::optional<std::filesystem::path> out;

    void apply(SolverSettings& settings) const;
};

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int failure = 1;  ///< verify found a value outside tolerance
inline constexpr int input_error = 2;
inline constexpr int solver_error = 3;
}  // namespace exit_code

/// Every command writes results to `out`, diagnostics to `err`, and returns
/// the process exit code.
int command_solve(const std::filesystem::path& file, const Overrides& overrides, std::ostream& out,
                  std::ostream& err);

int command_landscape(const std::filesystem::path& file, const Overrides& overrides, cplx center,
                      double radius, int grid, std::ostream& out, std::ostream& err);

int command_count(const std::filesystem::path& file, const Overrides& overrides, cplx center,
                  double radius, int samples, std::ostream& out, std::ostream& err);

int command_verify(const std::filesystem::path& file, const std::filesystem::path& references,
                   const Overrides& overrides, std::ostream& out, std::ostream& err);

/// X~^(n) and X^(n) at the mesh node nearest to x.
int command_powers(const std::filesystem::path& file, const Overrides& overrides, int n, double x,
                   std::ostream& out, std::ostream& err);

/// Shooting-oracle refinement from a guess (maintenance only).
int command_shoot(const std::filesystem::path& file, cplx guess, int steps_per_piece, std::ostream& out,
                  std::ostream& err);

}  // namespace spps
