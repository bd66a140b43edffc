#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spps/oracle.hpp"
#include "spps/spectral.hpp"

namespace spps {

/// One [piece] section: coefficient expressions on [lo, hi] and, optionally,
/// the particular solution f with either f' or p f'.
struct PieceSpec {
    double lo;
    double hi;
    Expression p;
    Expression q;
    Expression r;
    std::optional<Expression> f;
    std::optional<Expression> f_derivative;
    DerivativeForm f_derivative_form = DerivativeForm::u_prime;
};

struct SolverSettings {
    int n_powers = 60;
    std::size_t mesh = 20000;
    cplx delta{0.5, 0.0};
    ShiftPolicy policy = ShiftPolicy::always_previous;
    int max_eigenvalues = 11;
    double threshold = 1e-8;
    cplx particular_lambda{0.0, 0.0};
};

/// Text form:
///
///     # comment
///     [problem]
///     a = -1
///     b = 1
///
///     [piece]                 (one per smooth stretch, in order)
///     lo = -1
///     hi = 0
///     p = "-1"
///     q = "-1"
///     r = "1"
///     f = "cos(x)"            (optional, on every piece or none)
///     f_prime = "-sin(x)"     (or pf_prime = "...")
///
///     [boundary.left]         (and [boundary.right])
///     alpha = [0, 1]          (coefficients in lambda, lowest degree first)
///     beta = [1]
///     derivative = u_prime    (or p_u_prime, the default)
///
///     [solver]                (every key optional)
///     n_powers = 60
///     mesh = 50000
///     delta = 0.5             (complex constants such as 0.5+0.5i)
///     policy = always_previous | previous_if_upper_half | fixed_center
///     max_eigenvalues = 11
///     threshold = 1e-8
///     particular_lambda = 0
struct ProblemFile {
    Interval interval{0.0, 0.0};
    std::vector<PieceSpec> pieces;
    BoundaryCondition left{Endpoint::left, {}, {}, DerivativeForm::p_u_prime};
    BoundaryCondition right{Endpoint::right, {}, {}, DerivativeForm::p_u_prime};
    SolverSettings solver;

    bool has_particular() const;
    std::vector<Piece> coefficient_pieces() const;
};

/// Throws StructureError (with the line number) or ParseError.
ProblemFile parse_problem(std::string_view text);
std::string serialize_problem(const ProblemFile& file);
ProblemFile load_problem(const std::filesystem::path& path);

bool same_problem(const ProblemFile& a, const ProblemFile& b);

std::string_view policy_name(ShiftPolicy policy);
ShiftPolicy parse_policy(std::string_view name);

/// Everything the library needs to run a problem file.
struct PreparedProblem {
    SpectralProblem spectral;
    ShootingProblem shooting;
    SweepConfig config;
};

/// Samples the coefficients on the configured mesh and, when the file
/// supplies f, validates it as the particular solution for particular_lambda.
PreparedProblem prepare(const ProblemFile& file);

/// Reference eigenvalues: lines "n re im tolerance"; '#' starts a comment.
struct ReferenceValue {
    int index;
    cplx value;
    double tolerance;
};

std::vector<ReferenceValue> parse_references(std::string_view text);
std::vector<ReferenceValue> load_references(const std::filesystem::path& path);

/// Formats with 16 significant digits.
std::string format_real(double v);
/// "a+bi" with 17 significant digits per part (round-trips exactly).
std::string format_complex(cplx z);

}  // namespace spps
