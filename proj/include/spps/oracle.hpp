#pragma once

#include <vector>

#include "spps/spectral.hpp"

namespace spps {

/// Continuous problem description for the shooting oracle. It never sees the
/// mesh or a particular solution.
struct ShootingProblem {
    Interval interval;
    std::vector<Piece> pieces;
    BoundaryCondition left;
    BoundaryCondition right;
};

struct ShootingResult {
    cplx mismatch;  ///< B_R applied at b to the solution annihilated by B_L at a
    std::size_t step_count;
};

/// Classical RK4 on u' = (pu')/p, (pu')' = (lambda r - q) u, piece by piece
/// with a fixed number of steps each, carrying (u, pu') across breakpoints.
ShootingResult shoot(const ShootingProblem& problem, cplx lambda, int steps_per_piece);

/// Secant iteration on the mismatch to relative 1e-12 (50 iterations at
/// most). Throws OracleFailure when it does not converge.
cplx refine_root(const ShootingProblem& problem, cplx guess, int steps_per_piece);

}  // namespace spps
