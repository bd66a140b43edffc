#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "spps/errors.hpp"
#include "spps/expr.hpp"

namespace spps {

struct Interval {
    double a;
    double b;
};

/// One smooth stretch of the coefficients p, q, r of (p u')' + q u = lambda r u.
struct Piece {
    double lo;
    double hi;
    Expression p;
    Expression q;
    Expression r;
};

/// Node range of one piece. Every piece is uniformly spaced with a multiple
/// of five subintervals so that six-point panels never straddle a jump.
struct MeshPiece {
    double lo;
    double hi;
    double step;
    std::size_t subintervals;
    std::size_t first_node;  ///< distinct-node index of lo
    std::size_t first_slot;  ///< storage slot of lo
};

/// Sampling grid over [a, b].
///
/// Distinct nodes are numbered 0..node_count()-1. Storage is per "slot":
/// each piece owns a contiguous slot range from its lo to its hi, so an
/// interior breakpoint occupies two slots (left and right limit) and
/// slot_count() == node_count() + pieces - 1.
class Mesh {
public:
    Mesh(Interval interval, std::vector<MeshPiece> pieces);

    const Interval& interval() const noexcept { return interval_; }
    std::span<const MeshPiece> pieces() const noexcept { return pieces_; }
    std::size_t node_count() const noexcept { return nodes_.size(); }
    std::size_t slot_count() const noexcept { return slot_x_.size(); }
    std::size_t effective_m() const noexcept { return nodes_.size() - 1; }

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> slot_x() const noexcept { return slot_x_; }
    double node(std::size_t i) const { return nodes_[i]; }

    /// Slot holding the left limit at node i (the only slot for non-breakpoints).
    std::size_t left_slot(std::size_t node) const;
    /// Slot holding the right limit at node i.
    std::size_t right_slot(std::size_t node) const;
    std::size_t node_of_slot(std::size_t slot) const { return slot_node_[slot]; }
    std::size_t piece_of_slot(std::size_t slot) const { return slot_piece_[slot]; }

    /// Node indices of the interior piece boundaries.
    std::vector<std::size_t> breakpoint_indices() const;
    bool is_breakpoint(std::size_t node) const;

    /// Index of the node closest to x.
    std::size_t nearest_node(double x) const;

private:
    Interval interval_;
    std::vector<MeshPiece> pieces_;
    std::vector<double> nodes_;
    std::vector<double> slot_x_;
    std::vector<std::size_t> slot_node_;
    std::vector<std::size_t> slot_piece_;
};

/// Pieces must tile [a, b] in order. Each piece receives a share of m
/// proportional to its length, rounded up to a multiple of five (minimum
/// five); the sum is available as Mesh::effective_m().
std::shared_ptr<const Mesh> build_mesh(const Interval& interval, std::span<const Piece> pieces,
                                       std::size_t m);

/// Complex samples on a mesh, one value per slot.
class SampledFunction {
public:
    SampledFunction(std::shared_ptr<const Mesh> mesh, std::vector<cplx> values);

    static SampledFunction constant(std::shared_ptr<const Mesh> mesh, cplx value);

    const Mesh& mesh() const noexcept { return *mesh_; }
    const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return mesh_; }
    std::span<const cplx> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    cplx operator[](std::size_t slot) const { return values_[slot]; }

    cplx left(std::size_t node) const { return values_[mesh_->left_slot(node)]; }
    cplx right(std::size_t node) const { return values_[mesh_->right_slot(node)]; }
    cplx at_a() const { return values_.front(); }
    cplx at_b() const { return values_.back(); }

    double max_abs() const;
    double min_abs() const;
    /// Slot where |value| is smallest.
    std::size_t argmin_abs() const;
    bool is_real() const;

private:
    std::shared_ptr<const Mesh> mesh_;
    std::vector<cplx> values_;
};

/// Samples a piecewise expression (one expression per mesh piece).
SampledFunction sample_piecewise(const std::shared_ptr<const Mesh>& mesh,
                                 std::span<const Expression> per_piece);

struct Coefficients {
    SampledFunction p;
    SampledFunction q;
    SampledFunction r;
};

/// Throws SingularCoefficientError when p is zero at a node and EvalError
/// (with the node location) when an expression cannot be evaluated.
Coefficients sample_coefficients(std::span<const Piece> pieces,
                                 const std::shared_ptr<const Mesh>& mesh);

}  // namespace spps
