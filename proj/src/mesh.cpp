#include "spps/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spps {

Mesh::Mesh(Interval interval, std::vector<MeshPiece> pieces)
    : interval_(interval), pieces_(std::move(pieces)) {
    std::size_t total = 0;
    for (const auto& pc : pieces_) total += pc.subintervals;
    nodes_.reserve(total + 1);
    slot_x_.reserve(total + pieces_.size());
    for (std::size_t k = 0; k < pieces_.size(); ++k) {
        const auto& pc = pieces_[k];
        for (std::size_t j = 0; j <= pc.subintervals; ++j) {
            const double x = j == pc.subintervals
                                 ? pc.hi
                                 : pc.lo + static_cast<double>(j) * pc.step;
            if (j > 0 || k == 0) nodes_.push_back(x);
            slot_x_.push_back(x);
            slot_node_.push_back(pc.first_node + j);
            slot_piece_.push_back(k);
        }
    }
}

std::size_t Mesh::left_slot(std::size_t node) const {
    // The piece whose hi is this node owns the left limit; node 0 only has a right one.
    for (const auto& pc : pieces_) {
        if (node > pc.first_node && node <= pc.first_node + pc.subintervals) {
            return pc.first_slot + (node - pc.first_node);
        }
    }
    return 0;
}

std::size_t Mesh::right_slot(std::size_t node) const {
    for (const auto& pc : pieces_) {
        if (node >= pc.first_node && node < pc.first_node + pc.subintervals) {
            return pc.first_slot + (node - pc.first_node);
        }
    }
    return slot_x_.size() - 1;
}

std::vector<std::size_t> Mesh::breakpoint_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k < pieces_.size(); ++k) out.push_back(pieces_[k].first_node);
    return out;
}

bool Mesh::is_breakpoint(std::size_t node) const {
    for (std::size_t k = 1; k < pieces_.size(); ++k) {
        if (pieces_[k].first_node == node) return true;
    }
    return false;
}

std::size_t Mesh::nearest_node(double x) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
    if (it == nodes_.begin()) return 0;
    if (it == nodes_.end()) return nodes_.size() - 1;
    const auto hi = static_cast<std::size_t>(it - nodes_.begin());
    return (x - nodes_[hi - 1] <= nodes_[hi] - x) ? hi - 1 : hi;
}

std::shared_ptr<const Mesh> build_mesh(const Interval& interval, std::span<const Piece> pieces,
                                       std::size_t m) {
    if (!(std::isfinite(interval.a) && std::isfinite(interval.b)) || !(interval.a < interval.b)) {
        throw StructureError("interval must satisfy a < b with finite endpoints");
    }
    if (pieces.empty()) throw StructureError("no pieces given");
    const double length = interval.b - interval.a;
    const double tol = 1e-12 * length;

    auto located = [](const char* what, double x) {
        std::ostringstream os;
        os.precision(16);
        os << what << " at x=" << x;
        return os.str();
    };

    double cursor = interval.a;
    for (const auto& pc : pieces) {
        if (!(pc.lo < pc.hi)) throw StructureError(located("empty or reversed piece", pc.lo));
        if (pc.lo > cursor + tol) throw StructureError(located("gap between pieces", cursor));
        if (pc.lo < cursor - tol) throw StructureError(located("overlapping pieces", pc.lo));
        cursor = pc.hi;
    }
    if (std::abs(cursor - interval.b) > tol) {
        throw StructureError(located(cursor < interval.b ? "pieces end before b" : "pieces extend past b",
                                     cursor));
    }

    std::vector<MeshPiece> out;
    std::size_t node = 0;
    std::size_t slot = 0;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const double lo = k == 0 ? interval.a : out.back().hi;
        const double hi = k + 1 == pieces.size() ? interval.b : pieces[k].hi;
        const double share = static_cast<double>(m) * (hi - lo) / length;
        auto n = static_cast<std::size_t>(std::ceil(share - 1e-9));
        n = std::max<std::size_t>(5, (n + 4) / 5 * 5);
        out.push_back(MeshPiece{lo, hi, (hi - lo) / static_cast<double>(n), n, node, slot});
        node += n;
        slot += n + 1;
    }
    return std::make_shared<const Mesh>(interval, std::move(out));
}

SampledFunction::SampledFunction(std::shared_ptr<const Mesh> mesh, std::vector<cplx> values)
    : mesh_(std::move(mesh)), values_(std::move(values)) {
    if (!mesh_ || values_.size() != mesh_->slot_count()) {
        throw std::invalid_argument("sampled function size does not match mesh slot count");
    }
}

SampledFunction SampledFunction::constant(std::shared_ptr<const Mesh> mesh, cplx value) {
    std::vector<cplx> values(mesh->slot_count(), value);
    return SampledFunction(std::move(mesh), std::move(values));
}

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double SampledFunction::min_abs() const { return std::abs(values_[argmin_abs()]); }

std::size_t SampledFunction::argmin_abs() const {
    std::size_t best = 0;
    double m = std::abs(values_[0]);
    for (std::size_t i = 1; i < values_.size(); ++i) {
        const double a = std::abs(values_[i]);
        if (a < m) {
            m = a;
            best = i;
        }
    }
    return best;
}

bool SampledFunction::is_real() const {
    return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v.imag() == 0.0; });
}

SampledFunction sample_piecewise(const std::shared_ptr<const Mesh>& mesh,
                                 std::span<const Expression> per_piece) {
    const auto pieces = mesh->pieces();
    if (per_piece.size() != pieces.size()) {
        throw StructureError("expected one expression per piece");
    }
    const auto xs = mesh->slot_x();
    std::vector<cplx> values(mesh->slot_count());
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        const auto& pc = pieces[k];
        const Expression& e = per_piece[k];
        if (e.is_constant()) {
            const cplx c = e.eval(pc.lo);
            std::fill_n(values.begin() + static_cast<std::ptrdiff_t>(pc.first_slot), pc.subintervals + 1, c);
            continue;
        }
        for (std::size_t j = 0; j <= pc.subintervals; ++j) {
            const std::size_t s = pc.first_slot + j;
            values[s] = e.eval(xs[s]);
        }
    }
    return SampledFunction(mesh, std::move(values));
}

Coefficients sample_coefficients(std::span<const Piece> pieces,
                                 const std::shared_ptr<const Mesh>& mesh) {
    std::vector<Expression> ps, qs, rs;
    for (const auto& pc : pieces) {
        ps.push_back(pc.p);
        qs.push_back(pc.q);
        rs.push_back(pc.r);
    }
    Coefficients c{sample_piecewise(mesh, ps), sample_piecewise(mesh, qs), sample_piecewise(mesh, rs)};
    const auto pv = c.p.values();
    for (std::size_t s = 0; s < pv.size(); ++s) {
        if (pv[s] == cplx{}) {
            std::ostringstream os;
            os.precision(16);
            os << "p vanishes at x=" << mesh->slot_x()[s];
            throw SingularCoefficientError(os.str());
        }
    }
    return c;
}

}  // namespace spps
