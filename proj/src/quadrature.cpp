#include "spps/quadrature.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace spps {

PanelWeights derive_partial_weights() {
    PanelWeights w{};
    for (int k = 0; k < 6; ++k) {
        // Numerator prod_{m != k} (t - m) as integer coefficients, lowest degree first.
        std::array<std::int64_t, 7> num{};
        num[0] = 1;
        int degree = 0;
        std::int64_t den = 1;
        for (int m = 0; m < 6; ++m) {
            if (m == k) continue;
            for (int p = degree + 1; p >= 1; --p) num[p] = num[p - 1] - m * num[p];
            num[0] = -m * num[0];
            ++degree;
            den *= (k - m);
        }
        for (int j = 1; j <= 5; ++j) {
            // 60 = lcm(1..6) keeps every j^{p+1}/(p+1) term integral.
            std::int64_t acc = 0;
            std::int64_t jpow = j;
            for (int p = 0; p <= 5; ++p) {
                acc += num[p] * jpow * (60 / (p + 1));
                jpow *= j;
            }
            w.partial[j - 1][k] = static_cast<double>(acc) / static_cast<double>(60 * den);
        }
        w.full[k] = w.partial[4][k];
    }
    return w;
}

const PanelWeights& panel_weights() {
    static const PanelWeights weights = derive_partial_weights();
    return weights;
}

namespace {

struct Panel {
    std::size_t start;  // first slot
    double step;
};

inline cplx panel_partial(const PanelWeights& w, int j, const cplx* g, double h) {
    // j in 1..5
    const auto& row = w.partial[j - 1];
    double re = 0.0, im = 0.0;
    for (int k = 0; k < 6; ++k) {
        re += row[k] * g[k].real();
        im += row[k] * g[k].imag();
    }
    return {h * re, h * im};
}

}  // namespace

void integrate_indefinite(const Mesh& mesh, std::span<const cplx> g, std::size_t anchor_node,
                          std::span<cplx> out) {
    const auto& w = panel_weights();
    std::vector<Panel> panels;
    panels.reserve(mesh.effective_m() / 5);
    for (const auto& pc : mesh.pieces()) {
        for (std::size_t p = 0; p < pc.subintervals / 5; ++p) {
            panels.push_back(Panel{pc.first_slot + 5 * p, pc.step});
        }
    }

    const std::size_t anchor_slot = anchor_node + 1 >= mesh.node_count()
                                        ? mesh.slot_count() - 1
                                        : mesh.right_slot(anchor_node);
    // Panel holding the anchor and the anchor's local position in it.
    std::size_t pa = 0;
    int ja = 0;
    for (std::size_t p = 0; p < panels.size(); ++p) {
        if (anchor_slot >= panels[p].start && anchor_slot <= panels[p].start + 5) {
            pa = p;
            ja = static_cast<int>(anchor_slot - panels[p].start);
            break;
        }
    }

    const cplx* gp = g.data();
    // Rightward from the anchor panel.
    cplx v = ja == 0 ? cplx{} : -panel_partial(w, ja, gp + panels[pa].start, panels[pa].step);
    for (std::size_t p = pa; p < panels.size(); ++p) {
        const std::size_t s = panels[p].start;
        out[s] = v;
        for (int j = 1; j <= 5; ++j) out[s + j] = v + panel_partial(w, j, gp + s, panels[p].step);
        if (p == pa) out[anchor_slot] = cplx{};
        v = out[s + 5];
    }
    // Leftward: each panel's right end is pinned to the start value of its successor.
    cplx end = out[panels[pa].start];
    for (std::size_t p = pa; p-- > 0;) {
        const std::size_t s = panels[p].start;
        const cplx start = end - panel_partial(w, 5, gp + s, panels[p].step);
        out[s] = start;
        for (int j = 1; j <= 4; ++j) out[s + j] = start + panel_partial(w, j, gp + s, panels[p].step);
        out[s + 5] = end;
        end = start;
    }
}

SampledFunction indefinite_integral(const SampledFunction& g, std::size_t anchor_node) {
    std::vector<cplx> out(g.size());
    integrate_indefinite(g.mesh(), g.values(), anchor_node, out);
    return SampledFunction(g.mesh_ptr(), std::move(out));
}

double l1_norm(const SampledFunction& g) {
    std::vector<cplx> mod(g.size());
    const auto v = g.values();
    for (std::size_t i = 0; i < v.size(); ++i) mod[i] = std::abs(v[i]);
    std::vector<cplx> out(g.size());
    integrate_indefinite(g.mesh(), mod, 0, out);
    return out.back().real() - out.front().real();
}

}  // namespace spps
