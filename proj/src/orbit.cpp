#include "lipflow/orbit.hpp"

#include <algorithm>
#include <cmath>

#include "lipflow/errors.hpp"

namespace lipflow {

namespace {

void check_config(const OrbitConfig& cfg) {
    if (!(cfg.t_max > 0.0) || !(cfg.step > 0.0)) {
        throw invalid_input("OrbitConfig: t_max and step must be > 0");
    }
    const double cells = cfg.t_max / cfg.step;
    if (std::abs(cells - std::nearbyint(cells)) > 1e-9 * std::max(1.0, cells)) {
        throw invalid_input("OrbitConfig: t_max must be an exact multiple of step");
    }
    if (cfg.hilbert_depth < 1) {
        throw invalid_input("OrbitConfig: hilbert_depth must be >= 1");
    }
}

} // namespace

SeqFunc orbit_embed(const FlowSystem& sys, const HilbertEmbedding& psi,
                    const State& x, const OrbitConfig& cfg) {
    check_config(cfg);
    if (psi.depth < cfg.hilbert_depth) {
        throw invalid_input("orbit_embed: psi produces fewer coordinates than hilbert_depth");
    }
    const long long half_cells = std::llround(cfg.t_max / cfg.step);
    const std::size_t n = static_cast<std::size_t>(2 * half_cells) + 1;
    const double a = -cfg.t_max;

    std::vector<std::vector<double>> columns(static_cast<std::size_t>(cfg.hilbert_depth),
                                             std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double t = a + static_cast<double>(k) * cfg.step;
        const HilbertPoint p = psi(sys.evolve(t, x));
        for (int i = 0; i < cfg.hilbert_depth; ++i) {
            columns[static_cast<std::size_t>(i)][k] = p.coords[static_cast<std::size_t>(i)];
        }
    }

    std::vector<Func01> components;
    components.reserve(columns.size());
    for (auto& col : columns) {
        components.push_back(Func01::from_values(a, cfg.step, std::move(col)));
    }
    return SeqFunc::from_components(std::move(components));
}

double equivariance_defect(const FlowSystem& sys, const HilbertEmbedding& psi,
                           const State& x, double r, const OrbitConfig& cfg) {
    const SeqFunc shifted_state = orbit_embed(sys, psi, sys.evolve(r, x), cfg);
    const SeqFunc base = orbit_embed(sys, psi, x, cfg);
    const SeqFunc shifted_time = translate(base, r);

    double worst = 0.0;
    for (int i = 1; i <= cfg.hilbert_depth; ++i) {
        const Func01& f = shifted_state.component(i);
        const Func01& g = shifted_time.component(i);
        const long long off = detail::node_offset(f, g);
        const long long lo = std::max(0LL, off);
        const long long hi = std::min(static_cast<long long>(f.size()) - 1,
                                      off + static_cast<long long>(g.size()) - 1);
        for (long long k = lo; k <= hi; ++k) {
            worst = std::max(worst, std::abs(f[static_cast<std::size_t>(k)] -
                                             g[static_cast<std::size_t>(k - off)]));
        }
    }
    return worst;
}

ContinuityDefect continuity_defect(const FlowSystem& sys, const HilbertEmbedding& psi,
                                   const State& x, const State& y, const OrbitConfig& cfg) {
    ContinuityDefect d;
    d.state_distance = sys.domain.distance(x, y);
    const SeqFunc fx = orbit_embed(sys, psi, x, cfg);
    const SeqFunc fy = orbit_embed(sys, psi, y, cfg);
    for (int i = 1; i <= cfg.hilbert_depth; ++i) {
        const Func01& f = fx.component(i);
        const Func01& g = fy.component(i);
        for (std::size_t k = 0; k < f.size(); ++k) {
            d.image_distance = std::max(d.image_distance, std::abs(f[k] - g[k]));
        }
    }
    return d;
}

} // namespace lipflow
