#include "lipflow/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "lipflow/errors.hpp"
#include "lipflow/lattice.hpp"

namespace lipflow {

namespace {

std::string fmt(const char* pattern, double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), pattern, x);
    return buf;
}

double clamp01(double v) {
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

void require_shared_grid(const Func01& f, const Func01& g, const char* op) {
    if (f.a() != g.a() || f.step() != g.step() || f.size() != g.size()) {
        throw invalid_input(std::string(op) + ": functions must share window and step");
    }
}

void require_metric_config(const MetricConfig& cfg) {
    if (cfg.depth_n < 1) {
        throw invalid_input("metric: depth_n must be >= 1");
    }
    if (!(cfg.eval_step > 0.0)) {
        throw invalid_input("metric: eval_step must be > 0");
    }
}

} // namespace

Func01::Func01(double a, double h, std::vector<double> v)
    : origin_(a), step_(h), values_(std::move(v)) {}

Func01 Func01::from_values(double a, double h, std::vector<double> values) {
    if (!std::isfinite(a) || !std::isfinite(h) || !(h > 0.0)) {
        throw invalid_input("Func01: window origin must be finite and step positive");
    }
    if (values.size() < 2) {
        throw invalid_input("Func01: need at least two samples (window must span one step)");
    }
    for (double v : values) {
        if (!(v >= 0.0) || !(v <= 1.0)) {
            throw invalid_input("Func01: sample " + fmt("%.17g", v) + " outside [0,1]");
        }
    }
    return Func01(a, h, std::move(values));
}

Func01 Func01::sample(double a, double b, double h, const std::function<double(double)>& fn) {
    if (!(b > a)) {
        throw invalid_input("Func01: window requires a < b");
    }
    if (!(h > 0.0)) {
        throw invalid_input("Func01: step must be > 0");
    }
    const double cells = (b - a) / h;
    const long long n_cells = std::llround(cells);
    if (n_cells < 1 || std::abs(cells - static_cast<double>(n_cells)) > 1e-9 * std::max(1.0, cells)) {
        throw invalid_input("Func01: window length must be an exact multiple of the step");
    }
    std::vector<double> v(static_cast<std::size_t>(n_cells) + 1);
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = fn(a + static_cast<double>(k) * h);
    }
    return from_values(a, h, std::move(v));
}

SeqFunc SeqFunc::from_components(std::vector<Func01> components) {
    if (components.empty()) {
        throw invalid_input("SeqFunc: depth must be >= 1");
    }
    const Func01& head = components.front();
    for (const Func01& c : components) {
        if (c.a() != head.a() || c.step() != head.step() || c.size() != head.size()) {
            throw invalid_input("SeqFunc: all components must share window and step");
        }
    }
    return SeqFunc(std::move(components));
}

double eval(const Func01& f, double t) {
    const double a = f.a();
    const double b = f.b();
    if (!(t >= a) || !(t <= b)) {
        throw invalid_input("eval: t = " + fmt("%.17g", t) + " outside window [" +
                            fmt("%.17g", a) + ", " + fmt("%.17g", b) + "]");
    }
    const double h = f.step();
    const std::size_t n = f.size();

    // Grid nodes must reproduce stored samples bit-exactly.
    const long long near = std::llround((t - a) / h);
    if (near >= 0 && near < static_cast<long long>(n) &&
        f.node(static_cast<std::size_t>(near)) == t) {
        return f[static_cast<std::size_t>(near)];
    }

    long long cell = static_cast<long long>(std::floor((t - a) / h));
    cell = std::clamp(cell, 0LL, static_cast<long long>(n) - 2);
    const std::size_t k = static_cast<std::size_t>(cell);
    double u = (t - f.node(k)) / h;
    u = std::clamp(u, 0.0, 1.0);
    return clamp01(f[k] + u * (f[k + 1] - f[k]));
}

Func01 translate(const Func01& f, double r) {
    if (!std::isfinite(r)) {
        throw invalid_input("translate: r must be finite");
    }
    const double h = f.step();
    const double len = f.b() - f.a();
    if (!(std::abs(r) < 0.5 * len)) {
        throw invalid_input("translate: |r| = " + fmt("%.17g", std::abs(r)) +
                            " must be smaller than half the window length " + fmt("%.17g", len));
    }
    const long long n = static_cast<long long>(f.size());
    const long long m = std::llround(r / h);
    const bool aligned = (static_cast<double>(m) * h == r);

    long long k_lo = 0;
    long long k_hi = n - 1;
    if (aligned) {
        k_lo = std::max(0LL, -m);
        k_hi = std::min(n - 1, n - 1 - m);
    } else {
        k_lo = static_cast<long long>(std::ceil(-r / h)) - 1;
        k_lo = std::max(0LL, k_lo);
        while (k_lo < n && f.node(static_cast<std::size_t>(k_lo)) + r < f.a()) {
            ++k_lo;
        }
        k_hi = n - 1 - static_cast<long long>(std::floor(r / h)) + 1;
        k_hi = std::min(n - 1, k_hi);
        while (k_hi >= 0 && f.node(static_cast<std::size_t>(k_hi)) + r > f.b()) {
            --k_hi;
        }
    }
    if (k_hi - k_lo + 1 < 2) {
        throw invalid_input("translate: window too small to shrink by |r| = " + fmt("%.17g", std::abs(r)));
    }

    std::vector<double> out(static_cast<std::size_t>(k_hi - k_lo + 1));
    if (aligned) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = f[static_cast<std::size_t>(k_lo + static_cast<long long>(i) + m)];
        }
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double t = f.node(static_cast<std::size_t>(k_lo) + i) + r;
            out[i] = eval(f, t);
        }
    }
    return Func01::from_values(f.node(static_cast<std::size_t>(k_lo)), h, std::move(out));
}

SeqFunc translate(const SeqFunc& f, double r) {
    std::vector<Func01> out;
    out.reserve(static_cast<std::size_t>(f.depth()));
    for (const Func01& c : f.components()) {
        out.push_back(translate(c, r));
    }
    return SeqFunc::from_components(std::move(out));
}

Func01 restrict_to(const Func01& f, double a2, double b2) {
    const double h = f.step();
    const long long n = static_cast<long long>(f.size());
    long long k_lo = static_cast<long long>(std::ceil((a2 - f.a()) / h - 1e-9));
    long long k_hi = static_cast<long long>(std::floor((b2 - f.a()) / h + 1e-9));
    k_lo = std::max(0LL, k_lo);
    k_hi = std::min(n - 1, k_hi);
    if (k_hi - k_lo + 1 < 2) {
        throw invalid_input("restrict_to: target window keeps fewer than two grid nodes");
    }
    std::vector<double> out(f.values().begin() + k_lo, f.values().begin() + k_hi + 1);
    return Func01::from_values(f.node(static_cast<std::size_t>(k_lo)), h, std::move(out));
}

double metric(const Func01& f, const Func01& g, const MetricConfig& cfg) {
    require_shared_grid(f, g, "metric");
    require_metric_config(cfg);
    const int depth = cfg.depth_n;

    // max |f-g| over grid nodes with |t| <= n, accumulated per ring n.
    std::vector<double> ring(static_cast<std::size_t>(depth) + 1, 0.0);
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double at = std::abs(f.node(k));
        const long long nearest = std::llround(at);
        int n;
        if (std::abs(at - static_cast<double>(nearest)) <= 1e-9 * std::max(1.0, at)) {
            n = static_cast<int>(std::max(1LL, nearest));
        } else {
            n = static_cast<int>(std::ceil(at));
        }
        if (n > depth) {
            continue;
        }
        ring[static_cast<std::size_t>(n)] = std::max(ring[static_cast<std::size_t>(n)],
                                                     std::abs(f[k] - g[k]));
    }

    double total = 0.0;
    double running = 0.0;
    double weight = 1.0;
    for (int n = 1; n <= depth; ++n) {
        running = std::max(running, ring[static_cast<std::size_t>(n)]);
        weight *= 0.5;
        total += weight * running;
    }
    return total;
}

double seq_metric(const SeqFunc& f, const SeqFunc& g, const MetricConfig& cfg) {
    if (f.depth() != g.depth()) {
        throw invalid_input("seq_metric: depth mismatch");
    }
    double total = 0.0;
    double weight = 1.0;
    for (int m = 1; m <= f.depth(); ++m) {
        weight *= 0.5;
        total += weight * metric(f.component(m), g.component(m), cfg);
    }
    return total;
}

double lipschitz_defect(const Func01& f) {
    const double h = f.step();
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < f.size(); ++k) {
        worst = std::max(worst, std::abs(f[k + 1] - f[k]) - h);
    }
    return worst;
}

bool is_in_L(const Func01& f, double tol) {
    if (!(tol >= 0.0)) {
        throw invalid_input("is_in_L: tol must be >= 0");
    }
    for (double v : f.values()) {
        if (!(v >= 0.0) || !(v <= 1.0)) {
            return false;
        }
    }
    return lipschitz_defect(f) <= tol;
}

std::vector<Func01> epsilon_net(double eps, double a, double b, double step,
                                std::size_t max_size) {
    if (!(eps > 0.0)) {
        throw invalid_input("epsilon_net: eps must be > 0");
    }
    if (!(b > a) || !(step > 0.0)) {
        throw invalid_input("epsilon_net: window requires a < b and step > 0");
    }

    // Value levels 0, eps, ..., L*eps, capped with an extra level at 1 when
    // eps does not divide 1; the short top step keeps the cover radius eps.
    std::vector<double> levels;
    for (long long l = 0;; ++l) {
        const double v = static_cast<double>(l) * eps;
        if (v > 1.0) {
            break;
        }
        levels.push_back(v);
        if (v == 1.0) {
            break;
        }
    }
    if (levels.back() < 1.0) {
        levels.push_back(1.0);
    }

    const std::size_t n_times = static_cast<std::size_t>(std::ceil((b - a) / eps - 1e-12)) + 1;

    // Count admissible level paths (moves of at most one level per node).
    double approx_count = 0.0;
    {
        std::vector<double> ways(levels.size(), 1.0);
        for (std::size_t m = 1; m < n_times; ++m) {
            std::vector<double> next(levels.size(), 0.0);
            for (std::size_t l = 0; l < levels.size(); ++l) {
                next[l] = ways[l];
                if (l > 0) next[l] += ways[l - 1];
                if (l + 1 < levels.size()) next[l] += ways[l + 1];
            }
            ways = std::move(next);
        }
        for (double w : ways) {
            approx_count += w;
        }
    }
    if (approx_count > static_cast<double>(max_size)) {
        throw invalid_input("epsilon_net: net would hold " + fmt("%.0f", approx_count) +
                            " elements; raise the cap to at least that");
    }

    // Enumerate all paths and resample each onto the requested grid.
    const long long grid_cells = std::llround((b - a) / step);
    const std::size_t n_grid = static_cast<std::size_t>(std::max(1LL, grid_cells)) + 1;

    std::vector<Func01> net;
    std::vector<std::size_t> path(n_times, 0);
    std::vector<double> sampled(n_grid);

    auto emit = [&]() {
        for (std::size_t k = 0; k < n_grid; ++k) {
            const double t = a + static_cast<double>(k) * step;
            double pos = (t - a) / eps;
            long long cell = static_cast<long long>(std::floor(pos));
            cell = std::clamp(cell, 0LL, static_cast<long long>(n_times) - 2);
            const double u = std::clamp(pos - static_cast<double>(cell), 0.0, 1.0);
            const double v0 = levels[path[static_cast<std::size_t>(cell)]];
            const double v1 = levels[path[static_cast<std::size_t>(cell) + 1]];
            sampled[k] = clamp01(v0 + u * (v1 - v0));
        }
        for (double& v : sampled) {
            v = detail::snap_to_lattice(v);
        }
        detail::lipschitz_project(sampled, step, 0.0, 1.0);
        net.push_back(Func01::from_values(a, step, sampled));
    };

    // Depth-first walk over level paths.
    std::vector<std::size_t> choice(n_times, 0);
    std::size_t depth_pos = 0;
    auto options_at = [&](std::size_t m) {
        std::vector<std::size_t> opts;
        if (m == 0) {
            for (std::size_t l = 0; l < levels.size(); ++l) opts.push_back(l);
        } else {
            const std::size_t prev = path[m - 1];
            if (prev > 0) opts.push_back(prev - 1);
            opts.push_back(prev);
            if (prev + 1 < levels.size()) opts.push_back(prev + 1);
            std::sort(opts.begin(), opts.end());
        }
        return opts;
    };
    std::vector<std::vector<std::size_t>> frame(n_times);
    frame[0] = options_at(0);
    while (true) {
        if (choice[depth_pos] < frame[depth_pos].size()) {
            path[depth_pos] = frame[depth_pos][choice[depth_pos]];
            if (depth_pos + 1 == n_times) {
                emit();
                ++choice[depth_pos];
            } else {
                ++depth_pos;
                frame[depth_pos] = options_at(depth_pos);
                choice[depth_pos] = 0;
            }
        } else {
            if (depth_pos == 0) {
                break;
            }
            --depth_pos;
            ++choice[depth_pos];
        }
    }
    return net;
}

namespace detail {
long long node_offset(const Func01& f, const Func01& g) {
    return std::llround((g.a() - f.a()) / f.step());
}
} // namespace detail

} // namespace lipflow
