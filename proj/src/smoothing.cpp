#include "lipflow/smoothing.hpp"

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

void check_quad(const QuadConfig& quad) {
    if (quad.substep < 1) {
        throw invalid_input("QuadConfig: substep must be >= 1");
    }
}

// Decomposition r = cells*h + rest with 0 <= rest < h, robust against the
// rounding of r/h.
struct RadiusSplit {
    long long cells = 0;
    double rest = 0.0;
};

RadiusSplit split_radius(double r, double h) {
    RadiusSplit s;
    s.cells = static_cast<long long>(std::floor(r / h));
    s.rest = r - static_cast<double>(s.cells) * h;
    while (s.rest < 0.0) {
        --s.cells;
        s.rest = r - static_cast<double>(s.cells) * h;
    }
    while (s.rest >= h) {
        ++s.cells;
        s.rest = r - static_cast<double>(s.cells) * h;
    }
    return s;
}

// Integral of the chord from v0 (at offset 0) to v1 (at offset h) over
// [0, to] with 0 <= to <= h, split into panels trapezoid sub-panels. Exact
// for the linear integrand regardless of panels; monotone in (v0, v1).
double chord_integral(double v0, double v1, double h, double to, int panels) {
    if (to == 0.0) {
        return 0.0;
    }
    if (panels == 1) {
        if (to == h) {
            return (v0 + v1) * (h * 0.5);
        }
        const double u = to / h;
        const double v_end = v0 + u * (v1 - v0);
        return (v0 + v_end) * (to * 0.5);
    }
    const double w = to / static_cast<double>(panels);
    double acc = 0.0;
    double prev = v0;
    for (int s = 1; s <= panels; ++s) {
        const double x = w * static_cast<double>(s);
        const double u = std::min(1.0, x / h);
        const double cur = v0 + u * (v1 - v0);
        acc += (prev + cur) * (w * 0.5);
        prev = cur;
    }
    return acc;
}

// Raw (unquantized) moving average of one component at output node k.
double raw_average(std::span<const double> v, std::size_t k, const RadiusSplit& split,
                   double h, int panels) {
    double acc = 0.0;
    const std::size_t q = static_cast<std::size_t>(split.cells);
    for (std::size_t c = k; c < k + q; ++c) {
        acc += chord_integral(v[c], v[c + 1], h, h, panels);
    }
    if (split.rest > 0.0) {
        acc += chord_integral(v[k + q], v[k + q + 1], h, split.rest, panels);
    }
    return acc;
}

struct SmoothLayout {
    RadiusSplit split;
    std::size_t n_out = 0;
};

SmoothLayout smooth_layout(const SeqFunc& f, PairIndex p, double r) {
    const double h = f.step();
    SmoothLayout layout;
    layout.split = split_radius(r, h);
    const long long n = static_cast<long long>(f.size());
    const long long reach = layout.split.cells + (layout.split.rest > 0.0 ? 1 : 0);
    const long long n_out = n - reach;
    if (n_out < 2) {
        throw invalid_input("smooth: window [" + fmt("%.17g", f.a()) + ", " + fmt("%.17g", f.b()) +
                            "] too small; need at least r_j + step = " +
                            fmt("%.17g", r + h) + " of margin beyond two output nodes for (i,j)=(" +
                            std::to_string(p.i) + "," + std::to_string(p.j) + ")");
    }
    layout.n_out = static_cast<std::size_t>(n_out);
    return layout;
}

} // namespace

double r_of(long long j) {
    if (j < 1) {
        throw invalid_input("r_of: j must be >= 1");
    }
    return 1.0 / static_cast<double>(j + 1);
}

PairIndex pair_of(long long k) {
    if (k < 1) {
        throw invalid_input("pair_of: k must be >= 1");
    }
    long long j = static_cast<long long>((std::sqrt(8.0 * static_cast<double>(k) + 1.0) - 1.0) / 2.0);
    j = std::max(1LL, j);
    while (j * (j + 1) / 2 < k) {
        ++j;
    }
    while (j > 1 && (j - 1) * j / 2 >= k) {
        --j;
    }
    return PairIndex{k - j * (j - 1) / 2, j};
}

long long index_of(PairIndex p) {
    if (p.i < 1 || p.i > p.j) {
        throw invalid_input("index_of: need 1 <= i <= j");
    }
    return p.j * (p.j - 1) / 2 + p.i;
}

Func01 smooth(const SeqFunc& f, PairIndex p, const QuadConfig& quad) {
    check_quad(quad);
    if (p.i < 1 || p.i > p.j) {
        throw invalid_input("smooth: need 1 <= i <= j");
    }
    if (p.i > f.depth()) {
        throw invalid_input("smooth: component " + std::to_string(p.i) +
                            " exceeds input depth " + std::to_string(f.depth()));
    }
    const double r = r_of(p.j);
    const double h = f.step();
    const SmoothLayout layout = smooth_layout(f, p, r);
    const std::span<const double> v = f.component(static_cast<int>(p.i)).values();

    std::vector<double> out(layout.n_out);
    for (std::size_t k = 0; k < layout.n_out; ++k) {
        out[k] = detail::snap_to_lattice(raw_average(v, k, layout.split, h, quad.substep));
    }
    detail::lipschitz_project(out, h, 0.0, detail::lattice_floor(r));
    return Func01::from_values(f.a(), h, std::move(out));
}

UniversalPoint universal_embed(const SeqFunc& f, long long depth_k, const QuadConfig& quad) {
    if (depth_k < 1) {
        throw invalid_input("universal_embed: depth_k must be >= 1");
    }
    long long max_i = 0;
    for (long long k = 1; k <= depth_k; ++k) {
        max_i = std::max(max_i, pair_of(k).i);
    }
    if (max_i > f.depth()) {
        throw invalid_input("universal_embed: depth_k = " + std::to_string(depth_k) +
                            " needs input depth >= " + std::to_string(max_i) +
                            ", got " + std::to_string(f.depth()));
    }

    UniversalPoint up;
    up.entries.reserve(static_cast<std::size_t>(depth_k));
    std::size_t common = std::numeric_limits<std::size_t>::max();
    for (long long k = 1; k <= depth_k; ++k) {
        const PairIndex p = pair_of(k);
        Func01 fn = smooth(f, p, quad);
        common = std::min(common, fn.size());
        up.entries.push_back(UniversalEntry{k, p, r_of(p.j), std::move(fn)});
    }
    // Trim every entry to the shortest window (the j = 1 one) so the point
    // is rectangular: one shared window and grid for all entries.
    for (UniversalEntry& entry : up.entries) {
        if (entry.fn.size() > common) {
            std::vector<double> trimmed(entry.fn.values().begin(),
                                        entry.fn.values().begin() + static_cast<long long>(common));
            entry.fn = Func01::from_values(entry.fn.a(), entry.fn.step(), std::move(trimmed));
        }
    }
    return up;
}

double smoothing_equivariance_defect(const SeqFunc& f, double r, PairIndex p,
                                     const QuadConfig& quad) {
    const Func01 lhs = smooth(translate(f, r), p, quad);
    const Func01 rhs = translate(smooth(f, p, quad), r);
    const long long off = detail::node_offset(lhs, rhs);
    const long long lo = std::max(0LL, off);
    const long long hi = std::min(static_cast<long long>(lhs.size()) - 1,
                                  off + static_cast<long long>(rhs.size()) - 1);
    double worst = 0.0;
    for (long long k = lo; k <= hi; ++k) {
        worst = std::max(worst, std::abs(lhs[static_cast<std::size_t>(k)] -
                                         rhs[static_cast<std::size_t>(k - off)]));
    }
    return worst;
}

double derivative_identity_defect(const SeqFunc& f, PairIndex p, const QuadConfig& quad) {
    const Func01 s = smooth(f, p, quad);
    const Func01& fi = f.component(static_cast<int>(p.i));
    const double r = r_of(p.j);
    const double h = f.step();
    if (s.size() < 3) {
        throw invalid_input("derivative_identity_defect: output window keeps no interior node");
    }
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
        const double central = (s[k + 1] - s[k - 1]) / (2.0 * h);
        const double target = eval(fi, s.node(k) + r) - fi[k];
        worst = std::max(worst, std::abs(central - target));
    }
    return worst;
}

std::optional<SeparationWitness> separation_witness(const SeqFunc& f, const SeqFunc& g,
                                                    double tol, long long max_index) {
    if (f.depth() != g.depth() || f.a() != g.a() || f.step() != g.step() || f.size() != g.size()) {
        throw invalid_input("separation_witness: inputs must share shape");
    }
    if (!(tol >= 0.0)) {
        throw invalid_input("separation_witness: tol must be >= 0");
    }
    const double h = f.step();
    const std::size_t n = f.size();

    for (int i = 1; i <= f.depth(); ++i) {
        if (max_index > 0 && index_of({static_cast<long long>(i), static_cast<long long>(i) + 1}) > max_index) {
            break; // every slot for this and higher components is out of range
        }
        const std::span<const double> fv = f.component(i).values();
        const std::span<const double> gv = g.component(i).values();

        std::size_t k = 0;
        while (k < n) {
            const double d0 = fv[k] - gv[k];
            const double sign = d0 > tol ? 1.0 : (d0 < -tol ? -1.0 : 0.0);
            if (sign == 0.0) {
                ++k;
                continue;
            }
            std::size_t end = k;
            while (end + 1 < n && sign * (fv[end + 1] - gv[end + 1]) > tol) {
                ++end;
            }
            if (end - k >= 2) {
                // Open run (node k, node end); place t one node in and find
                // the smallest admissible level whose radius fits strictly.
                const double t = f.component(i).node(k + 1);
                const double run_end = f.component(i).node(end);
                long long j = static_cast<long long>(i) + 1;
                while (t + r_of(j) >= run_end) {
                    ++j;
                }
                if (max_index == 0 || index_of({i, j}) <= max_index) {
                    const double r = r_of(j);
                    const RadiusSplit split = split_radius(r, h);
                    const double area_f = raw_average(fv, k + 1, split, h, 1);
                    const double area_g = raw_average(gv, k + 1, split, h, 1);
                    const double gap = sign * (area_f - area_g);
                    if (gap > 0.0) {
                        return SeparationWitness{{static_cast<long long>(i), j}, t, gap};
                    }
                }
            }
            k = end + 1;
        }
    }
    return std::nullopt;
}

} // namespace lipflow
