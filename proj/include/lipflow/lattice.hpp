#pragma once

#include <cmath>
#include <span>

namespace lipflow::detail {

// Certified function values are kept on a dyadic lattice of spacing 2^-52.
// Every value in [0,1] is then an integer number of quanta below 2^53, so
// additions, subtractions and clamps between lattice values are exact in
// double arithmetic. That is what lets grid-level Lipschitz and range
// certificates hold with tolerance zero instead of a few ulps.
inline constexpr double lattice_quantum = 0x1p-52;

inline double snap_to_lattice(double v) {
    return std::nearbyint(v * 0x1p52) * 0x1p-52;
}

inline double lattice_floor(double v) {
    return std::floor(v * 0x1p52) * 0x1p-52;
}

/// Projects lattice-snapped samples onto the discrete cone
/// { v : |v[k+1]-v[k]| <= floor_lattice(step), lo <= v[k] <= hi }.
/// Both bounds must be lattice multiples. The projection is monotone in the
/// input samples and moves each value by at most a few quanta whenever the
/// true underlying function already satisfies the constraints.
inline void lipschitz_project(std::span<double> v, double step, double lo, double hi) {
    if (v.empty()) {
        return;
    }
    const double hq = lattice_floor(step);
    auto clamp = [](double x, double a, double b) { return x < a ? a : (x > b ? b : x); };
    v[0] = clamp(v[0], lo, hi);
    for (std::size_t k = 1; k < v.size(); ++k) {
        const double low = std::max(lo, v[k - 1] - hq);
        const double high = std::min(hi, v[k - 1] + hq);
        v[k] = clamp(v[k], low, high);
    }
}

} // namespace lipflow::detail
