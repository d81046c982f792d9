#pragma once

#include <optional>

#include "lipflow/function_space.hpp"

namespace lipflow {

/// One slot (i,j), 1 <= i <= j, of the triangular family of moving-average
/// operators.
struct PairIndex {
    long long i = 1;
    long long j = 1;

    bool operator==(const PairIndex&) const = default;
};

/// Averaging radius of level j: r_j = 1/(j+1).
double r_of(long long j);

/// k-th pair in the triangular order (1,1),(1,2),(2,2),(1,3),(2,3),(3,3),...
PairIndex pair_of(long long k);

/// Inverse of pair_of: j(j-1)/2 + i.
long long index_of(PairIndex p);

/// Quadrature layout: the integral always runs over the exact breakpoints of
/// the linear interpolant (composite trapezoid); substep additionally splits
/// every piece into that many panels, which cannot change the value of the
/// integral of a piecewise-linear integrand.
struct QuadConfig {
    int substep = 1;
};

/// The moving average F(t) = integral of f_i over [t, t+r_j], evaluated per
/// output grid node by exact trapezoid integration of the linear
/// interpolant. The output window loses r_j on the right. The integral
/// endpoint t+r_j generally falls mid-cell and is handled by an exact
/// partial-cell area; there is no endpoint snapping.
///
/// Outputs are certified: values are snapped to the dyadic lattice and
/// projected onto the discrete Lipschitz cone (see lattice.hpp), so
/// is_in_L(result, 0) holds and every value is <= r_of(j), both exactly in
/// double arithmetic. The projection perturbs values by at most a few
/// 2^-52 quanta beyond the snap itself.
Func01 smooth(const SeqFunc& f, PairIndex p, const QuadConfig& quad);

/// One certified entry of a truncated universal image.
struct UniversalEntry {
    long long k;
    PairIndex pair;
    double r;
    Func01 fn;
};

/// Truncation of the full triangular image to its first depth_k entries,
/// trimmed to the common window [a, b - r_1] so all entries share one grid.
struct UniversalPoint {
    std::vector<UniversalEntry> entries;

    int depth() const { return static_cast<int>(entries.size()); }
};

UniversalPoint universal_embed(const SeqFunc& f, long long depth_k, const QuadConfig& quad);

/// sup over the common grid of
/// |smooth(translate(f,r), p)(t) - translate(smooth(f,p), r)(t)|.
/// Zero when r is an exact grid multiple (both sides reduce to identical
/// arithmetic on identical samples).
double smoothing_equivariance_defect(const SeqFunc& f, double r, PairIndex p,
                                     const QuadConfig& quad);

/// sup over interior output nodes of
/// |centered difference of smooth(f,p) - (f_i(t+r_j) - f_i(t))|.
double derivative_identity_defect(const SeqFunc& f, PairIndex p, const QuadConfig& quad);

/// Constructive witness that the smoothed images of f and g differ: a slot
/// (i,j), a base time t with the averaging interval inside a region where
/// the components differ by more than tol with a fixed sign, and the
/// resulting positive gap |F_i^j(f)(t) - F_i^j(g)(t)|.
struct SeparationWitness {
    PairIndex pair;
    double t = 0.0;
    double gap = 0.0;
};

/// Scans components in increasing i and, per component, grid runs of sign-
/// definite difference spanning at least two cells, left to right; the
/// first admissible run wins and j is the smallest level > i whose radius
/// fits strictly inside the run. With max_index > 0 only slots with
/// index_of(pair) <= max_index are considered. Absence is not a disproof:
/// differences confined to isolated nodes produce no witness.
std::optional<SeparationWitness> separation_witness(const SeqFunc& f, const SeqFunc& g,
                                                    double tol, long long max_index = 0);

} // namespace lipflow
