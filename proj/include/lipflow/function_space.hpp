#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lipflow {

/// A sampled continuous function t -> [0,1] on a finite window [a,b].
///
/// Values live on the uniform grid a, a+h, ..., b and the function is
/// interpreted everywhere in between as the piecewise-linear interpolant.
/// Linear interpolation preserves both the [0,1] range and the 1-Lipschitz
/// property, so certificates established on the grid survive evaluation at
/// arbitrary points. Instances are immutable after construction.
class Func01 {
public:
    /// Builds a function from its grid samples. The window is derived as
    /// [a, a+(n-1)h]. Requires h > 0, at least two samples, all in [0,1].
    static Func01 from_values(double a, double h, std::vector<double> values);

    /// Samples fn on the grid of [a,b]; (b-a) must be a multiple of h.
    static Func01 sample(double a, double b, double h, const std::function<double(double)>& fn);

    double a() const { return origin_; }
    double b() const { return node(size() - 1); }
    double step() const { return step_; }
    std::size_t size() const { return values_.size(); }
    double node(std::size_t k) const { return origin_ + static_cast<double>(k) * step_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }

private:
    Func01(double a, double h, std::vector<double> v);

    double origin_;
    double step_;
    std::vector<double> values_;
};

/// Truncation parameters for the compact-convergence metric: the weighted
/// sum keeps its first depth_n terms, which bounds the discarded tail by
/// 2^-depth_n. eval_step is the requested spacing for the inner maximum;
/// since the pointwise difference of two interpolants on a shared grid is
/// piecewise linear, its maximum is attained at grid nodes and the shared
/// sample grid is always used (never coarser than requested in effect).
struct MetricConfig {
    int depth_n = 10;
    double eval_step = 0.01;
};

/// A finite truncation of a function R -> [0,1]^N: a stack of Func01
/// components sharing one window and step.
class SeqFunc {
public:
    static SeqFunc from_components(std::vector<Func01> components);

    int depth() const { return static_cast<int>(components_.size()); }
    const Func01& component(int i) const { return components_[static_cast<std::size_t>(i) - 1]; } // 1-based
    const std::vector<Func01>& components() const { return components_; }
    double a() const { return components_.front().a(); }
    double b() const { return components_.front().b(); }
    double step() const { return components_.front().step(); }
    std::size_t size() const { return components_.front().size(); }

private:
    explicit SeqFunc(std::vector<Func01> components) : components_(std::move(components)) {}

    std::vector<Func01> components_;
};

/// Piecewise-linear evaluation. Grid nodes reproduce stored samples
/// bit-exactly; t outside [a,b] is a usage error.
double eval(const Func01& f, double t);

/// Returns g with g(t) = f(t+r) on the window shrunk by r. When r is an
/// exact multiple of the step the result is a pure index shift with no
/// interpolation at all. Requires |r| smaller than half the window length.
Func01 translate(const Func01& f, double r);

/// Component-wise translation of a whole stack.
SeqFunc translate(const SeqFunc& f, double r);

/// Restriction to the grid nodes inside [a2,b2] (at least two must remain).
Func01 restrict_to(const Func01& f, double a2, double b2);

/// The truncated compact-convergence distance
///   sum_{n=1..N} 2^-n * max_{|t|<=n, t in window & grid} |f(t)-g(t)|,
/// with each inner maximum capped at the window extent. Functions must
/// share window and step exactly.
double metric(const Func01& f, const Func01& g, const MetricConfig& cfg);

/// Product metric sum_{m=1..M} 2^-m * metric(F_m, G_m, cfg).
double seq_metric(const SeqFunc& f, const SeqFunc& g, const MetricConfig& cfg);

/// max over adjacent grid pairs of |f(t+h)-f(t)| - h. Nonpositive values
/// certify grid-level 1-Lipschitzness; a positive value is the worst
/// violation.
double lipschitz_defect(const Func01& f);

/// True iff all samples are in [0,1] and lipschitz_defect(f) <= tol.
bool is_in_L(const Func01& f, double tol);

/// Finite eps-net for the 1-Lipschitz functions on [a,b]: value levels
/// spaced eps apart (with a final level at 1 when eps does not divide 1),
/// time nodes spaced eps apart, adjacent levels differing by at most one
/// step, resampled onto the given grid. Every element carries an exact
/// (tol = 0) Lipschitz certificate. Throws when the net would exceed
/// max_size, naming the required cap.
std::vector<Func01> epsilon_net(double eps, double a, double b, double step,
                                std::size_t max_size = 250000);

namespace detail {
/// Grid offset between two functions on the same lattice (g.a - f.a in
/// units of the shared step, rounded to nearest).
long long node_offset(const Func01& f, const Func01& g);
} // namespace detail

} // namespace lipflow
