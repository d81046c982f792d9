#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace lipflow {

using State = std::vector<double>;

/// Compact state domain: a product of closed intervals or the d-torus
/// (coordinates stored in [0,1) with wrap-around distances).
struct Domain {
    enum class Kind { box, torus };

    Kind kind = Kind::torus;
    int dim = 1;
    std::vector<double> lo; // box only
    std::vector<double> hi; // box only

    static Domain torus(int dim);
    static Domain box(std::vector<double> lo, std::vector<double> hi);

    double distance(std::span<const double> x, std::span<const double> y) const;
    double diameter() const;
    bool contains(std::span<const double> x, double margin = 0.0) const;
};

/// Analytic budget for the group-law defect of a flow:
/// defect(s,t) <= abs_floor + per_unit_time * (|s| + |t|).
struct GroupLawBudget {
    double abs_floor = 1e-15;
    double per_unit_time = 0.0;
    std::string expr = "1e-15";

    double at(double s, double t) const {
        return abs_floor + per_unit_time * (std::abs(s) + std::abs(t));
    }
};

class Rng;

/// A concrete flow (X, (T_t)): compact domain plus evolution map.
/// evolve is pure; values are immutable after construction. sample_state
/// draws test states from a region of the domain that stays inside it over
/// the time horizons the harness uses.
struct FlowSystem {
    enum class Kind { rotation, torus_linear, ode, skewed };

    Kind kind = Kind::rotation;
    int dim = 1;
    Domain domain;
    std::function<State(double, std::span<const double>)> evolve;
    std::function<State(Rng&)> sample_state;
    GroupLawBudget group_law_budget;
};

/// A bounded velocity field with a declared Lipschitz bound, used for
/// step-size and continuity budgets.
struct VectorField {
    int dim = 0;
    std::function<State(std::span<const double>)> f;
    double lipschitz_bound = 1.0;
};

/// Rotation on the circle R/Z: evolve(t,x) = frac(x + alpha t).
FlowSystem circle_rotation(double alpha);

/// Linear flow on the d-torus: evolve(t,x)_k = frac(x_k + alphas_k t).
FlowSystem torus_linear(std::vector<double> alphas);

/// Flow of a vector field by classical fixed-step RK4 (the final partial
/// step is shortened to land exactly on t; negative times integrate
/// backward). Trajectories leaving the domain by more than exit_margin
/// raise numeric_error.
FlowSystem ode_flow(VectorField field, Domain domain, double rk_step, double exit_margin = 1e-6);

/// Planar rotation with radial attraction to the unit circle,
///   (x,y)' = omega*(-y,x) + kappa*(1-x^2-y^2)*(x,y),
/// on the box [-1.5,1.5]^2 it preserves around the invariant annulus.
FlowSystem annulus_flow(double kappa, double omega, double rk_step);

/// Test hook: a rotation whose evolve deliberately violates the group law
/// (adds a skew*t^2 drift). Used to exercise failure reporting.
FlowSystem broken_rotation(double alpha, double skew);

struct GroupLawSample {
    double s = 0.0;
    double t = 0.0;
    State x;
};

struct GroupLawReport {
    double max_defect = 0.0;
    double worst_s = 0.0;
    double worst_t = 0.0;
    std::size_t samples = 0;
    bool pass = true;
};

/// Max over samples of distance(evolve(s+t,x), evolve(s, evolve(t,x))).
GroupLawReport verify_group_law(const FlowSystem& sys,
                                std::span<const GroupLawSample> samples, double tol);

} // namespace lipflow
