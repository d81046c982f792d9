#include "lipflow/flows.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lipflow/errors.hpp"
#include "lipflow/rng.hpp"

namespace lipflow {

namespace {

// Wraps into [0,1). The subtraction u - floor(u) is exact; the only case
// needing care is a negative u so tiny that 1 + u rounds back to 1.
double wrap01(double u) {
    double w = u - std::floor(u);
    if (w >= 1.0) {
        w -= 1.0;
    }
    return w;
}

State rk4_step(const VectorField& field, const State& x, double dt) {
    const std::size_t d = x.size();
    State k1 = field.f(x);
    State tmp(d);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    State k2 = field.f(tmp);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    State k3 = field.f(tmp);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = x[i] + dt * k3[i];
    State k4 = field.f(tmp);
    State out(d);
    for (std::size_t i = 0; i < d; ++i) {
        out[i] = x[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

} // namespace

Domain Domain::torus(int dim) {
    if (dim < 1) {
        throw invalid_input("Domain: dimension must be >= 1");
    }
    Domain d;
    d.kind = Kind::torus;
    d.dim = dim;
    return d;
}

Domain Domain::box(std::vector<double> lo, std::vector<double> hi) {
    if (lo.empty() || lo.size() != hi.size()) {
        throw invalid_input("Domain: box bounds must be nonempty and matched");
    }
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (!(lo[i] < hi[i])) {
            throw invalid_input("Domain: box requires lo < hi per coordinate");
        }
    }
    Domain d;
    d.kind = Kind::box;
    d.dim = static_cast<int>(lo.size());
    d.lo = std::move(lo);
    d.hi = std::move(hi);
    return d;
}

double Domain::distance(std::span<const double> x, std::span<const double> y) const {
    double acc = 0.0;
    for (int i = 0; i < dim; ++i) {
        double d = std::abs(x[static_cast<std::size_t>(i)] - y[static_cast<std::size_t>(i)]);
        if (kind == Kind::torus) {
            d = std::min(d, 1.0 - d);
        }
        acc += d * d;
    }
    return std::sqrt(acc);
}

double Domain::diameter() const {
    double acc = 0.0;
    for (int i = 0; i < dim; ++i) {
        const double w = kind == Kind::torus
                             ? 0.5
                             : hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)];
        acc += w * w;
    }
    return std::sqrt(acc);
}

bool Domain::contains(std::span<const double> x, double margin) const {
    if (kind == Kind::torus) {
        for (int i = 0; i < dim; ++i) {
            const double v = x[static_cast<std::size_t>(i)];
            if (!(v >= 0.0) || !(v < 1.0)) {
                return false;
            }
        }
        return true;
    }
    for (int i = 0; i < dim; ++i) {
        const double v = x[static_cast<std::size_t>(i)];
        if (!(v >= lo[static_cast<std::size_t>(i)] - margin) ||
            !(v <= hi[static_cast<std::size_t>(i)] + margin)) {
            return false;
        }
    }
    return true;
}

FlowSystem torus_linear(std::vector<double> alphas) {
    if (alphas.empty()) {
        throw invalid_input("torus_linear: need at least one frequency");
    }
    const int dim = static_cast<int>(alphas.size());
    FlowSystem sys;
    sys.kind = dim == 1 ? FlowSystem::Kind::rotation : FlowSystem::Kind::torus_linear;
    sys.dim = dim;
    sys.domain = Domain::torus(dim);
    sys.group_law_budget = {1e-15, 0.0, "1e-15 (exact modular arithmetic)"};
    sys.sample_state = [dim](Rng& rng) {
        State x(static_cast<std::size_t>(dim));
        for (double& v : x) {
            v = rng.unit();
        }
        return x;
    };
    sys.evolve = [alphas = std::move(alphas), dim](double t, std::span<const double> x) {
        State out(static_cast<std::size_t>(dim));
        for (std::size_t k = 0; k < out.size(); ++k) {
            // fma keeps x + alpha*t at one rounding, which is what holds the
            // group-law defect below 1e-15.
            out[k] = wrap01(std::fma(alphas[k], t, x[k]));
        }
        return out;
    };
    return sys;
}

FlowSystem circle_rotation(double alpha) {
    return torus_linear({alpha});
}

FlowSystem ode_flow(VectorField field, Domain domain, double rk_step, double exit_margin) {
    if (!(rk_step > 0.0)) {
        throw invalid_input("ode_flow: rk_step must be > 0");
    }
    if (field.dim != domain.dim) {
        throw invalid_input("ode_flow: field and domain dimensions differ");
    }
    FlowSystem sys;
    sys.kind = FlowSystem::Kind::ode;
    sys.dim = field.dim;
    sys.domain = domain;
    {
        char expr[96];
        std::snprintf(expr, sizeof(expr), "1e-12 + 1e-8*(rk_step/1e-3)^4 per unit time, rk_step=%g", rk_step);
        const double scale = rk_step / 1e-3;
        sys.group_law_budget = {1e-12, 1e-8 * scale * scale * scale * scale, expr};
    }
    sys.sample_state = [domain](Rng& rng) {
        State x(static_cast<std::size_t>(domain.dim));
        for (int i = 0; i < domain.dim; ++i) {
            const double u = rng.unit();
            x[static_cast<std::size_t>(i)] =
                domain.kind == Domain::Kind::torus
                    ? u
                    : domain.lo[static_cast<std::size_t>(i)] +
                          u * (domain.hi[static_cast<std::size_t>(i)] - domain.lo[static_cast<std::size_t>(i)]);
        }
        return x;
    };
    sys.evolve = [field = std::move(field), domain, rk_step, exit_margin](
                     double t, std::span<const double> x0) {
        if (static_cast<int>(x0.size()) != field.dim) {
            throw invalid_input("ode_flow.evolve: state dimension mismatch");
        }
        State x(x0.begin(), x0.end());
        if (t == 0.0) {
            return x;
        }
        const double dir = t > 0.0 ? 1.0 : -1.0;
        const double span = std::abs(t);
        long long n = static_cast<long long>(std::floor(span / rk_step));
        while (static_cast<double>(n) * rk_step > span) {
            --n;
        }
        for (long long i = 0; i < n; ++i) {
            x = rk4_step(field, x, dir * rk_step);
            if (!domain.contains(x, exit_margin)) {
                throw numeric_error("ode_flow: trajectory left the domain (invariance violated)");
            }
        }
        const double rest = span - static_cast<double>(n) * rk_step;
        if (rest > 0.0) {
            x = rk4_step(field, x, dir * rest);
            if (!domain.contains(x, exit_margin)) {
                throw numeric_error("ode_flow: trajectory left the domain (invariance violated)");
            }
        }
        return x;
    };
    return sys;
}

FlowSystem annulus_flow(double kappa, double omega, double rk_step) {
    VectorField field;
    field.dim = 2;
    field.lipschitz_bound = std::abs(omega) + std::abs(kappa) * 7.75; // sup of the Jacobian on the box
    field.f = [kappa, omega](std::span<const double> x) {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        const double pull = kappa * (1.0 - r2);
        return State{-omega * x[1] + pull * x[0], omega * x[0] + pull * x[1]};
    };
    FlowSystem sys = ode_flow(std::move(field), Domain::box({-1.5, -1.5}, {1.5, 1.5}), rk_step);
    sys.sample_state = [](Rng& rng) {
        // Near the invariant circle both time directions stay well inside
        // the box over the harness horizons.
        const double radius = 0.95 + 0.1 * rng.unit();
        const double angle = 6.283185307179586 * rng.unit();
        return State{radius * std::cos(angle), radius * std::sin(angle)};
    };
    return sys;
}

FlowSystem broken_rotation(double alpha, double skew) {
    FlowSystem sys = circle_rotation(alpha);
    sys.kind = FlowSystem::Kind::skewed;
    sys.evolve = [alpha, skew](double t, std::span<const double> x) {
        return State{wrap01(std::fma(alpha, t, x[0]) + skew * t * t)};
    };
    return sys;
}

GroupLawReport verify_group_law(const FlowSystem& sys,
                                std::span<const GroupLawSample> samples, double tol) {
    GroupLawReport report;
    report.samples = samples.size();
    for (const GroupLawSample& sample : samples) {
        const State once = sys.evolve(sample.s + sample.t, sample.x);
        const State inner = sys.evolve(sample.t, sample.x);
        const State twice = sys.evolve(sample.s, inner);
        const double defect = sys.domain.distance(once, twice);
        if (defect > report.max_defect) {
            report.max_defect = defect;
            report.worst_s = sample.s;
            report.worst_t = sample.t;
        }
    }
    report.pass = report.max_defect <= tol;
    return report;
}

} // namespace lipflow
