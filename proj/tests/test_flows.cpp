#include <doctest.h>

#include <cmath>

#include "lipflow/errors.hpp"
#include "lipflow/flows.hpp"
#include "lipflow/rng.hpp"

using namespace lipflow;

TEST_SUITE("flows") {

TEST_CASE("circle rotation: trivial, wrap-around and irrational frequency") {
    const FlowSystem still = circle_rotation(0.0);
    CHECK(still.evolve(3.7, State{0.42})[0] == 0.42);

    const FlowSystem unit = circle_rotation(1.0);
    CHECK(unit.evolve(0.5, State{0.75})[0] == 0.25);

    const double alpha = std::sqrt(2.0) - 1.0;
    const FlowSystem irr = circle_rotation(alpha);
    CHECK(irr.evolve(1.0, State{0.0})[0] == doctest::Approx(alpha).epsilon(1e-13));
}

TEST_CASE("torus d=1 coincides with the circle bitwise") {
    const double alpha = 0.3141592653589793;
    const FlowSystem circle = circle_rotation(alpha);
    const FlowSystem torus = torus_linear({alpha});
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const double t = rng.uniform(-2.0, 2.0);
        const State x{rng.unit()};
        CHECK(circle.evolve(t, x)[0] == torus.evolve(t, x)[0]);
    }
}

TEST_CASE("torus group law holds to 1e-15") {
    const FlowSystem sys = torus_linear({std::sqrt(2.0) - 1.0, 0.5772156649015329});
    Rng rng(32);
    std::vector<GroupLawSample> samples;
    for (int s = 0; s < 500; ++s) {
        samples.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                           State{rng.unit(), rng.unit()}});
    }
    const GroupLawReport rep = verify_group_law(sys, samples, 1e-15);
    CHECK(rep.pass);
    CHECK(rep.max_defect <= 1e-15);
}

TEST_CASE("verify_group_law: s = t = 0 has defect exactly zero") {
    const FlowSystem sys = circle_rotation(0.7);
    const GroupLawSample sample{0.0, 0.0, State{0.3}};
    CHECK(verify_group_law(sys, {&sample, 1}, 0.0).max_defect == 0.0);
}

TEST_CASE("ode flow: zero field is the identity") {
    VectorField zero;
    zero.dim = 2;
    zero.lipschitz_bound = 0.0;
    zero.f = [](std::span<const double>) { return State{0.0, 0.0}; };
    const FlowSystem sys = ode_flow(zero, Domain::box({-1.0, -1.0}, {1.0, 1.0}), 1e-2);
    const State out = sys.evolve(0.37, State{0.5, -0.25});
    CHECK(out[0] == 0.5);
    CHECK(out[1] == -0.25);
}

TEST_CASE("ode flow: quarter turn of the rotation field hits the closed form") {
    VectorField spin;
    spin.dim = 2;
    spin.lipschitz_bound = 1.0;
    spin.f = [](std::span<const double> x) { return State{-x[1], x[0]}; };
    const FlowSystem sys = ode_flow(spin, Domain::box({-1.2, -1.2}, {1.2, 1.2}), 1e-3);
    const State out = sys.evolve(1.5707963267948966, State{1.0, 0.0});
    CHECK(std::abs(out[0] - 0.0) <= 1e-11);
    CHECK(std::abs(out[1] - 1.0) <= 1e-11);
}

TEST_CASE("ode flow: evolve(0,x) = x and group-law defect within budget") {
    const FlowSystem sys = annulus_flow(0.25, 1.0, 1e-3);
    Rng rng(33);
    const State x = sys.sample_state(rng);
    const State same = sys.evolve(0.0, x);
    CHECK(same[0] == x[0]);
    CHECK(same[1] == x[1]);

    std::vector<GroupLawSample> samples;
    for (int s = 0; s < 30; ++s) {
        samples.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), sys.sample_state(rng)});
    }
    const GroupLawReport rep = verify_group_law(sys, samples, sys.group_law_budget.at(1.0, 1.0));
    CHECK(rep.pass);
}

TEST_CASE("ode flow: leaving the domain raises numeric_error") {
    VectorField push;
    push.dim = 1;
    push.lipschitz_bound = 0.0;
    push.f = [](std::span<const double>) { return State{1.0}; };
    const FlowSystem sys = ode_flow(push, Domain::box({0.0}, {1.0}), 1e-2);
    CHECK_THROWS_AS(sys.evolve(1.0, State{0.9}), numeric_error);
}

TEST_CASE("broken rotation violates the group law") {
    const FlowSystem sys = broken_rotation(0.4142135623730951, 0.01);
    Rng rng(34);
    std::vector<GroupLawSample> samples;
    for (int s = 0; s < 100; ++s) {
        samples.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), State{rng.unit()}});
    }
    const GroupLawReport rep = verify_group_law(sys, samples, 1e-15);
    CHECK_FALSE(rep.pass);
    CHECK(rep.max_defect > 1e-6);
}

TEST_CASE("domain descriptors: distances and containment") {
    const Domain torus = Domain::torus(1);
    CHECK(torus.distance(State{0.05}, State{0.95}) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(torus.contains(State{0.0}));
    CHECK_FALSE(torus.contains(State{1.0}));

    const Domain box = Domain::box({0.0, 0.0}, {2.0, 2.0});
    CHECK(box.distance(State{0.0, 0.0}, State{2.0, 0.0}) == 2.0);
    CHECK(box.contains(State{2.0, 2.0}));
    CHECK_FALSE(box.contains(State{2.1, 0.5}));
    CHECK(box.contains(State{2.1, 0.5}, 0.2));
}

} // TEST_SUITE
