#include <doctest.h>

#include <cmath>

#include "lipflow/errors.hpp"
#include "lipflow/orbit.hpp"
#include "lipflow/rng.hpp"

using namespace lipflow;

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;
}

TEST_SUITE("orbit") {

TEST_CASE("trivial flow: every component is constant in time") {
    const FlowSystem sys = circle_rotation(0.0);
    const HilbertEmbedding psi = coordinate_embedding(sys.domain, 4);
    const SeqFunc orbit = orbit_embed(sys, psi, State{0.37}, {1.0, 0.125, 4});
    for (const Func01& c : orbit.components()) {
        for (std::size_t k = 0; k < c.size(); ++k) {
            CHECK(c[k] == c[0]);
        }
    }
}

TEST_CASE("circle rotation: closed-form components") {
    const double alpha = std::sqrt(2.0) - 1.0;
    const FlowSystem sys = circle_rotation(alpha);
    const HilbertEmbedding psi = coordinate_embedding(sys.domain, 2);
    const double x = 0.3;
    const SeqFunc orbit = orbit_embed(sys, psi, State{x}, {2.0, 0.01, 2});
    const Func01& sin_comp = orbit.component(1);
    const Func01& cos_comp = orbit.component(2);
    for (std::size_t k = 0; k < sin_comp.size(); k += 13) {
        const double t = sin_comp.node(k);
        CHECK(sin_comp[k] == doctest::Approx(0.5 + 0.5 * std::sin(two_pi * (x + alpha * t))).epsilon(1e-12));
        CHECK(cos_comp[k] == doctest::Approx(0.5 + 0.5 * std::cos(two_pi * (x + alpha * t))).epsilon(1e-12));
    }
}

TEST_CASE("orbit values stay in [0,1]") {
    const FlowSystem sys = annulus_flow(0.25, 1.0, 1e-2);
    const HilbertEmbedding psi = coordinate_embedding(sys.domain, 2);
    Rng rng(41);
    const SeqFunc orbit = orbit_embed(sys, psi, sys.sample_state(rng), {1.0, 0.01, 2});
    for (const Func01& c : orbit.components()) {
        for (double v : c.values()) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
}

TEST_CASE("equivariance: r = 0 gives defect exactly zero") {
    const FlowSystem sys = circle_rotation(0.4142135623730951);
    const HilbertEmbedding psi = coordinate_embedding(sys.domain, 2);
    CHECK(equivariance_defect(sys, psi, State{0.2}, 0.0, {1.0, 0.01, 2}) == 0.0);
}

TEST_CASE("equivariance: exact flows at grid-aligned shifts") {
    const FlowSystem sys = torus_linear({0.4142135623730951, 0.2886751345948129});
    const HilbertEmbedding psi = coordinate_embedding(sys.domain, 4);
    const OrbitConfig cfg{2.0, 0.01, 4};
    Rng rng(42);
    for (double r : {-0.5, -0.1, 0.1, 0.25, 1.0}) {
        const State x{rng.unit(), rng.unit()};
        CHECK(equivariance_defect(sys, psi, x, r, cfg) <= 1e-12);
    }
}

TEST_CASE("equivariance: ODE flow within the integrator budget") {
    const FlowSystem sys = annulus_flow(0.25, 1.0, 1e-3);
    const HilbertEmbedding psi = coordinate_embedding(sys.domain, 2);
    const OrbitConfig cfg{1.0, 0.01, 2};
    Rng rng(43);
    const State x = sys.sample_state(rng);
    for (double r : {-0.5, 0.25, 1.0}) {
        CHECK(equivariance_defect(sys, psi, x, r, cfg) <= 1e-7);
    }
}

TEST_CASE("window consistency on a dyadic grid is bit-exact") {
    const FlowSystem sys = circle_rotation(std::sqrt(2.0) - 1.0);
    const HilbertEmbedding psi = coordinate_embedding(sys.domain, 2);
    const OrbitConfig big{1.0, 0.015625, 2};
    const OrbitConfig small{0.5, 0.015625, 2};
    const State x{0.7};
    const SeqFunc full = orbit_embed(sys, psi, x, big);
    const SeqFunc half = orbit_embed(sys, psi, x, small);
    for (int i = 1; i <= 2; ++i) {
        const Func01 cut = restrict_to(full.component(i), half.a(), half.b());
        REQUIRE(cut.size() == half.size());
        for (std::size_t k = 0; k < cut.size(); ++k) {
            CHECK(cut[k] == half.component(i)[k]);
        }
    }
}

TEST_CASE("continuity defect: coincident states and modulus bound") {
    const FlowSystem sys = circle_rotation(0.4142135623730951);
    const HilbertEmbedding psi = coordinate_embedding(sys.domain, 2);
    const OrbitConfig cfg{1.0, 0.01, 2};
    const ContinuityDefect same = continuity_defect(sys, psi, State{0.4}, State{0.4}, cfg);
    CHECK(same.state_distance == 0.0);
    CHECK(same.image_distance == 0.0);

    Rng rng(44);
    for (int trial = 0; trial < 50; ++trial) {
        const State x{rng.unit()};
        const State y{rng.unit()};
        const ContinuityDefect d = continuity_defect(sys, psi, x, y, cfg);
        // rotation is an isometry; psi contributes its modulus
        CHECK(d.image_distance <= psi.modulus * d.state_distance + 1e-12);
    }
}

TEST_CASE("orbit config validation") {
    const FlowSystem sys = circle_rotation(0.1);
    const HilbertEmbedding psi = coordinate_embedding(sys.domain, 2);
    CHECK_THROWS_AS(orbit_embed(sys, psi, State{0.1}, {1.0, 0.3, 2}), invalid_input);
    CHECK_THROWS_AS(orbit_embed(sys, psi, State{0.1}, {1.0, 0.01, 5}), invalid_input);
}

} // TEST_SUITE
