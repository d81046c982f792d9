#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lipflow/errors.hpp"
#include "lipflow/function_space.hpp"
#include "lipflow/lattice.hpp"
#include "lipflow/rng.hpp"

using namespace lipflow;

namespace {

Func01 certified_random(Rng& rng, double a, long long cells, double h) {
    std::vector<double> v(static_cast<std::size_t>(cells) + 1);
    double cur = rng.uniform(0.2, 0.8);
    for (double& out : v) {
        out = detail::snap_to_lattice(std::clamp(cur, 0.0, 1.0));
        cur += rng.uniform(-h, h);
    }
    detail::lipschitz_project(v, h, 0.0, 1.0);
    return Func01::from_values(a, h, std::move(v));
}

} // namespace

TEST_SUITE("function_space") {

TEST_CASE("eval: constant function") {
    const Func01 f = Func01::sample(-1.0, 1.0, 0.25, [](double) { return 0.5; });
    CHECK(eval(f, 0.3) == 0.5);
}

TEST_CASE("eval: linear interpolation between two samples") {
    const Func01 f = Func01::from_values(0.0, 1.0, {0.0, 1.0});
    CHECK(eval(f, 0.25) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("eval: |sin| against the closed form") {
    const Func01 f = Func01::sample(0.0, 3.0, 1e-4, [](double t) { return std::abs(std::sin(t)); });
    CHECK(std::abs(eval(f, 1.0) - std::abs(std::sin(1.0))) <= 1e-7);
    // mid-cell point: interpolation error bounded by h^2/8 * |f''| plus slack
    CHECK(std::abs(eval(f, 1.00005) - std::abs(std::sin(1.00005))) <= 1e-7);
}

TEST_CASE("eval: grid nodes reproduce stored samples bit-exactly") {
    Rng rng(11);
    const Func01 f = certified_random(rng, -1.5, 300, 0.01);
    for (std::size_t k = 0; k < f.size(); ++k) {
        CHECK(eval(f, f.node(k)) == f[k]);
    }
}

TEST_CASE("eval: out-of-window time is a usage error") {
    const Func01 f = Func01::from_values(0.0, 0.5, {0.1, 0.2, 0.3});
    CHECK_THROWS_AS(eval(f, -0.01), invalid_input);
    CHECK_THROWS_AS(eval(f, 1.01), invalid_input);
}

TEST_CASE("translate: r = 0 is the identity on the same window") {
    Rng rng(12);
    const Func01 f = certified_random(rng, 0.0, 50, 0.02);
    const Func01 g = translate(f, 0.0);
    CHECK(g.a() == f.a());
    CHECK(g.size() == f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        CHECK(g[k] == f[k]);
    }
}

TEST_CASE("translate: affine shift of the identity ramp") {
    const Func01 f = Func01::sample(0.0, 1.0, 0.05, [](double t) { return t; });
    const Func01 g = translate(f, 0.25);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(g[k] == doctest::Approx(g.node(k) + 0.25).epsilon(1e-14));
    }
}

TEST_CASE("translate: grid-aligned shift is an index shift") {
    Rng rng(13);
    const Func01 f = certified_random(rng, -1.0, 200, 0.01);
    const Func01 g = translate(f, 10 * 0.01);
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(g[k] == f[k + 10]);
    }
}

TEST_CASE("translate: compose equals single shift within interpolation tolerance") {
    Rng rng(14);
    const double h = 0.01;
    for (int trial = 0; trial < 20; ++trial) {
        const Func01 f = certified_random(rng, -2.0, 400, h);
        const double r = rng.uniform(-0.3, 0.3);
        const double s = rng.uniform(-0.3, 0.3);
        const Func01 two = translate(translate(f, r), s);
        const Func01 one = translate(f, r + s);
        const long long off = detail::node_offset(two, one);
        for (std::size_t k = 0; k < two.size(); ++k) {
            const long long j = static_cast<long long>(k) - off;
            if (j < 0 || j >= static_cast<long long>(one.size())) {
                continue;
            }
            CHECK(std::abs(two[k] - one[static_cast<std::size_t>(j)]) <= h + 1e-12);
        }
    }
}

TEST_CASE("translate: window too small to shrink") {
    const Func01 f = Func01::from_values(0.0, 0.1, {0.1, 0.2, 0.3});
    CHECK_THROWS_AS(translate(f, 0.09), invalid_input);
}

TEST_CASE("metric: identical functions have distance zero") {
    Rng rng(15);
    const Func01 f = certified_random(rng, -3.0, 600, 0.01);
    CHECK(metric(f, f, {10, 0.01}) == 0.0);
}

TEST_CASE("metric: all-zero vs all-one at depth 3 gives 0.875") {
    const Func01 zero = Func01::sample(-3.0, 3.0, 0.01, [](double) { return 0.0; });
    const Func01 one = Func01::sample(-3.0, 3.0, 0.01, [](double) { return 1.0; });
    CHECK(metric(zero, one, {3, 0.01}) == 0.875);
}

TEST_CASE("metric: geometric sum 1 - 2^-N when the window covers [-N,N]") {
    const Func01 zero = Func01::sample(-10.0, 10.0, 0.05, [](double) { return 0.0; });
    const Func01 one = Func01::sample(-10.0, 10.0, 0.05, [](double) { return 1.0; });
    for (int depth : {1, 4, 10}) {
        CHECK(metric(zero, one, {depth, 0.05}) == 1.0 - std::pow(0.5, depth));
    }
}

TEST_CASE("metric: mismatched grids are rejected") {
    const Func01 f = Func01::sample(0.0, 1.0, 0.1, [](double) { return 0.5; });
    const Func01 g = Func01::sample(0.0, 1.0, 0.05, [](double) { return 0.5; });
    CHECK_THROWS_AS(metric(f, g, {3, 0.1}), invalid_input);
}

TEST_CASE("metric: symmetry and triangle inequality on random members") {
    Rng rng(16);
    const MetricConfig cfg{10, 0.01};
    for (int trial = 0; trial < 50; ++trial) {
        const Func01 f = certified_random(rng, -3.0, 600, 0.01);
        const Func01 g = certified_random(rng, -3.0, 600, 0.01);
        const Func01 k = certified_random(rng, -3.0, 600, 0.01);
        CHECK(metric(f, g, cfg) == metric(g, f, cfg));
        CHECK(metric(f, k, cfg) <= metric(f, g, cfg) + metric(g, k, cfg) + 1e-12);
    }
}

TEST_CASE("metric: truncation tail bound") {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const Func01 f = certified_random(rng, -3.0, 600, 0.01);
        const Func01 g = certified_random(rng, -3.0, 600, 0.01);
        const double d10 = metric(f, g, {10, 0.01});
        const double d20 = metric(f, g, {20, 0.01});
        CHECK(std::abs(d10 - d20) <= std::pow(0.5, 10));
    }
}

TEST_CASE("seq_metric: two components all-zero vs all-one at depth 3") {
    const Func01 zero = Func01::sample(-3.0, 3.0, 0.01, [](double) { return 0.0; });
    const Func01 one = Func01::sample(-3.0, 3.0, 0.01, [](double) { return 1.0; });
    const SeqFunc f = SeqFunc::from_components({zero, zero});
    const SeqFunc g = SeqFunc::from_components({one, one});
    CHECK(seq_metric(f, g, {3, 0.01}) == 0.65625);
}

TEST_CASE("seq_metric: a single differing component carries weight 2^-m") {
    const Func01 zero = Func01::sample(-3.0, 3.0, 0.01, [](double) { return 0.0; });
    const Func01 one = Func01::sample(-3.0, 3.0, 0.01, [](double) { return 1.0; });
    const SeqFunc f = SeqFunc::from_components({zero, zero, zero});
    const SeqFunc g = SeqFunc::from_components({zero, one, zero});
    const MetricConfig cfg{3, 0.01};
    CHECK(seq_metric(f, g, cfg) == 0.25 * metric(zero, one, cfg));
}

TEST_CASE("seq_metric: depth mismatch is rejected") {
    const Func01 zero = Func01::sample(0.0, 1.0, 0.1, [](double) { return 0.0; });
    CHECK_THROWS_AS(seq_metric(SeqFunc::from_components({zero}),
                               SeqFunc::from_components({zero, zero}), {3, 0.1}),
                    invalid_input);
}

TEST_CASE("lipschitz_defect: constant, extremal and violating slopes") {
    const double h = 0.05;
    const Func01 constant = Func01::sample(-1.0, 2.0, h, [](double) { return 0.3; });
    CHECK(lipschitz_defect(constant) == -h);

    const Func01 ramp = Func01::sample(-1.0, 2.0, h,
                                       [](double t) { return std::clamp(t, 0.0, 1.0); });
    CHECK(std::abs(lipschitz_defect(ramp)) <= 1e-12);

    const Func01 steep = Func01::sample(-1.0, 2.0, h,
                                        [](double t) { return std::clamp(2.0 * t, 0.0, 1.0); });
    CHECK(lipschitz_defect(steep) == doctest::Approx(h).epsilon(1e-10));
}

TEST_CASE("is_in_L: membership and rejection") {
    const double h = 0.05;
    CHECK(is_in_L(Func01::sample(-1.0, 2.0, h, [](double) { return 0.5; }), 0.0));
    CHECK_FALSE(is_in_L(Func01::sample(-1.0, 2.0, h,
                                       [](double t) { return std::clamp(2.0 * t, 0.0, 1.0); }),
                        0.0));
}

TEST_CASE("translation invariance of the Lipschitz class") {
    Rng rng(18);
    const double h = 0.01;
    for (int trial = 0; trial < 30; ++trial) {
        const Func01 f = certified_random(rng, -2.0, 400, h);
        REQUIRE(is_in_L(f, 0.0));
        const long long m = rng.uniform_int(-150, 150);
        CHECK(is_in_L(translate(f, static_cast<double>(m) * h), 0.0)); // aligned: exact
        CHECK(is_in_L(translate(f, rng.uniform(-1.5, 1.5)), 1e-12));   // resampled: float slop
    }
}

TEST_CASE("epsilon_net: smallest window enumerates all one-step pairs") {
    const double eps = 0.25;
    const std::vector<Func01> net = epsilon_net(eps, 0.0, eps, eps);
    // oracle: level pairs (a,b) with |a-b| at most one level step
    const int levels = 5; // 0, .25, .5, .75, 1
    int expected = 0;
    for (int a = 0; a < levels; ++a) {
        for (int b = 0; b < levels; ++b) {
            if (std::abs(a - b) <= 1) {
                ++expected;
            }
        }
    }
    CHECK(static_cast<int>(net.size()) == expected);
    for (const Func01& e : net) {
        CHECK(is_in_L(e, 0.0));
    }
}

TEST_CASE("epsilon_net: covering spot-check on random members") {
    Rng rng(19);
    const double eps = 0.25;
    const std::vector<Func01> net = epsilon_net(eps, 0.0, 0.5, 0.05);
    for (int trial = 0; trial < 100; ++trial) {
        const Func01 g = certified_random(rng, 0.0, 10, 0.05);
        double best = 1e300;
        for (const Func01& e : net) {
            double dist = 0.0;
            for (std::size_t k = 0; k < g.size(); ++k) {
                dist = std::max(dist, std::abs(g[k] - e[k]));
            }
            best = std::min(best, dist);
        }
        CHECK(best <= eps);
    }
}

TEST_CASE("epsilon_net: cap violation names the required size") {
    try {
        epsilon_net(0.05, 0.0, 1.0, 0.01, 10);
        FAIL("expected invalid_input");
    } catch (const invalid_input& e) {
        CHECK(std::string(e.what()).find("raise the cap") != std::string::npos);
    }
}

TEST_CASE("restrict_to: keeps the selected nodes bitwise") {
    Rng rng(20);
    const Func01 f = certified_random(rng, -1.0, 200, 0.01);
    const Func01 g = restrict_to(f, -0.5, 0.5);
    const long long off = detail::node_offset(f, g);
    CHECK(g.a() == f.node(static_cast<std::size_t>(off)));
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(g[k] == f[static_cast<std::size_t>(off) + k]);
    }
}

TEST_CASE("Func01 invariants are enforced") {
    CHECK_THROWS_AS(Func01::from_values(0.0, 0.1, {0.5}), invalid_input);
    CHECK_THROWS_AS(Func01::from_values(0.0, 0.1, {0.5, 1.2}), invalid_input);
    CHECK_THROWS_AS(Func01::from_values(0.0, -0.1, {0.5, 0.6}), invalid_input);
    CHECK_THROWS_AS(Func01::sample(0.0, 1.0, 0.3, [](double) { return 0.5; }), invalid_input);
}

} // TEST_SUITE
