#include <doctest.h>

#include <cmath>

#include "lipflow/errors.hpp"
#include "lipflow/hilbert.hpp"
#include "lipflow/rng.hpp"

using namespace lipflow;

TEST_SUITE("hilbert") {

TEST_CASE("box embedding: affine rescaling") {
    const Domain box = Domain::box({0.0}, {2.0});
    const HilbertEmbedding psi = coordinate_embedding(box);
    CHECK(psi(State{1.0}).coords[0] == 0.5);
    CHECK(psi(State{0.0}).coords[0] == 0.0);
    CHECK(psi(State{2.0}).coords[0] == 1.0);
    CHECK_THROWS_AS(psi(State{2.5}), invalid_input);
}

TEST_CASE("circle embedding: trig pair at x = 1/4") {
    const HilbertEmbedding psi = coordinate_embedding(Domain::torus(1));
    const HilbertPoint p = psi(State{0.25});
    CHECK(p.coords[0] == doctest::Approx(1.0).epsilon(1e-12)); // 1/2 + sin(pi/2)/2
    CHECK(p.coords[1] == doctest::Approx(0.5).epsilon(1e-12)); // 1/2 + cos(pi/2)/2
}

TEST_CASE("circle embedding: continuity across the wrap seam") {
    const HilbertEmbedding psi = coordinate_embedding(Domain::torus(1));
    const HilbertPoint at_zero = psi(State{0.0});
    const HilbertPoint near_one = psi(State{1.0 - 1e-9});
    CHECK(sup_distance(at_zero, near_one) <= 3.1415926535897931 * 1e-9 + 1e-15);
}

TEST_CASE("padding: torus harmonics and box coordinate cycling") {
    const HilbertEmbedding circle6 = coordinate_embedding(Domain::torus(1), 6);
    CHECK(circle6.depth == 6);
    CHECK(circle6.modulus == doctest::Approx(3.0 * 3.141592653589793).epsilon(1e-12));
    const double x = 0.1375;
    const HilbertPoint p = circle6(State{x});
    CHECK(p.coords[2] == doctest::Approx(0.5 + 0.5 * std::sin(2.0 * 6.283185307179586 * x)));
    CHECK(p.coords[5] == doctest::Approx(0.5 + 0.5 * std::cos(3.0 * 6.283185307179586 * x)));

    const HilbertEmbedding box3 = coordinate_embedding(Domain::box({0.0, -1.0}, {1.0, 1.0}), 3);
    const HilbertPoint q = box3(State{0.3, 0.5});
    CHECK(q.depth() == 3);
    CHECK(q.coords[2] == q.coords[0]);
}

TEST_CASE("dense embedding: anchor distances") {
    DenseSet dense;
    dense.domain = Domain::torus(1);
    dense.diam = dense.domain.diameter();
    dense.points = {State{0.1}, State{0.6}};
    const HilbertEmbedding psi = dense_embedding(dense);
    const HilbertPoint p = psi(State{0.1});
    CHECK(p.coords[0] == 0.0); // x equals the first anchor
    CHECK(p.coords[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dense embedding: randomized separation oracle") {
    const Domain domain = Domain::torus(1);
    const HilbertEmbedding psi = dense_embedding(DenseSet::random_in(domain, 16, 77));
    Rng rng(78);
    for (int trial = 0; trial < 300; ++trial) {
        const State x{rng.unit()};
        const State y{rng.unit()};
        if (domain.distance(x, y) < 0.05) {
            continue;
        }
        CHECK(sup_distance(psi(x), psi(y)) > 1e-6);
    }
}

TEST_CASE("embedding coordinates stay in [0,1]") {
    Rng rng(79);
    const HilbertEmbedding trig = coordinate_embedding(Domain::torus(2), 8);
    const HilbertEmbedding dense = dense_embedding(DenseSet::random_in(Domain::torus(2), 8, 5));
    for (int trial = 0; trial < 200; ++trial) {
        const State x{rng.unit(), rng.unit()};
        for (const HilbertEmbedding* psi : {&trig, &dense}) {
            for (double c : (*psi)(x).coords) {
                CHECK(c >= 0.0);
                CHECK(c <= 1.0);
            }
        }
    }
}

TEST_CASE("modulus bound on random pairs") {
    Rng rng(80);
    const Domain domain = Domain::torus(1);
    const HilbertEmbedding psi = coordinate_embedding(domain, 6);
    for (int trial = 0; trial < 300; ++trial) {
        const State x{rng.unit()};
        const State y{rng.unit()};
        CHECK(sup_distance(psi(x), psi(y)) <= psi.modulus * domain.distance(x, y) + 1e-12);
    }
}

TEST_CASE("injectivity_check: identical points and affine separation") {
    const Domain box = Domain::box({0.0}, {2.0});
    const HilbertEmbedding psi = coordinate_embedding(box);
    CHECK(sup_distance(psi(State{0.7}), psi(State{0.7})) == 0.0);

    std::vector<std::pair<State, State>> pairs{{State{0.2}, State{0.9}}};
    const InjectivityReport rep = injectivity_check(psi, box, pairs, 0.01, 1e-6);
    CHECK(rep.pass);
    // affine map: image distance is state distance / box width
    CHECK(rep.min_image_distance == doctest::Approx(0.7 / 2.0).epsilon(1e-12));
}

TEST_CASE("injectivity_check: 1000 random torus pairs at resolution 0.01") {
    const Domain domain = Domain::torus(1);
    const HilbertEmbedding psi = coordinate_embedding(domain, 2);
    Rng rng(81);
    std::vector<std::pair<State, State>> pairs;
    while (pairs.size() < 1000) {
        State x{rng.unit()};
        State y{rng.unit()};
        if (domain.distance(x, y) >= 0.01) {
            pairs.emplace_back(std::move(x), std::move(y));
        }
    }
    const InjectivityReport rep = injectivity_check(psi, domain, pairs, 0.01, 1e-6);
    CHECK(rep.pass);
    CHECK(rep.violations == 0);
    CHECK(rep.min_image_distance > 1e-6);
}

} // TEST_SUITE
