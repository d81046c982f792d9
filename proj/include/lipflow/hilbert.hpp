#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "lipflow/flows.hpp"

namespace lipflow {

/// A finite truncation of a point of the Hilbert cube [0,1]^N.
struct HilbertPoint {
    std::vector<double> coords;

    int depth() const { return static_cast<int>(coords.size()); }
    double operator[](int i) const { return coords[static_cast<std::size_t>(i)]; } // 0-based
};

/// Sup-norm distance between truncations of equal depth.
double sup_distance(const HilbertPoint& p, const HilbertPoint& q);

/// A topological embedding of the state space into the Hilbert cube,
/// together with the depth it produces and a Lipschitz modulus
/// (sup image distance <= modulus * state distance).
struct HilbertEmbedding {
    int depth = 0;
    double modulus = 1.0;
    std::function<HilbertPoint(std::span<const double>)> map;

    HilbertPoint operator()(std::span<const double> x) const { return map(x); }
};

/// Coordinate realization: box coordinates are rescaled affinely to [0,1];
/// torus coordinates map to (1/2 + sin(2 pi k x)/2, 1/2 + cos(2 pi k x)/2)
/// pairs so the embedding stays continuous across the wrap. When min_depth
/// exceeds the base coordinate count, boxes cycle through their coordinates
/// again and tori continue with higher harmonics k = 2, 3, ...
HilbertEmbedding coordinate_embedding(const Domain& domain, int min_depth = 0);

/// A finite sample of the domain backing the classical distance-based map.
struct DenseSet {
    std::vector<State> points;
    Domain domain;
    double diam = 1.0;

    static DenseSet random_in(const Domain& domain, int count, std::uint64_t seed);
};

/// Kuratowski-style realization: coordinate k is
/// min(1, distance(x, q_k) / diam).
HilbertEmbedding dense_embedding(DenseSet dense);

struct InjectivityReport {
    std::size_t pairs = 0;
    double resolution = 0.0;       // state-distance threshold r0
    double min_image_distance = 0.0; // s0 over pairs with state distance >= r0
    std::size_t violations = 0;    // pairs at distance >= r0 whose images collide within tol
    bool pass = true;
};

/// Certifies separation at resolution r0: every supplied pair of states at
/// distance >= r0 must have image sup-distance > tol.
InjectivityReport injectivity_check(const HilbertEmbedding& psi, const Domain& domain,
                                    std::span<const std::pair<State, State>> pairs,
                                    double r0, double tol);

} // namespace lipflow
