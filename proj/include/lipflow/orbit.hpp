#pragma once

#include "lipflow/flows.hpp"
#include "lipflow/function_space.hpp"
#include "lipflow/hilbert.hpp"

namespace lipflow {

/// Finite realization of the time axis for orbit functions: the symmetric
/// window [-t_max, t_max] on a grid of spacing step (t_max must be a
/// multiple of step so translation checks at grid-aligned shifts incur no
/// interpolation), plus the truncation depth of the Hilbert coordinates.
struct OrbitConfig {
    double t_max = 2.0;
    double step = 0.01;
    int hilbert_depth = 6;
};

/// The orbit function of a state: component i at grid time t is coordinate
/// i of psi(evolve(t, x)). Output depth equals cfg.hilbert_depth (psi must
/// produce at least that many coordinates; extras are dropped).
SeqFunc orbit_embed(const FlowSystem& sys, const HilbertEmbedding& psi,
                    const State& x, const OrbitConfig& cfg);

/// sup over components and common grid times of
/// |orbit(evolve(r,x))(t) - orbit(x)(t+r)|.
double equivariance_defect(const FlowSystem& sys, const HilbertEmbedding& psi,
                           const State& x, double r, const OrbitConfig& cfg);

struct ContinuityDefect {
    double state_distance = 0.0;
    double image_distance = 0.0; // sup over components and window
};

/// Raw material for fitting a modulus of continuity of the orbit map.
ContinuityDefect continuity_defect(const FlowSystem& sys, const HilbertEmbedding& psi,
                                   const State& x, const State& y, const OrbitConfig& cfg);

} // namespace lipflow
