#pragma once

#include "metabbo/optimizers/optimizer.hpp"

namespace metabbo {

struct PsoState {
    Population pop;
    Mat velocity;            // pop x dim
    Mat pbest_x;             // personal bests
    std::vector<double> pbest_cost;
    std::vector<double> gbest_x;
    double gbest_cost = 0.0;
    double gbest_raw = 0.0;
};

// Builds the swarm from an initialized population: zero velocities, personal
// bests at the starting positions.
PsoState init_pso(Population pop);

// One velocity-position update:
//   v <- w v + c1 u1 (pbest - x) + c2 u2 (gbest - x)
// with per-coordinate uniforms u1, u2 (drawn in that order), velocity
// clamped to +-0.2 of the coordinate range, positions clipped to bounds for
// bounded problems. Consumes pop_size evaluations; bests only improve
// (strictly better cost replaces).
void pso_step(PsoState& st, Evaluator& ev, Rng& rng, double w, double c1, double c2);

} // namespace metabbo
