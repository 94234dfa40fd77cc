#pragma once

#include "metabbo/optimizers/optimizer.hpp"

namespace metabbo {

// Donor combinations (pure, for tests and the step function alike).
void de_mutant_rand1(std::span<const double> r1, std::span<const double> r2,
                     std::span<const double> r3, double F, std::span<double> out);
void de_mutant_best1(std::span<const double> best, std::span<const double> r1,
                     std::span<const double> r2, double F, std::span<double> out);
void de_mutant_current_to_best1(std::span<const double> xi, std::span<const double> best,
                                std::span<const double> r1, std::span<const double> r2, double F,
                                std::span<double> out);

// Binomial crossover with one guaranteed mutant coordinate (j_rand).
void de_crossover(std::span<const double> target, std::span<const double> mutant, double cr,
                  int j_rand, Rng& rng, std::span<double> out);

// One generation of differential evolution: mutate, cross over, repair into
// bounds by reflection, evaluate the trial batch, then select greedily per
// index (the incumbent survives ties). Consumes pop_size evaluations.
//
// Randomness order per individual i: donor indices (rejection draws), j_rand,
// then one uniform per coordinate inside the crossover.
void de_step(Population& pop, Evaluator& ev, Rng& rng, DeStrategy strategy, double F, double cr);

} // namespace metabbo
