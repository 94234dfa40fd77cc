#pragma once

#include <optional>

#include "metabbo/optimizers/de.hpp"
#include "metabbo/optimizers/pso.hpp"

namespace metabbo {

// Result of one configured generation.
struct UpdateInfo {
    double best_raw = 0.0;       // running noiseless best after the step
    std::int64_t evals = 0;      // evaluations this step consumed
    bool improved = false;       // best_raw strictly decreased
};

// The meta-controllable low-level optimizer: a DE population or a PSO swarm
// advanced one generation at a time with per-step coefficients.
class Backbone {
public:
    // Initializes the population uniformly in bounds (consumes pop_size
    // evaluations through ev).
    Backbone(BackboneSpec spec, Evaluator& ev, Rng& rng);

    // Clamps the action into its admissible ranges, runs one generation, and
    // reports the outcome. The action's kind must match the backbone's.
    UpdateInfo update(OptimizerAction action, Evaluator& ev, Rng& rng);

    BackboneSpec spec() const { return spec_; }
    const Population& population() const;

private:
    BackboneSpec spec_;
    Population de_pop_;            // DE state
    std::optional<PsoState> pso_;  // PSO state
    double last_best_raw_;
};

} // namespace metabbo
