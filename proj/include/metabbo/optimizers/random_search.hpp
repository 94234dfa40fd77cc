#pragma once

#include "metabbo/optimizers/optimizer.hpp"

namespace metabbo {

// One batch of uniform samples inside the init bounds; consumes `batch`
// evaluations. Returns the batch's best observable cost.
double random_search_step(Evaluator& ev, Rng& rng, int batch);

} // namespace metabbo
