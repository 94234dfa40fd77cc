#pragma once

#include <string>

#include "metabbo/metrics/trace.hpp"
#include "metabbo/optimizers/optimizer.hpp"

namespace metabbo {

enum class ClassicAlgo { random_search, de, pso, cmaes };

std::string classic_algo_name(ClassicAlgo a);
ClassicAlgo classic_algo_from_name(const std::string& name);

// Outcome of one budgeted run (classic baseline or agent rollout alike).
struct RunResult {
    double best_raw = 0.0;
    std::int64_t consumed = 0;
    std::int64_t generations = 0;
    bool hit_accuracy = false;
    std::vector<double> trace; // best_raw on the 51-point FE grid
};

// Runs a classic optimizer with its fixed default configuration until the
// budget is exhausted or the accuracy target is hit (known-optimum suites).
// A generation is only started while consumed < max_fes, so the overshoot is
// bounded by one population. Fully deterministic in (problem, seed).
//
// Defaults: random-search batch 50; DE rand/1, F=0.5, CR=0.9, pop 50;
// PSO w=0.7298, c1=c2=1.49618, pop 50; CMA-ES lambda = 4 + floor(3 ln dim).
RunResult run_classic(ClassicAlgo algo, const Problem& p, std::int64_t max_fes, std::uint64_t seed);

} // namespace metabbo
