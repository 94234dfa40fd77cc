#pragma once

#include <optional>

#include "metabbo/agents/agent.hpp"
#include "metabbo/metrics/records.hpp"
#include "metabbo/metrics/timing.hpp"
#include "metabbo/optimizers/runner.hpp"

namespace metabbo {

// One roster entry: a classic optimizer or a trained agent rollout.
struct AlgorithmRef {
    std::string id;
    std::optional<ClassicAlgo> classic;
    const Agent* agent = nullptr; // not owned; must outlive the test
};

// Resolves "random-search" / "de" / "pso" / "cmaes" to classics and the
// given agent id to the agent; anything else is a ConfigError.
std::vector<AlgorithmRef> resolve_roster(const std::vector<std::string>& ids,
                                         const std::string& agent_id, const Agent* agent);

// One rollout per (algorithm, problem, run), parallelized over the triples.
// The environment seed depends only on (problem, run), so every algorithm
// sees the same instance noise and initial sampling sequence — paired runs.
// Objective values are gap-to-reference (+1e-12): the known optimum, or the
// best cost any run found on that problem when the optimum is unknown.
std::vector<RunRecord> tester_test(const std::vector<AlgorithmRef>& roster,
                                   const std::vector<Problem>& test_problems, int n_runs,
                                   std::int64_t max_fes, std::uint64_t seed, TimingMode timing);

} // namespace metabbo
