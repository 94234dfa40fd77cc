#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "metabbo/metrics/timing.hpp"
#include "metabbo/testsuite/split.hpp"

namespace metabbo {

// Everything one experiment needs; the snapshot written to the output
// directory round-trips through config_to_text / config_from_text.
struct ExperimentConfig {
    Suite suite = Suite::synthetic;
    int dim = 10;
    Difficulty difficulty = Difficulty::easy;
    std::int64_t max_learning_steps = 50000; // M
    int test_runs = 51;                      // N
    std::int64_t max_fes = 20000;
    std::uint64_t seed = 1;
    std::string agent;                // "", "qlearning", "reinforce", "ppo"
    std::string backbone = "de";      // backbone driven by the agent
    std::vector<std::string> baselines{"random-search", "de", "pso", "cmaes"};
    std::string reference = "cmaes";  // Gap anchor algorithm
    TimingMode timing = TimingMode::virtual_clock;
    int threads = 0; // 0: leave the OpenMP default alone
    std::filesystem::path out;
};

// Algorithm id of the configured agent, e.g. "qlearning-de"; empty when no
// agent is configured.
std::string agent_algorithm_id(const ExperimentConfig& config);
// Baselines plus the agent id.
std::vector<std::string> config_roster(const ExperimentConfig& config);

// Sanity rules that do not need any work done first: positive sizes, known
// names, random-search present (it is the AEI baseline), reference in the
// roster. Throws ConfigError.
void validate_config(const ExperimentConfig& config);

std::string config_to_text(const ExperimentConfig& config);
ExperimentConfig config_from_text(const std::string& text);

} // namespace metabbo
