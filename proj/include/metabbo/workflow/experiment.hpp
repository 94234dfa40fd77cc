#pragma once

#include <memory>

#include "metabbo/agents/agent.hpp"
#include "metabbo/metrics/records.hpp"
#include "metabbo/workflow/config.hpp"

namespace metabbo {

struct ExperimentLedger {
    ExperimentConfig config;
    std::vector<RunRecord> records;
    std::filesystem::path final_checkpoint; // empty when no agent is configured
    std::int64_t training_steps = 0;
};

// How far run_experiment goes before returning.
enum class Phase { train, test, log };

// Seed handed to the tester; exposed so transfer studies can replay the
// exact test conditions of a finished experiment.
std::uint64_t experiment_tester_seed(const ExperimentConfig& config);

// Train -> Test -> Log, all derived from the master seed, into the layout
//   <out>/config.snapshot
//   <out>/train/{episodes.csv, returns.csv, checkpoints/, final.ckpt, DONE}
//   <out>/test/{records.csv, traces.csv, DONE}
//   <out>/reports/{aei.csv, perf_table.md, walltime.csv, cost_curves.csv, DONE}
// Completed phases (DONE marker) are skipped on rerun, so an interrupted
// experiment resumes from the last finished phase; a failure leaves an ERROR
// marker with the message. Rerunning an output directory whose snapshot
// differs from the given config is refused.
ExperimentLedger run_experiment(const ExperimentConfig& config, Phase until = Phase::log);

} // namespace metabbo
