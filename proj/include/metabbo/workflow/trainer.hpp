#pragma once

#include <filesystem>
#include <optional>

#include "metabbo/agents/agent.hpp"

namespace metabbo {

struct TrainResult {
    std::filesystem::path final_checkpoint;
    std::int64_t total_steps = 0;
    std::int64_t checkpoints = 0;
};

// Mean return of three exploration-free rollouts on one instance, with
// fixed derived seeds so successive calls measure the same batch.
double validation_return(const Agent& agent, const Problem& instance, std::int64_t max_fes,
                         std::uint64_t seed, std::optional<double> reference = std::nullopt);

// Round-robin training over the instances in order until the agent's
// learning-step counter reaches max_steps. A checkpoint (with the running
// validation history inside) lands at every multiple of the interval plus a
// final one, so there are ceil(total / interval) in all; interval 0 means
// max(1, max_steps / 20). Writes train_dir/episodes.csv, returns.csv,
// checkpoints/step-<k>.ckpt, and final.ckpt. stop_at_return ends training
// early once a checkpoint's validation return reaches it (fine-tuning runs
// chasing a known peak).
TrainResult trainer_train(Agent& agent, const std::vector<Problem>& train_problems,
                          std::int64_t max_steps, std::int64_t max_fes, std::uint64_t seed,
                          const std::filesystem::path& train_dir,
                          std::int64_t checkpoint_interval = 0,
                          std::optional<double> stop_at_return = std::nullopt);

} // namespace metabbo
