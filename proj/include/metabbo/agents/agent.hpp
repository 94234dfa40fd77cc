#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "metabbo/env/meta_env.hpp"

namespace metabbo {

struct EpisodeStats {
    double episode_return = 0.0;
    std::int64_t steps = 0;
    std::int64_t consumed = 0;
    double best_raw = 0.0;
};

// A learnable controller for the meta-environment. One learning step is one
// environment step taken during training.
class Agent {
public:
    virtual ~Agent() = default;

    virtual std::string kind() const = 0;
    virtual BackboneKind backbone() const = 0;

    // Exploratory policy + parameter updates over one full episode.
    virtual EpisodeStats train_episode(MetaEnv& env) = 0;

    // Policy without updates. epsilon > 0 re-enables exploration: for value
    // agents the probability of a uniform action, for policy-gradient agents
    // sampling from the distribution instead of taking its mean.
    virtual OptimizerAction act(const EnvState& state, Rng& rng, double epsilon) const = 0;
    EpisodeStats rollout_episode(MetaEnv& env, Rng& rng, double epsilon = 0.0) const;

    std::int64_t learning_steps() const { return learning_steps_; }
    std::int64_t episodes() const { return episodes_; }

    Rng& rng() { return rng_; }
    const Rng& rng() const { return rng_; }

    // (learning step, mean validation return) pairs recorded by the trainer;
    // saved with the agent so training can resume with its history intact.
    std::vector<std::pair<std::int64_t, double>>& history() { return history_; }
    const std::vector<std::pair<std::int64_t, double>>& history() const { return history_; }

    // Checkpoint hooks: scalar settings as key-value pairs plus one flat
    // parameter vector.
    virtual std::vector<std::pair<std::string, std::string>> meta_fields() const = 0;
    virtual void apply_meta_field(const std::string& key, const std::string& value) = 0;
    virtual const std::vector<double>& flat_params() const = 0;
    virtual std::vector<double>& flat_params() = 0;

protected:
    std::int64_t learning_steps_ = 0;
    std::int64_t episodes_ = 0;
    Rng rng_{0};
    std::vector<std::pair<std::int64_t, double>> history_;

    friend void checkpoint_restore_counters(Agent&, std::int64_t, std::int64_t);
};

// "qlearning", "reinforce", or "ppo" on the given backbone. Throws
// ConfigError for unknown kinds.
std::unique_ptr<Agent> make_agent(const std::string& kind, BackboneKind backbone, std::uint64_t seed);

} // namespace metabbo
