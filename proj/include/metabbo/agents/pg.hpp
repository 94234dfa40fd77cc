#pragma once

#include "metabbo/agents/agent.hpp"
#include "metabbo/agents/policy_net.hpp"

namespace metabbo {

struct PgConfig {
    int hidden = 16;
    double lr = 1e-3;
    double gamma = 0.99;
    double clip = 0.2; // PPO ratio clip
    int epochs = 3;    // PPO passes per episode
};

// Policy heads used to drive a backbone. DE: categorical strategy plus
// continuous F and CR; PSO: continuous w, c1, c2.
std::vector<HeadSpec> policy_heads(BackboneKind backbone);
OptimizerAction action_from_values(BackboneKind backbone, const std::vector<HeadSpec>& heads,
                                   std::span<const double> values);

// Shared machinery of the on-policy episodic learners: episode collection,
// discounted returns-to-go, mean-return baseline (zero for single-step
// episodes, where the mean would cancel the only term).
class PolicyGradientAgent : public Agent {
public:
    PolicyGradientAgent(BackboneKind backbone, PgConfig config, std::uint64_t seed);

    BackboneKind backbone() const override { return backbone_; }
    EpisodeStats train_episode(MetaEnv& env) override;
    OptimizerAction act(const EnvState& state, Rng& rng, double epsilon) const override;

    PolicyNet& net() { return net_; }
    const PolicyNet& net() const { return net_; }
    const PgConfig& config() const { return config_; }

    std::vector<std::pair<std::string, std::string>> meta_fields() const override;
    void apply_meta_field(const std::string& key, const std::string& value) override;
    const std::vector<double>& flat_params() const override { return net_.params(); }
    std::vector<double>& flat_params() override { return net_.params(); }

protected:
    struct Episode {
        std::vector<std::array<double, 9>> states;
        std::vector<std::vector<double>> values; // sampled head values
        std::vector<double> log_probs;           // at collection time
        std::vector<double> returns;             // discounted, to-go
        double baseline = 0.0;
    };
    // One gradient-ascent update from a finished episode.
    virtual void learn(const Episode& episode) = 0;

    BackboneKind backbone_;
    PgConfig config_;
    PolicyNet net_;
};

// Monte-Carlo policy gradient: theta += lr * sum_t (G_t - b) grad log pi.
class ReinforceAgent final : public PolicyGradientAgent {
public:
    using PolicyGradientAgent::PolicyGradientAgent;
    std::string kind() const override { return "reinforce"; }

protected:
    void learn(const Episode& episode) override;
};

// Clipped-surrogate PPO, config().epochs re-weighting passes per episode.
class PpoAgent final : public PolicyGradientAgent {
public:
    using PolicyGradientAgent::PolicyGradientAgent;
    std::string kind() const override { return "ppo"; }

protected:
    void learn(const Episode& episode) override;
};

} // namespace metabbo
