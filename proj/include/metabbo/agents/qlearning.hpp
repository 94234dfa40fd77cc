#pragma once

#include "metabbo/agents/agent.hpp"

namespace metabbo {

struct QConfig {
    double alpha = 0.1;     // learning rate
    double gamma = 0.99;    // discount
    double epsilon = 0.2;   // training exploration
};

// The 18-point action grid the tabular agent chooses from. DE: strategy x
// F in {0.3, 0.5, 0.9} x CR in {0.3, 0.9}, strategy-major. PSO: w in
// {0.4, 0.7298, 0.9} x c1 in {1.0, 1.49618, 2.0} x c2 in {1.0, 2.0}.
std::vector<OptimizerAction> tabular_action_grid(BackboneKind backbone);

// Discretizes each of the nine features into three bins at 1/3 and 2/3;
// base-3 digits, feature 0 least significant.
int tabular_state_index(const EnvState& state);

// Tabular epsilon-greedy Q-learning over the discretized observation space.
class QAgent final : public Agent {
public:
    static constexpr int kStates = 19683; // 3^9
    QAgent(BackboneKind backbone, QConfig config, std::uint64_t seed);

    std::string kind() const override { return "qlearning"; }
    BackboneKind backbone() const override { return backbone_; }
    EpisodeStats train_episode(MetaEnv& env) override;
    OptimizerAction act(const EnvState& state, Rng& rng, double epsilon) const override;

    // One Bellman backup; public so the update rule is testable on its own.
    void q_update(int state, int action, double reward, int next_state, bool done);
    double q_value(int state, int action) const;
    int num_actions() const { return static_cast<int>(actions_.size()); }
    const std::vector<OptimizerAction>& actions() const { return actions_; }
    // Greedy action index, lowest index on ties.
    int greedy_action(int state) const;

    QConfig& config() { return config_; }
    const QConfig& config() const { return config_; }

    std::vector<std::pair<std::string, std::string>> meta_fields() const override;
    void apply_meta_field(const std::string& key, const std::string& value) override;
    const std::vector<double>& flat_params() const override { return q_; }
    std::vector<double>& flat_params() override { return q_; }

private:
    int pick_action(const EnvState& state, Rng& rng, double epsilon) const;

    BackboneKind backbone_;
    QConfig config_;
    std::vector<OptimizerAction> actions_;
    std::vector<double> q_; // kStates x num_actions, row-major
};

} // namespace metabbo
