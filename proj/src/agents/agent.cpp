#include "metabbo/agents/agent.hpp"

#include "metabbo/agents/pg.hpp"
#include "metabbo/agents/qlearning.hpp"
#include "metabbo/util/errors.hpp"

namespace metabbo {

EpisodeStats Agent::rollout_episode(MetaEnv& env, Rng& rng, double epsilon) const {
    EpisodeStats stats;
    while (!env.done()) {
        const StepOutcome out = env.step(act(env.state(), rng, epsilon));
        ++stats.steps;
        stats.episode_return += out.reward;
    }
    stats.consumed = env.consumed();
    stats.best_raw = env.best_raw();
    return stats;
}

std::unique_ptr<Agent> make_agent(const std::string& kind, BackboneKind backbone,
                                  std::uint64_t seed) {
    if (kind == "qlearning") return std::make_unique<QAgent>(backbone, QConfig{}, seed);
    if (kind == "reinforce") return std::make_unique<ReinforceAgent>(backbone, PgConfig{}, seed);
    if (kind == "ppo") return std::make_unique<PpoAgent>(backbone, PgConfig{}, seed);
    throw ConfigError("unknown agent kind: " + kind);
}

} // namespace metabbo
