#include "metabbo/agents/qlearning.hpp"

#include <algorithm>
#include <cmath>

#include "metabbo/util/errors.hpp"
#include "metabbo/util/text.hpp"

namespace metabbo {

std::vector<OptimizerAction> tabular_action_grid(BackboneKind backbone) {
    std::vector<OptimizerAction> grid;
    grid.reserve(18);
    if (backbone == BackboneKind::de) {
        const DeStrategy strategies[] = {DeStrategy::rand1, DeStrategy::best1,
                                         DeStrategy::current_to_best1};
        const double fs[] = {0.3, 0.5, 0.9};
        const double crs[] = {0.3, 0.9};
        for (DeStrategy s : strategies) {
            for (double f : fs) {
                for (double cr : crs) {
                    OptimizerAction a = OptimizerAction::de(s, f, cr);
                    grid.push_back(a);
                }
            }
        }
    } else {
        const double ws[] = {0.4, 0.7298, 0.9};
        const double c1s[] = {1.0, 1.49618, 2.0};
        const double c2s[] = {1.0, 2.0};
        for (double w : ws) {
            for (double c1 : c1s) {
                for (double c2 : c2s) {
                    grid.push_back(OptimizerAction::pso(w, c1, c2));
                }
            }
        }
    }
    return grid;
}

int tabular_state_index(const EnvState& state) {
    int index = 0;
    int scale = 1;
    for (double v : state.features) {
        const double x = std::clamp(v, 0.0, 1.0);
        const int bin = x < 1.0 / 3.0 ? 0 : (x < 2.0 / 3.0 ? 1 : 2);
        index += bin * scale;
        scale *= 3;
    }
    return index;
}

QAgent::QAgent(BackboneKind backbone, QConfig config, std::uint64_t seed)
    : backbone_(backbone), config_(config), actions_(tabular_action_grid(backbone)) {
    rng_ = Rng(seed);
    q_.assign(static_cast<std::size_t>(kStates) * actions_.size(), 0.0);
}

void QAgent::q_update(int state, int action, double reward, int next_state, bool done) {
    const std::size_t na = actions_.size();
    double target = reward;
    if (!done) {
        double best = q_[static_cast<std::size_t>(next_state) * na];
        for (std::size_t a = 1; a < na; ++a) {
            best = std::max(best, q_[static_cast<std::size_t>(next_state) * na + a]);
        }
        target += config_.gamma * best;
    }
    double& cell = q_[static_cast<std::size_t>(state) * na + static_cast<std::size_t>(action)];
    cell += config_.alpha * (target - cell);
}

double QAgent::q_value(int state, int action) const {
    return q_[static_cast<std::size_t>(state) * actions_.size() + static_cast<std::size_t>(action)];
}

int QAgent::greedy_action(int state) const {
    const std::size_t na = actions_.size();
    int best = 0;
    for (std::size_t a = 1; a < na; ++a) {
        if (q_[static_cast<std::size_t>(state) * na + a] >
            q_[static_cast<std::size_t>(state) * na + static_cast<std::size_t>(best)]) {
            best = static_cast<int>(a);
        }
    }
    return best;
}

int QAgent::pick_action(const EnvState& state, Rng& rng, double epsilon) const {
    if (epsilon > 0.0 && rng.uniform01() < epsilon) {
        return rng.uniform_int(static_cast<int>(actions_.size()));
    }
    return greedy_action(tabular_state_index(state));
}

OptimizerAction QAgent::act(const EnvState& state, Rng& rng, double epsilon) const {
    return actions_[static_cast<std::size_t>(pick_action(state, rng, epsilon))];
}

EpisodeStats QAgent::train_episode(MetaEnv& env) {
    EpisodeStats stats;
    while (!env.done()) {
        const EnvState state = env.state();
        const int s = tabular_state_index(state);
        const int a = pick_action(state, rng_, config_.epsilon);
        const StepOutcome out = env.step(actions_[static_cast<std::size_t>(a)]);
        q_update(s, a, out.reward, tabular_state_index(out.state), out.done);
        ++learning_steps_;
        ++stats.steps;
        stats.episode_return += out.reward;
    }
    ++episodes_;
    stats.consumed = env.consumed();
    stats.best_raw = env.best_raw();
    return stats;
}

std::vector<std::pair<std::string, std::string>> QAgent::meta_fields() const {
    return {{"alpha", fmt_g17(config_.alpha)},
            {"gamma", fmt_g17(config_.gamma)},
            {"epsilon", fmt_g17(config_.epsilon)}};
}

void QAgent::apply_meta_field(const std::string& key, const std::string& value) {
    if (key == "alpha") {
        config_.alpha = parse_double(value, "alpha");
    } else if (key == "gamma") {
        config_.gamma = parse_double(value, "gamma");
    } else if (key == "epsilon") {
        config_.epsilon = parse_double(value, "epsilon");
    } else {
        throw DataError("unknown q-learning checkpoint field: " + key);
    }
}

} // namespace metabbo
