#include "metabbo/agents/pg.hpp"

#include <cmath>

#include "metabbo/util/errors.hpp"
#include "metabbo/util/text.hpp"

namespace metabbo {
namespace {

void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

} // namespace

std::vector<HeadSpec> policy_heads(BackboneKind backbone) {
    if (backbone == BackboneKind::de) {
        return {HeadSpec::categorical(3), HeadSpec::continuous(0.1, 1.0),
                HeadSpec::continuous(0.0, 1.0)};
    }
    return {HeadSpec::continuous(0.0, 1.0), HeadSpec::continuous(0.0, 3.0),
            HeadSpec::continuous(0.0, 3.0)};
}

OptimizerAction action_from_values(BackboneKind backbone, const std::vector<HeadSpec>& heads,
                                   std::span<const double> values) {
    if (backbone == BackboneKind::de) {
        const auto strategy = static_cast<DeStrategy>(static_cast<int>(values[0]));
        return OptimizerAction::de(strategy, PolicyNet::scale_value(heads[1], values[1]),
                                   PolicyNet::scale_value(heads[2], values[2]));
    }
    return OptimizerAction::pso(PolicyNet::scale_value(heads[0], values[0]),
                                PolicyNet::scale_value(heads[1], values[1]),
                                PolicyNet::scale_value(heads[2], values[2]));
}

PolicyGradientAgent::PolicyGradientAgent(BackboneKind backbone, PgConfig config, std::uint64_t seed)
    : backbone_(backbone),
      config_(config),
      net_(9, config.hidden, policy_heads(backbone), (rng_ = Rng(seed), rng_)) {}

OptimizerAction PolicyGradientAgent::act(const EnvState& state, Rng& rng, double epsilon) const {
    const PolicyNet::Forward fwd = net_.forward(state.features);
    const std::vector<double> values =
        epsilon > 0.0 ? net_.sample(fwd, rng) : net_.mean_values(fwd);
    return action_from_values(backbone_, net_.heads(), values);
}

EpisodeStats PolicyGradientAgent::train_episode(MetaEnv& env) {
    Episode ep;
    std::vector<double> rewards;
    EpisodeStats stats;
    while (!env.done()) {
        const EnvState state = env.state();
        const PolicyNet::Forward fwd = net_.forward(state.features);
        std::vector<double> values = net_.sample(fwd, rng_);
        const double lp = net_.log_prob(fwd, values);
        const StepOutcome out = env.step(action_from_values(backbone_, net_.heads(), values));
        ep.states.push_back(state.features);
        ep.values.push_back(std::move(values));
        ep.log_probs.push_back(lp);
        rewards.push_back(out.reward);
        ++learning_steps_;
        ++stats.steps;
        stats.episode_return += out.reward;
    }
    ep.returns.resize(rewards.size());
    double g = 0.0;
    for (std::size_t t = rewards.size(); t-- > 0;) {
        g = rewards[t] + config_.gamma * g;
        ep.returns[t] = g;
    }
    if (ep.returns.size() > 1) {
        double sum = 0.0;
        for (double r : ep.returns) sum += r;
        ep.baseline = sum / static_cast<double>(ep.returns.size());
    }
    if (!ep.returns.empty()) learn(ep);
    ++episodes_;
    stats.consumed = env.consumed();
    stats.best_raw = env.best_raw();
    return stats;
}

std::vector<std::pair<std::string, std::string>> PolicyGradientAgent::meta_fields() const {
    return {{"hidden", std::to_string(config_.hidden)},
            {"lr", fmt_g17(config_.lr)},
            {"gamma", fmt_g17(config_.gamma)},
            {"clip", fmt_g17(config_.clip)},
            {"epochs", std::to_string(config_.epochs)}};
}

void PolicyGradientAgent::apply_meta_field(const std::string& key, const std::string& value) {
    if (key == "hidden") {
        const int hidden = static_cast<int>(parse_int(value, "hidden"));
        if (hidden != config_.hidden) {
            config_.hidden = hidden;
            Rng scratch(0);
            net_ = PolicyNet(9, hidden, policy_heads(backbone_), scratch);
        }
    } else if (key == "lr") {
        config_.lr = parse_double(value, "lr");
    } else if (key == "gamma") {
        config_.gamma = parse_double(value, "gamma");
    } else if (key == "clip") {
        config_.clip = parse_double(value, "clip");
    } else if (key == "epochs") {
        config_.epochs = static_cast<int>(parse_int(value, "epochs"));
    } else {
        throw DataError("unknown policy-gradient checkpoint field: " + key);
    }
}

void ReinforceAgent::learn(const Episode& episode) {
    std::vector<double> grad(net_.params().size(), 0.0);
    for (std::size_t t = 0; t < episode.states.size(); ++t) {
        const double advantage = episode.returns[t] - episode.baseline;
        if (advantage == 0.0) continue;
        axpy(advantage, net_.grad_log_prob(episode.states[t], episode.values[t]), grad);
    }
    axpy(config_.lr, grad, net_.params());
}

void PpoAgent::learn(const Episode& episode) {
    for (int epoch = 0; epoch < config_.epochs; ++epoch) {
        std::vector<double> grad(net_.params().size(), 0.0);
        for (std::size_t t = 0; t < episode.states.size(); ++t) {
            const double advantage = episode.returns[t] - episode.baseline;
            if (advantage == 0.0) continue;
            const PolicyNet::Forward fwd = net_.forward(episode.states[t]);
            const double ratio =
                std::exp(net_.log_prob(fwd, episode.values[t]) - episode.log_probs[t]);
            // Inside the clipped region the surrogate follows the ratio;
            // once clipping binds on the losing side the gradient is zero.
            const bool clipped = (advantage >= 0.0 && ratio > 1.0 + config_.clip) ||
                                 (advantage <= 0.0 && ratio < 1.0 - config_.clip);
            if (clipped) continue;
            axpy(advantage * ratio, net_.grad_log_prob(episode.states[t], episode.values[t]), grad);
        }
        axpy(config_.lr, grad, net_.params());
    }
}

} // namespace metabbo
