#include "metabbo/workflow/trainer.hpp"

#include <fstream>
#include <limits>
#include <unordered_map>

#include "metabbo/agents/checkpoint.hpp"
#include "metabbo/util/errors.hpp"
#include "metabbo/util/text.hpp"

namespace metabbo {
namespace {

constexpr std::uint64_t kTrainEnvTag = 0x7124;
constexpr std::uint64_t kValidationEnvTag = 0x7125;
constexpr std::uint64_t kValidationRngTag = 0x7126;
constexpr int kValidationRollouts = 3;

// Rethrows agent/environment errors with the instance that caused them.
template <typename Fn>
auto with_instance_context(const std::string& key, Fn&& fn) {
    try {
        return fn();
    } catch (const ConfigError& e) {
        throw ConfigError("training on " + key + ": " + e.what());
    } catch (const DataError& e) {
        throw DataError("training on " + key + ": " + e.what());
    } catch (const StateError& e) {
        throw StateError("training on " + key + ": " + e.what());
    }
}

} // namespace

double validation_return(const Agent& agent, const Problem& instance, std::int64_t max_fes,
                         std::uint64_t seed, std::optional<double> reference) {
    const BackboneSpec spec{agent.backbone(), 50};
    double total = 0.0;
    for (int r = 0; r < kValidationRollouts; ++r) {
        MetaEnv env(spec, instance, max_fes,
                    derive_seed(seed, {kValidationEnvTag, static_cast<std::uint64_t>(r)}),
                    reference);
        Rng rollout_rng(derive_seed(seed, {kValidationRngTag, static_cast<std::uint64_t>(r)}));
        total += agent.rollout_episode(env, rollout_rng).episode_return;
    }
    return total / kValidationRollouts;
}

TrainResult trainer_train(Agent& agent, const std::vector<Problem>& train_problems,
                          std::int64_t max_steps, std::int64_t max_fes, std::uint64_t seed,
                          const std::filesystem::path& train_dir,
                          std::int64_t checkpoint_interval, std::optional<double> stop_at_return) {
    if (train_problems.empty()) throw ConfigError("training needs at least one instance");
    if (max_steps < 1) throw ConfigError("max learning steps must be >= 1");
    const std::int64_t interval =
        checkpoint_interval > 0 ? checkpoint_interval : std::max<std::int64_t>(1, max_steps / 20);

    const std::filesystem::path ckpt_dir = train_dir / "checkpoints";
    std::filesystem::create_directories(ckpt_dir);
    std::ofstream episodes(train_dir / "episodes.csv", std::ios::binary | std::ios::trunc);
    if (!episodes) throw DataError("cannot write " + (train_dir / "episodes.csv").string());
    episodes << "episode,instance,steps,return\n";

    // Best cost seen per instance; the reward reference on problems whose
    // optimum is unknown.
    std::unordered_map<std::string, double> best_known;
    const auto reference_for = [&](const Problem& p) -> std::optional<double> {
        if (p.f_star_known) return std::nullopt;
        const auto it = best_known.find(problem_key(p));
        if (it == best_known.end()) return std::nullopt;
        return it->second;
    };

    TrainResult result;
    const BackboneSpec spec{agent.backbone(), 50};
    std::int64_t emitted_multiples = 0;
    std::int64_t episode = 0;
    std::filesystem::path last_checkpoint;

    bool stop = false;
    const auto emit_checkpoint = [&](std::int64_t step_label) {
        const double val = validation_return(agent, train_problems.front(), max_fes, seed,
                                             reference_for(train_problems.front()));
        agent.history().emplace_back(step_label, val);
        last_checkpoint = ckpt_dir / ("step-" + std::to_string(step_label) + ".ckpt");
        save_checkpoint(agent, last_checkpoint);
        ++result.checkpoints;
        if (stop_at_return.has_value() && val >= *stop_at_return) stop = true;
    };

    while (!stop && agent.learning_steps() < max_steps) {
        const Problem& instance = train_problems[static_cast<std::size_t>(
            episode % static_cast<std::int64_t>(train_problems.size()))];
        const std::string key = problem_key(instance);
        const EpisodeStats stats = with_instance_context(key, [&] {
            MetaEnv env(spec, instance, max_fes,
                        derive_seed(seed, {kTrainEnvTag, static_cast<std::uint64_t>(episode)}),
                        reference_for(instance));
            const EpisodeStats s = agent.train_episode(env);
            auto [it, inserted] = best_known.try_emplace(key, env.best_raw());
            if (!inserted && env.best_raw() < it->second) it->second = env.best_raw();
            return s;
        });
        episodes << episode << ',' << key << ',' << stats.steps << ','
                 << fmt_g17(stats.episode_return) << '\n';
        ++episode;
        while (!stop && emitted_multiples < agent.learning_steps() / interval) {
            ++emitted_multiples;
            emit_checkpoint(emitted_multiples * interval);
        }
    }
    result.total_steps = agent.learning_steps();
    if (!stop && result.total_steps % interval != 0) emit_checkpoint(result.total_steps);

    std::ofstream returns(train_dir / "returns.csv", std::ios::binary | std::ios::trunc);
    if (!returns) throw DataError("cannot write " + (train_dir / "returns.csv").string());
    returns << "step,mean_return\n";
    for (const auto& [step, value] : agent.history()) {
        returns << step << ',' << fmt_g17(value) << '\n';
    }

    result.final_checkpoint = train_dir / "final.ckpt";
    save_checkpoint(agent, result.final_checkpoint);
    return result;
}

} // namespace metabbo
