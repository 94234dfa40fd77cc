#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metabbo/optimizers/backbone.hpp"

namespace metabbo {

// Meta-level observation: nine features, each clamped to [0, 1].
//   0 budget progress            consumed / maxFEs
//   1 log-relative best cost     log1p(gap / initial gap) / log 2
//   2 last-step improvement      improvement / initial gap
//   3 stagnation                 non-improving steps / 50
//   4 population diversity       mean pairwise distance / (sqrt(dim) * mean range)
//   5 cost dispersion            (std/|mean|) squashed by x/(1+x)
//   6 improvement parity         generation index of the last improvement mod 2
//   7 rank stability             top-half index overlap with the previous generation
//   8 constant                   1
struct EnvState {
    std::array<double, 9> features{};
};

struct StepOutcome {
    EnvState state;
    double reward = 0.0;
    bool done = false;
    std::int64_t evals = 0;   // evaluations consumed by this step
    double best_raw = 0.0;    // running noiseless best
    std::int64_t generation = 0;
};

struct TraceRow {
    std::int64_t step = 0;
    std::int64_t consumed = 0;
    double best_raw = 0.0;
    double reward = 0.0;
    OptimizerAction action;
};

// One episode of the meta-MDP: a configurable backbone optimizer on one
// problem instance under an evaluation budget. Construction is the reset:
// it draws and evaluates the initial population (pop_size evaluations).
class MetaEnv {
public:
    // reference: prior best cost for unknown-optimum problems (docking);
    // ignored when the problem's f_star is known. Throws ConfigError when
    // max_fes cannot cover the initial population.
    MetaEnv(BackboneSpec spec, Problem problem, std::int64_t max_fes, std::uint64_t seed,
            std::optional<double> reference = std::nullopt);

    // Normalized positive improvement; the per-episode rewards telescope to
    // (f_initial - f_final) / (f_initial - f_reference) <= 1.
    static double reward_of(double prev_best, double new_best, double f_initial, double f_reference);

    // One meta-decision: clamp the action, advance the backbone a
    // generation, reward the improvement. Throws StateError once done.
    StepOutcome step(OptimizerAction action);

    const EnvState& state() const { return state_; }
    bool done() const;
    const Problem& problem() const { return problem_; }
    std::int64_t max_fes() const { return max_fes_; }
    std::int64_t consumed() const { return ev_.consumed(); }
    std::int64_t generation() const { return generation_; }
    double best_raw() const { return ev_.best_raw(); }
    double f_initial() const { return f_initial_; }
    double f_reference() const { return f_reference_; }
    double episode_return() const { return episode_return_; }
    const Backbone& backbone() const { return backbone_; }
    const std::vector<TraceRow>& trace() const { return trace_; }

    // "step,consumed_fes,best_cost,reward,<action fields>" CSV rows.
    std::string trace_csv() const;

private:
    static void check_budget(const BackboneSpec& spec, std::int64_t max_fes);
    void refresh_features(double improvement);

    Problem problem_;
    std::int64_t max_fes_;
    Evaluator ev_;
    Rng rng_;
    Backbone backbone_;
    EnvState state_;
    double f_initial_ = 0.0;
    double f_reference_ = 0.0;
    double prev_best_ = 0.0;
    std::int64_t generation_ = 0;
    std::int64_t stagnation_ = 0;
    std::int64_t last_improve_gen_ = 0;
    double episode_return_ = 0.0;
    std::vector<char> prev_top_half_;
    std::vector<TraceRow> trace_;
};

} // namespace metabbo
