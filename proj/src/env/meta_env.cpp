#include "metabbo/env/meta_env.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "metabbo/util/errors.hpp"
#include "metabbo/util/text.hpp"

namespace metabbo {
namespace {

// Same derivation tags as the classic runner: one environment seed yields the
// same noise stream and initial population whether an agent or a classic loop
// drives the optimizer, keeping cross-algorithm comparisons paired.
constexpr std::uint64_t kEnvNoiseTag = 0x401E;
constexpr std::uint64_t kEnvRngTag = 0x0B7;
constexpr std::int64_t kStagnationWindow = 50;

double clamp01(double x) {
    if (!(x > 0.0)) return 0.0;
    return x < 1.0 ? x : 1.0;
}

// Indices of the better half of the population; cost ties resolved by index
// so the set is deterministic.
std::vector<char> top_half_mask(const Population& pop) {
    std::vector<int> order(static_cast<std::size_t>(pop.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return pop.cost[static_cast<std::size_t>(a)] <
                                                pop.cost[static_cast<std::size_t>(b)]; });
    std::vector<char> mask(static_cast<std::size_t>(pop.size()), 0);
    const int half = pop.size() / 2;
    for (int k = 0; k < half; ++k) mask[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = 1;
    return mask;
}

} // namespace

MetaEnv::MetaEnv(BackboneSpec spec, Problem problem, std::int64_t max_fes, std::uint64_t seed,
                 std::optional<double> reference)
    : problem_(std::move(problem)),
      max_fes_(max_fes),
      ev_(problem_, derive_seed(seed, {kEnvNoiseTag})),
      rng_(derive_seed(seed, {kEnvRngTag})),
      backbone_((check_budget(spec, max_fes), spec), ev_, rng_) {
    f_initial_ = ev_.best_raw();
    if (problem_.f_star_known) {
        f_reference_ = problem_.f_star;
    } else if (reference.has_value() && *reference < f_initial_) {
        f_reference_ = *reference;
    } else {
        f_reference_ = f_initial_;
    }
    prev_best_ = f_initial_;
    prev_top_half_ = top_half_mask(backbone_.population());
    refresh_features(0.0);
    state_.features[7] = 1.0; // by definition at reset
}

void MetaEnv::check_budget(const BackboneSpec& spec, std::int64_t max_fes) {
    if (max_fes < spec.pop_size) {
        throw ConfigError("evaluation budget " + std::to_string(max_fes) +
                          " cannot cover the initial population of " + std::to_string(spec.pop_size));
    }
}

double MetaEnv::reward_of(double prev_best, double new_best, double f_initial, double f_reference) {
    const double denom = f_initial - f_reference;
    if (!(denom > 0.0)) return 0.0;
    const double r = (prev_best - new_best) / denom;
    return r > 0.0 ? r : 0.0;
}

StepOutcome MetaEnv::step(OptimizerAction action) {
    if (done()) throw StateError("step called on a finished episode");
    ++generation_;
    const UpdateInfo info = backbone_.update(action, ev_, rng_);
    const double new_best = ev_.best_raw();
    const double reward = reward_of(prev_best_, new_best, f_initial_, f_reference_);
    if (info.improved) {
        stagnation_ = 0;
        last_improve_gen_ = generation_;
    } else {
        ++stagnation_;
    }
    const double improvement = prev_best_ - new_best;
    prev_best_ = new_best;
    episode_return_ += reward;
    refresh_features(improvement);

    trace_.push_back({generation_, ev_.consumed(), new_best, reward, clamp_action(action)});

    StepOutcome out;
    out.state = state_;
    out.reward = reward;
    out.done = done();
    out.evals = info.evals;
    out.best_raw = new_best;
    out.generation = generation_;
    return out;
}

bool MetaEnv::done() const { return ev_.done(max_fes_); }

void MetaEnv::refresh_features(double improvement) {
    const Population& pop = backbone_.population();
    const double denom = f_initial_ - f_reference_;
    auto& f = state_.features;

    f[0] = clamp01(static_cast<double>(ev_.consumed()) / static_cast<double>(max_fes_));

    if (denom > 0.0) {
        const double rel = (ev_.best_raw() - f_reference_) / denom;
        f[1] = clamp01(std::log1p(std::max(0.0, rel)) / std::log(2.0));
        f[2] = clamp01(improvement / denom);
    } else {
        f[1] = 0.0;
        f[2] = 0.0;
    }

    f[3] = clamp01(static_cast<double>(stagnation_) / static_cast<double>(kStagnationWindow));

    // Mean pairwise distance, normalized by the diagonal of a box with the
    // mean coordinate range.
    double mean_range = 0.0;
    for (int j = 0; j < problem_.dim; ++j) mean_range += problem_.range(j);
    mean_range /= static_cast<double>(problem_.dim);
    double dist_sum = 0.0;
    for (int i = 0; i < pop.size(); ++i) {
        for (int k = i + 1; k < pop.size(); ++k) {
            double d2 = 0.0;
            for (int j = 0; j < pop.dim(); ++j) {
                const double d = pop.x.at(i, j) - pop.x.at(k, j);
                d2 += d * d;
            }
            dist_sum += std::sqrt(d2);
        }
    }
    const double pairs = 0.5 * static_cast<double>(pop.size()) * static_cast<double>(pop.size() - 1);
    const double diag = std::sqrt(static_cast<double>(problem_.dim)) * mean_range;
    f[4] = diag > 0.0 ? clamp01(dist_sum / pairs / diag) : 0.0;

    double mean = 0.0;
    for (double c : pop.cost) mean += c;
    mean /= static_cast<double>(pop.size());
    double var = 0.0;
    for (double c : pop.cost) var += (c - mean) * (c - mean);
    const double sd = std::sqrt(var / static_cast<double>(pop.size()));
    double dispersion;
    if (std::abs(mean) > 0.0) {
        const double cv = sd / std::abs(mean);
        dispersion = cv / (1.0 + cv);
    } else {
        dispersion = sd > 0.0 ? 1.0 : 0.0;
    }
    f[5] = clamp01(dispersion);

    f[6] = static_cast<double>(last_improve_gen_ % 2);

    std::vector<char> cur = top_half_mask(pop);
    int overlap = 0;
    for (std::size_t i = 0; i < cur.size(); ++i) overlap += (cur[i] && prev_top_half_[i]) ? 1 : 0;
    f[7] = clamp01(static_cast<double>(overlap) / static_cast<double>(pop.size() / 2));
    prev_top_half_ = std::move(cur);

    f[8] = 1.0;
}

std::string MetaEnv::trace_csv() const {
    std::ostringstream os;
    os << "step,consumed_fes,best_cost,reward,strategy,f,cr,w,c1,c2\n";
    for (const TraceRow& row : trace_) {
        const OptimizerAction& a = row.action;
        os << row.step << ',' << row.consumed << ',' << fmt_g17(row.best_raw) << ','
           << fmt_g17(row.reward) << ',';
        if (a.kind == BackboneKind::de) {
            os << de_strategy_name(a.strategy) << ',' << fmt_g17(a.F) << ',' << fmt_g17(a.CR)
               << ",,,";
        } else {
            os << ",,," << fmt_g17(a.w) << ',' << fmt_g17(a.c1) << ',' << fmt_g17(a.c2);
        }
        os << '\n';
    }
    return os.str();
}

} // namespace metabbo
