#include "metabbo/workflow/tester.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>

#include "metabbo/env/meta_env.hpp"
#include "metabbo/util/errors.hpp"

namespace metabbo {
namespace {

constexpr std::uint64_t kTestEnvTag = 0x7E57;
constexpr std::uint64_t kTestRolloutTag = 0x7E58;

struct RunOutcome {
    double best_raw = 0.0;
    std::int64_t consumed = 0;
    std::int64_t generations = 0;
    std::vector<std::pair<std::int64_t, double>> trace;
    double wall_seconds = 0.0;
};

RunOutcome run_one(const AlgorithmRef& alg, std::size_t alg_index, const Problem& p,
                   std::size_t problem_index, int run, std::int64_t max_fes, std::uint64_t seed) {
    const std::uint64_t env_seed =
        derive_seed(seed, {kTestEnvTag, static_cast<std::uint64_t>(problem_index),
                           static_cast<std::uint64_t>(run)});
    RunOutcome out;
    const auto start = std::chrono::steady_clock::now();
    if (alg.classic.has_value()) {
        const RunResult r = run_classic(*alg.classic, p, max_fes, env_seed);
        out.best_raw = r.best_raw;
        out.consumed = r.consumed;
        out.generations = r.generations;
        TraceGrid grid(max_fes);
        out.trace.reserve(r.trace.size());
        for (std::size_t k = 0; k < r.trace.size(); ++k) {
            out.trace.emplace_back(grid.grid()[k], r.trace[k]);
        }
    } else {
        MetaEnv env(BackboneSpec{alg.agent->backbone(), 50}, p, max_fes, env_seed);
        Rng rollout_rng(derive_seed(seed, {kTestRolloutTag, static_cast<std::uint64_t>(alg_index),
                                           static_cast<std::uint64_t>(problem_index),
                                           static_cast<std::uint64_t>(run)}));
        alg.agent->rollout_episode(env, rollout_rng);
        out.best_raw = env.best_raw();
        out.consumed = env.consumed();
        out.generations = env.generation();
        TraceGrid grid(max_fes);
        grid.observe(env.backbone().population().size(), env.f_initial());
        for (const TraceRow& row : env.trace()) grid.observe(row.consumed, row.best_raw);
        grid.finish(env.best_raw());
        for (std::size_t k = 0; k < grid.values().size(); ++k) {
            out.trace.emplace_back(grid.grid()[k], grid.values()[k]);
        }
    }
    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

// Pure-evaluation seconds per function evaluation: the virtual constant, or
// a once-per-problem measured rate over max_fes evaluations of the centroid.
double eval_rate(const Problem& p, std::int64_t max_fes, TimingMode timing) {
    if (timing == TimingMode::virtual_clock) return kVirtualEvalSeconds;
    std::vector<double> x(static_cast<std::size_t>(p.dim));
    for (int j = 0; j < p.dim; ++j) {
        x[static_cast<std::size_t>(j)] =
            0.5 * (p.lower[static_cast<std::size_t>(j)] + p.upper[static_cast<std::size_t>(j)]);
    }
    volatile double sink = 0.0;
    const auto start = std::chrono::steady_clock::now();
    for (std::int64_t i = 0; i < max_fes; ++i) sink = sink + evaluate_raw(p, x);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return elapsed / static_cast<double>(max_fes);
}

} // namespace

std::vector<AlgorithmRef> resolve_roster(const std::vector<std::string>& ids,
                                         const std::string& agent_id, const Agent* agent) {
    std::vector<AlgorithmRef> roster;
    for (const std::string& id : ids) {
        AlgorithmRef ref;
        ref.id = id;
        if (id == "random-search" || id == "de" || id == "pso" || id == "cmaes") {
            ref.classic = classic_algo_from_name(id);
        } else if (!agent_id.empty() && id == agent_id) {
            if (agent == nullptr) {
                throw ConfigError("no trained agent available for roster entry " + id);
            }
            ref.agent = agent;
        } else {
            throw ConfigError("unresolvable roster entry: " + id);
        }
        roster.push_back(ref);
    }
    return roster;
}

std::vector<RunRecord> tester_test(const std::vector<AlgorithmRef>& roster,
                                   const std::vector<Problem>& test_problems, int n_runs,
                                   std::int64_t max_fes, std::uint64_t seed, TimingMode timing) {
    if (roster.empty()) throw ConfigError("empty algorithm roster");
    if (test_problems.empty()) throw ConfigError("empty test problem set");
    if (n_runs < 1) throw ConfigError("test runs must be >= 1");

    // Pure evaluation time is amortized once per problem, outside the
    // parallel region so wall-clock rates are measured without contention.
    std::vector<double> rates(test_problems.size());
    for (std::size_t k = 0; k < test_problems.size(); ++k) {
        rates[k] = eval_rate(test_problems[k], max_fes, timing);
    }

    const std::size_t total = roster.size() * test_problems.size() * static_cast<std::size_t>(n_runs);
    std::vector<RunRecord> records(total);
    std::vector<double> best_raw(total, 0.0);
    std::vector<std::exception_ptr> failures(total);

#pragma omp parallel for schedule(dynamic)
    for (std::size_t flat = 0; flat < total; ++flat) {
        const std::size_t a = flat / (test_problems.size() * static_cast<std::size_t>(n_runs));
        const std::size_t rem = flat % (test_problems.size() * static_cast<std::size_t>(n_runs));
        const std::size_t k = rem / static_cast<std::size_t>(n_runs);
        const int run = static_cast<int>(rem % static_cast<std::size_t>(n_runs)) + 1;
        try {
            const AlgorithmRef& alg = roster[a];
            const Problem& p = test_problems[k];
            const RunOutcome out = run_one(alg, a, p, k, run, max_fes, seed);
            RunRecord rec;
            rec.algorithm = alg.id;
            rec.problem = problem_key(p);
            rec.run = run;
            rec.v_fes_raw = out.consumed;
            rec.t1_s = static_cast<double>(out.consumed) * rates[k];
            if (timing == TimingMode::virtual_clock) {
                rec.t2_s = rec.t1_s + static_cast<double>(out.generations) *
                                          virtual_step_seconds(alg.id) * virtual_run_jitter(run);
            } else {
                rec.t2_s = std::max(out.wall_seconds, rec.t1_s);
            }
            rec.trace = out.trace;
            best_raw[flat] = out.best_raw;
            records[flat] = std::move(rec);
        } catch (...) {
            failures[flat] = std::current_exception();
        }
    }
    for (const std::exception_ptr& e : failures) {
        if (e) std::rethrow_exception(e);
    }

    // Objective gaps need a per-problem reference: the known optimum, or the
    // best cost observed across every algorithm and run.
    for (std::size_t k = 0; k < test_problems.size(); ++k) {
        const Problem& p = test_problems[k];
        double ref;
        if (p.f_star_known) {
            ref = p.f_star;
        } else {
            ref = std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < roster.size(); ++a) {
                for (int run = 1; run <= n_runs; ++run) {
                    const std::size_t flat =
                        (a * test_problems.size() + k) * static_cast<std::size_t>(n_runs) +
                        static_cast<std::size_t>(run - 1);
                    ref = std::min(ref, best_raw[flat]);
                }
            }
        }
        for (std::size_t a = 0; a < roster.size(); ++a) {
            for (int run = 1; run <= n_runs; ++run) {
                const std::size_t flat =
                    (a * test_problems.size() + k) * static_cast<std::size_t>(n_runs) +
                    static_cast<std::size_t>(run - 1);
                records[flat].v_obj_raw = (best_raw[flat] - ref) + 1e-12;
            }
        }
    }
    return records;
}

} // namespace metabbo
