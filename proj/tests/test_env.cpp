#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>
#include <string>

#include "metabbo/env/meta_env.hpp"
#include "metabbo/optimizers/runner.hpp"
#include "metabbo/util/errors.hpp"

using namespace metabbo;

namespace {

const Problem kRastrigin6 = make_instance(Suite::synthetic, 3, 6, 21);

OptimizerAction random_de_action(Rng& rng) {
    const auto strategy = static_cast<DeStrategy>(rng.uniform_int(3));
    return OptimizerAction::de(strategy, rng.uniform(0.1, 1.0), rng.uniform01());
}

} // namespace

TEST_CASE("reward is the positive normalized improvement") {
    CHECK(MetaEnv::reward_of(10.0, 8.0, 20.0, 0.0) == 0.1);
    CHECK(MetaEnv::reward_of(10.0, 10.0, 20.0, 0.0) == 0.0);
    CHECK(MetaEnv::reward_of(8.0, 10.0, 20.0, 0.0) == 0.0);  // worsening is not punished
    CHECK(MetaEnv::reward_of(10.0, 8.0, 5.0, 5.0) == 0.0);   // zero denominator
    CHECK(MetaEnv::reward_of(10.0, 8.0, 5.0, 9.0) == 0.0);   // negative denominator
    CHECK(MetaEnv::reward_of(20.0, 0.0, 20.0, 0.0) == 1.0);  // solving in one step
}

TEST_CASE("construction is the reset and defines the initial observation") {
    MetaEnv env(BackboneSpec{}, kRastrigin6, 2000, 5);
    CHECK(env.consumed() == 50);
    CHECK(env.generation() == 0);
    CHECK_FALSE(env.done());
    CHECK(env.f_reference() == kRastrigin6.f_star);
    CHECK(env.f_initial() == env.best_raw());
    CHECK(env.episode_return() == 0.0);

    const auto& f = env.state().features;
    CHECK(f[0] == doctest::Approx(50.0 / 2000.0));
    CHECK(f[1] == doctest::Approx(1.0)); // gap equals the initial gap
    CHECK(f[2] == 0.0);
    CHECK(f[3] == 0.0);
    CHECK(f[6] == 0.0);
    CHECK(f[7] == 1.0); // rank stability against itself
    CHECK(f[8] == 1.0);
}

TEST_CASE("rewards telescope to the normalized total improvement") {
    MetaEnv env(BackboneSpec{}, kRastrigin6, 3000, 9);
    Rng rng(1);
    double total = 0.0;
    while (!env.done()) {
        const StepOutcome out = env.step(random_de_action(rng));
        CHECK(out.reward >= 0.0);
        CHECK(out.evals == 50);
        total += out.reward;
    }
    CHECK(env.episode_return() == doctest::Approx(total).epsilon(1e-15));
    const double expected =
        (env.f_initial() - env.best_raw()) / (env.f_initial() - env.f_reference());
    CHECK(total == doctest::Approx(expected).epsilon(1e-12));
    CHECK(total <= 1.0 + 1e-12);
    CHECK_THROWS_AS(env.step(random_de_action(rng)), StateError);
}

TEST_CASE("every feature stays inside the unit interval at every step") {
    for (BackboneKind kind : {BackboneKind::de, BackboneKind::pso}) {
        BackboneSpec spec;
        spec.kind = kind;
        MetaEnv env(spec, kRastrigin6, 2500, 13);
        Rng rng(2);
        while (!env.done()) {
            const OptimizerAction a = kind == BackboneKind::de
                                          ? random_de_action(rng)
                                          : OptimizerAction::pso(rng.uniform01(), rng.uniform(0.0, 3.0),
                                                                 rng.uniform(0.0, 3.0));
            const StepOutcome out = env.step(a);
            for (double f : out.state.features) {
                CHECK(f >= 0.0);
                CHECK(f <= 1.0);
            }
            CHECK(out.generation == env.generation());
        }
    }
}

TEST_CASE("a fixed-action DE episode reproduces the classic run exactly") {
    for (std::uint64_t seed : {1ULL, 7ULL, 123ULL}) {
        const std::int64_t max_fes = 4000;
        MetaEnv env(BackboneSpec{}, kRastrigin6, max_fes, seed);
        while (!env.done()) env.step(OptimizerAction::de(DeStrategy::rand1, 0.5, 0.9));

        const RunResult classic = run_classic(ClassicAlgo::de, kRastrigin6, max_fes, seed);
        CHECK(env.best_raw() == classic.best_raw);
        CHECK(env.consumed() == classic.consumed);
        CHECK(env.generation() == classic.generations);
    }
}

TEST_CASE("budget and action-kind misuse raise typed errors") {
    CHECK_THROWS_AS(MetaEnv(BackboneSpec{}, kRastrigin6, 49, 1), ConfigError);

    // A budget that only covers the reset yields an immediately-done episode.
    MetaEnv spent(BackboneSpec{}, kRastrigin6, 50, 1);
    CHECK(spent.done());
    CHECK_THROWS_AS(spent.step(OptimizerAction::de(DeStrategy::rand1, 0.5, 0.9)), StateError);

    MetaEnv env(BackboneSpec{}, kRastrigin6, 2000, 1);
    CHECK_THROWS_AS(env.step(OptimizerAction::pso(0.7, 1.5, 1.5)), ConfigError);
}

TEST_CASE("unknown-optimum problems anchor rewards to the reference") {
    const Problem dock = make_instance(Suite::protein_docking, 11, 12, 3);

    // Without a reference the denominator collapses and rewards stay zero.
    MetaEnv plain(BackboneSpec{}, dock, 500, 4);
    CHECK(plain.f_reference() == plain.f_initial());
    Rng rng(6);
    double total = 0.0;
    while (!plain.done()) total += plain.step(random_de_action(rng)).reward;
    CHECK(total == 0.0);

    // With a prior best below the initial value, improvements pay off.
    MetaEnv anchored(BackboneSpec{}, dock, 500, 4, plain.f_initial() - 10.0);
    CHECK(anchored.f_reference() == plain.f_initial() - 10.0);
    Rng rng2(6);
    double total2 = 0.0;
    while (!anchored.done()) total2 += anchored.step(random_de_action(rng2)).reward;
    CHECK(total2 > 0.0);

    // A reference above the initial best is useless and falls back.
    MetaEnv high(BackboneSpec{}, dock, 500, 4, plain.f_initial() + 10.0);
    CHECK(high.f_reference() == high.f_initial());
}

TEST_CASE("the episode trace captures one row per decision") {
    MetaEnv env(BackboneSpec{}, kRastrigin6, 1000, 8);
    int steps = 0;
    while (!env.done()) {
        env.step(OptimizerAction::de(DeStrategy::best1, 5.0, 0.9)); // F clamps to 2
        ++steps;
    }
    CHECK(env.trace().size() == static_cast<std::size_t>(steps));
    CHECK(env.trace().front().step == 1);
    CHECK(env.trace().back().consumed == env.consumed());
    CHECK(env.trace().front().action.F == 2.0); // stored post-clamp

    std::istringstream csv(env.trace_csv());
    std::string line;
    std::getline(csv, line);
    CHECK(line == "step,consumed_fes,best_cost,reward,strategy,f,cr,w,c1,c2");
    int rows = 0;
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == steps);
}
