#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "metabbo/optimizers/cmaes.hpp"
#include "metabbo/optimizers/de.hpp"
#include "metabbo/optimizers/pso.hpp"
#include "metabbo/optimizers/random_search.hpp"
#include "metabbo/optimizers/runner.hpp"
#include "metabbo/util/errors.hpp"

using namespace metabbo;

namespace {

const Problem kSphere10 = make_instance(Suite::synthetic, 1, 10, 3);
const Problem kRastrigin8 = make_instance(Suite::synthetic, 3, 8, 3);

} // namespace

TEST_CASE("donor combinations reproduce hand-computed values") {
    const std::vector<double> a{0.0}, b{1.0}, c{2.0}, d{3.0};
    std::vector<double> out(1);

    de_mutant_rand1(a, b, c, 0.5, out);
    CHECK(out[0] == -0.5); // 0 + 0.5 * (1 - 2)
    de_mutant_best1(b, c, a, 0.5, out);
    CHECK(out[0] == 2.0); // 1 + 0.5 * (2 - 0)
    de_mutant_current_to_best1(a, b, d, b, 0.5, out);
    CHECK(out[0] == 1.5); // 0 + 0.5 * (1 - 0) + 0.5 * (3 - 1)

    // Vector form, independent per coordinate.
    const std::vector<double> r1{1.0, -2.0}, r2{0.5, 4.0}, r3{-0.5, 1.0};
    std::vector<double> v(2);
    de_mutant_rand1(r1, r2, r3, 0.8, v);
    CHECK(v[0] == doctest::Approx(1.0 + 0.8 * 1.0));
    CHECK(v[1] == doctest::Approx(-2.0 + 0.8 * 3.0));
}

TEST_CASE("binomial crossover honors CR extremes and j_rand") {
    Rng rng(17);
    const std::vector<double> target{0.0, 0.0, 0.0, 0.0, 0.0};
    const std::vector<double> mutant{1.0, 1.0, 1.0, 1.0, 1.0};
    std::vector<double> out(5);

    // CR = 0: only the forced coordinate comes from the mutant.
    de_crossover(target, mutant, 0.0, 3, rng, out);
    CHECK(out == std::vector<double>{0.0, 0.0, 0.0, 1.0, 0.0});

    // CR = 1: every coordinate comes from the mutant.
    de_crossover(target, mutant, 1.0, 0, rng, out);
    CHECK(out == mutant);

    // Intermediate CR: j_rand always taken, trial is a coordinate-wise mix.
    int forced_taken = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int j_rand = rng.uniform_int(5);
        de_crossover(target, mutant, 0.4, j_rand, rng, out);
        if (out[static_cast<std::size_t>(j_rand)] == 1.0) ++forced_taken;
        for (double v : out) CHECK((v == 0.0 || v == 1.0));
    }
    CHECK(forced_taken == 200);
}

TEST_CASE("reflection repair folds points back into the box") {
    CHECK(reflect_into(6.0, 0.0, 5.0) == 4.0);
    CHECK(reflect_into(-1.0, 0.0, 5.0) == 1.0);
    CHECK(reflect_into(12.0, 0.0, 5.0) == 2.0); // two folds: 12 -> -2 -> 2
    CHECK(reflect_into(3.0, 0.0, 5.0) == 3.0);  // interior points untouched
    CHECK(reflect_into(1.0e9, 0.0, 5.0) >= 0.0);
    CHECK(reflect_into(1.0e9, 0.0, 5.0) <= 5.0);
    CHECK(reflect_into(2.0, 1.0, 1.0) == 1.0); // degenerate box
}

TEST_CASE("action clamping repairs out-of-range coefficients") {
    OptimizerAction a;
    a.F = 7.0;
    a.CR = -0.25;
    a.w = 1.5;
    a.c1 = -1.0;
    a.c2 = 4.0;
    const OptimizerAction r = clamp_action(a);
    CHECK(r.F == 2.0);
    CHECK(r.CR == 0.0);
    CHECK(r.w == 1.0);
    CHECK(r.c1 == 0.0);
    CHECK(r.c2 == 3.0);

    a.F = 0.0;
    CHECK(clamp_action(a).F == 1.0e-3);
    // In-range values pass through unchanged.
    const OptimizerAction def = clamp_action(OptimizerAction{});
    CHECK(def.F == 0.5);
    CHECK(def.CR == 0.9);
}

TEST_CASE("one DE generation never worsens any individual and consumes pop evals") {
    Evaluator ev(kRastrigin8, 11);
    Rng rng(7);
    Population pop = init_population(kRastrigin8, 50, ev, rng);
    CHECK(ev.consumed() == 50);

    for (DeStrategy s : {DeStrategy::rand1, DeStrategy::best1, DeStrategy::current_to_best1}) {
        const std::vector<double> before = pop.cost;
        const std::int64_t fes_before = ev.consumed();
        de_step(pop, ev, rng, s, 0.5, 0.9);
        CHECK(ev.consumed() == fes_before + 50);
        for (int i = 0; i < pop.size(); ++i) {
            CHECK(pop.cost[static_cast<std::size_t>(i)] <= before[static_cast<std::size_t>(i)]);
            for (int j = 0; j < pop.dim(); ++j) {
                CHECK(pop.x.at(i, j) >= kRastrigin8.lower[static_cast<std::size_t>(j)]);
                CHECK(pop.x.at(i, j) <= kRastrigin8.upper[static_cast<std::size_t>(j)]);
            }
        }
    }

    Population tiny;
    tiny.x = Mat(3, 8);
    tiny.cost.assign(3, 0.0);
    tiny.raw.assign(3, 0.0);
    CHECK_THROWS_AS(de_step(tiny, ev, rng, DeStrategy::rand1, 0.5, 0.9), ConfigError);
}

TEST_CASE("PSO bests only improve and the swarm respects bounds") {
    Evaluator ev(kRastrigin8, 23);
    Rng rng(9);
    PsoState st = init_pso(init_population(kRastrigin8, 50, ev, rng));
    CHECK(st.gbest_cost == st.pop.cost[static_cast<std::size_t>(st.pop.best_index())]);

    double prev_gbest = st.gbest_cost;
    std::vector<double> prev_pbest = st.pbest_cost;
    for (int gen = 0; gen < 30; ++gen) {
        const std::int64_t fes_before = ev.consumed();
        pso_step(st, ev, rng, 0.7298, 1.49618, 1.49618);
        CHECK(ev.consumed() == fes_before + 50);
        CHECK(st.gbest_cost <= prev_gbest);
        for (int i = 0; i < 50; ++i) {
            CHECK(st.pbest_cost[static_cast<std::size_t>(i)] <= prev_pbest[static_cast<std::size_t>(i)]);
            CHECK(st.gbest_cost <= st.pbest_cost[static_cast<std::size_t>(i)]);
            for (int j = 0; j < 8; ++j) {
                CHECK(st.pop.x.at(i, j) >= kRastrigin8.lower[static_cast<std::size_t>(j)]);
                CHECK(st.pop.x.at(i, j) <= kRastrigin8.upper[static_cast<std::size_t>(j)]);
                CHECK(std::fabs(st.velocity.at(i, j)) <= 0.2 * kRastrigin8.range(j));
            }
        }
        prev_gbest = st.gbest_cost;
        prev_pbest = st.pbest_cost;
    }
    // Thirty guided generations beat the random initialization decisively.
    CHECK(st.gbest_cost < st.pop.cost[0] + 1.0);
}

TEST_CASE("CMA-ES sizes itself from the dimension and contracts on the sphere") {
    Rng rng(13);
    CmaesState st = init_cmaes(kSphere10, rng);
    CHECK(st.lambda == 10); // 4 + floor(3 ln 10)
    CHECK(st.mu == 5);
    double wsum = 0.0;
    for (double w : st.weights) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-12));

    Rng rng5(13);
    CHECK(init_cmaes(make_instance(Suite::synthetic, 1, 5, 3), rng5).lambda == 8);

    Evaluator ev(kSphere10, 29);
    double first_best = 0.0;
    for (int gen = 0; gen < 120 && !ev.done(20000); ++gen) {
        cmaes_step(st, ev, rng);
        CHECK(ev.consumed() == static_cast<std::int64_t>(st.lambda) * (gen + 1));
        if (gen == 0) first_best = ev.best_raw();
    }
    CHECK(ev.best_raw() - kSphere10.f_star < 1e-3 * (first_best - kSphere10.f_star));
}

TEST_CASE("random search returns the batch best and consumes the batch") {
    Evaluator ev(kSphere10, 41);
    Rng rng(3);
    const double best = random_search_step(ev, rng, 50);
    CHECK(ev.consumed() == 50);
    CHECK(best == ev.best_raw()); // noiseless: observable == raw
    CHECK_THROWS_AS(random_search_step(ev, rng, 0), ConfigError);
}

TEST_CASE("budgeted runs are deterministic in the seed") {
    for (ClassicAlgo algo :
         {ClassicAlgo::random_search, ClassicAlgo::de, ClassicAlgo::pso, ClassicAlgo::cmaes}) {
        const RunResult a = run_classic(algo, kRastrigin8, 3000, 17);
        const RunResult b = run_classic(algo, kRastrigin8, 3000, 17);
        CHECK(a.best_raw == b.best_raw);
        CHECK(a.consumed == b.consumed);
        CHECK(a.generations == b.generations);
        CHECK(a.trace == b.trace);
        CHECK(a.trace.size() == 51);

        const RunResult c = run_classic(algo, kRastrigin8, 3000, 18);
        CHECK(c.best_raw != a.best_raw);
    }
}

TEST_CASE("budget overshoot is bounded by one population") {
    // 777 is not a multiple of any batch size in play.
    for (ClassicAlgo algo :
         {ClassicAlgo::random_search, ClassicAlgo::de, ClassicAlgo::pso, ClassicAlgo::cmaes}) {
        const RunResult r = run_classic(algo, kRastrigin8, 777, 5);
        CHECK(r.consumed >= 777);
        CHECK(r.consumed <= 777 + 50);
    }
    CHECK_THROWS_AS(run_classic(ClassicAlgo::de, kRastrigin8, 0, 5), ConfigError);
}

TEST_CASE("consumed evaluations follow the per-algorithm generation arithmetic") {
    const RunResult rs = run_classic(ClassicAlgo::random_search, kRastrigin8, 1000, 2);
    CHECK(rs.consumed == 50 * rs.generations); // no initialization batch

    const RunResult de = run_classic(ClassicAlgo::de, kRastrigin8, 1000, 2);
    CHECK(de.consumed == 50 * (de.generations + 1));

    const RunResult pso = run_classic(ClassicAlgo::pso, kRastrigin8, 1000, 2);
    CHECK(pso.consumed == 50 * (pso.generations + 1));

    const RunResult cma = run_classic(ClassicAlgo::cmaes, kRastrigin8, 1000, 2);
    CHECK(cma.consumed == 10 * cma.generations); // lambda(8) = 10, no init batch
}

TEST_CASE("DE solves the noiseless sphere to target accuracy") {
    const RunResult r = run_classic(ClassicAlgo::de, kSphere10, 20000, 1);
    CHECK(r.hit_accuracy);
    CHECK(r.best_raw - kSphere10.f_star <= 1e-8);
    CHECK(r.consumed < 20000);
    // The trace is monotone non-increasing and ends at the final best.
    for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
    CHECK(r.trace.back() == r.best_raw);
}

TEST_CASE("algorithm names round-trip and reject unknowns") {
    for (ClassicAlgo algo :
         {ClassicAlgo::random_search, ClassicAlgo::de, ClassicAlgo::pso, ClassicAlgo::cmaes})
        CHECK(classic_algo_from_name(classic_algo_name(algo)) == algo);
    CHECK_THROWS_AS(classic_algo_from_name("newton"), ConfigError);
    CHECK(de_strategy_name(DeStrategy::current_to_best1) == "current-to-best/1");
    CHECK(backbone_from_name("pso") == BackboneKind::pso);
    CHECK_THROWS_AS(backbone_from_name("es"), ConfigError);
}
