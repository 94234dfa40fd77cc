#include "metabbo/optimizers/runner.hpp"

#include "metabbo/optimizers/cmaes.hpp"
#include "metabbo/optimizers/de.hpp"
#include "metabbo/optimizers/pso.hpp"
#include "metabbo/optimizers/random_search.hpp"
#include "metabbo/util/errors.hpp"

namespace metabbo {

std::string classic_algo_name(ClassicAlgo a) {
    switch (a) {
        case ClassicAlgo::random_search: return "random-search";
        case ClassicAlgo::de: return "de";
        case ClassicAlgo::pso: return "pso";
        case ClassicAlgo::cmaes: return "cmaes";
    }
    throw StateError("unhandled classic algorithm");
}

ClassicAlgo classic_algo_from_name(const std::string& name) {
    if (name == "random-search") return ClassicAlgo::random_search;
    if (name == "de") return ClassicAlgo::de;
    if (name == "pso") return ClassicAlgo::pso;
    if (name == "cmaes") return ClassicAlgo::cmaes;
    throw ConfigError("unknown baseline '" + name +
                      "' (expected random-search, de, pso or cmaes)");
}

RunResult run_classic(ClassicAlgo algo, const Problem& p, std::int64_t max_fes, std::uint64_t seed) {
    if (max_fes < 1) throw ConfigError("maxFEs must be >= 1");
    Evaluator ev(p, derive_seed(seed, {0x401EULL}));
    Rng rng(derive_seed(seed, {0x0B7ULL}));
    TraceGrid trace(max_fes);
    RunResult out;

    const int pop_size = 50;
    switch (algo) {
        case ClassicAlgo::random_search: {
            while (!ev.done(max_fes)) {
                random_search_step(ev, rng, pop_size);
                trace.observe(ev.consumed(), ev.best_raw());
                out.generations += 1;
            }
            break;
        }
        case ClassicAlgo::de: {
            if (max_fes < pop_size) throw ConfigError("maxFEs must cover the initial population");
            Population pop = init_population(p, pop_size, ev, rng);
            trace.observe(ev.consumed(), ev.best_raw());
            while (!ev.done(max_fes)) {
                de_step(pop, ev, rng, DeStrategy::rand1, 0.5, 0.9);
                trace.observe(ev.consumed(), ev.best_raw());
                out.generations += 1;
            }
            break;
        }
        case ClassicAlgo::pso: {
            if (max_fes < pop_size) throw ConfigError("maxFEs must cover the initial population");
            PsoState st = init_pso(init_population(p, pop_size, ev, rng));
            trace.observe(ev.consumed(), ev.best_raw());
            while (!ev.done(max_fes)) {
                pso_step(st, ev, rng, 0.7298, 1.49618, 1.49618);
                trace.observe(ev.consumed(), ev.best_raw());
                out.generations += 1;
            }
            break;
        }
        case ClassicAlgo::cmaes: {
            CmaesState st = init_cmaes(p, rng);
            while (!ev.done(max_fes)) {
                cmaes_step(st, ev, rng);
                trace.observe(ev.consumed(), ev.best_raw());
                out.generations += 1;
            }
            break;
        }
    }

    out.best_raw = ev.best_raw();
    out.consumed = ev.consumed();
    out.hit_accuracy = p.f_star_known && out.best_raw - p.f_star <= kTargetAccuracy;
    trace.finish(out.best_raw);
    out.trace = trace.values();
    return out;
}

} // namespace metabbo
