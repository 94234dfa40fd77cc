#include "metabbo/optimizers/optimizer.hpp"

#include <algorithm>

#include "metabbo/util/errors.hpp"

namespace metabbo {

std::string de_strategy_name(DeStrategy s) {
    switch (s) {
        case DeStrategy::rand1: return "rand/1";
        case DeStrategy::best1: return "best/1";
        case DeStrategy::current_to_best1: return "current-to-best/1";
    }
    throw StateError("unhandled DE strategy");
}

std::string backbone_name(BackboneKind kind) {
    return kind == BackboneKind::de ? "de" : "pso";
}

BackboneKind backbone_from_name(const std::string& name) {
    if (name == "de") return BackboneKind::de;
    if (name == "pso") return BackboneKind::pso;
    throw ConfigError("unknown backbone: " + name);
}

OptimizerAction clamp_action(OptimizerAction a) {
    a.F = std::clamp(a.F, 1.0e-3, 2.0);
    a.CR = std::clamp(a.CR, 0.0, 1.0);
    a.w = std::clamp(a.w, 0.0, 1.0);
    a.c1 = std::clamp(a.c1, 0.0, 3.0);
    a.c2 = std::clamp(a.c2, 0.0, 3.0);
    return a;
}

Population init_population(const Problem& p, int pop_size, Evaluator& ev, Rng& rng) {
    if (pop_size < 1) throw ConfigError("population size must be >= 1");
    Population pop;
    pop.x = Mat(pop_size, p.dim);
    for (int i = 0; i < pop_size; ++i) {
        auto row = pop.x.row(i);
        for (int j = 0; j < p.dim; ++j)
            row[static_cast<std::size_t>(j)] =
                rng.uniform(p.lower[static_cast<std::size_t>(j)], p.upper[static_cast<std::size_t>(j)]);
    }
    pop.raw.assign(static_cast<std::size_t>(pop_size), 0.0);
    pop.cost.assign(static_cast<std::size_t>(pop_size), 0.0);
    ev.eval(pop.x, pop.raw, pop.cost);
    return pop;
}

double reflect_into(double v, double lo, double hi) {
    if (lo >= hi) return lo;
    for (int guard = 0; guard < 8 && (v < lo || v > hi); ++guard) {
        if (v < lo) v = lo + (lo - v);
        if (v > hi) v = hi - (v - hi);
    }
    return std::clamp(v, lo, hi);
}

} // namespace metabbo
