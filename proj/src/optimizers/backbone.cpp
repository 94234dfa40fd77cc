#include "metabbo/optimizers/backbone.hpp"

#include "metabbo/util/errors.hpp"

namespace metabbo {

Backbone::Backbone(BackboneSpec spec, Evaluator& ev, Rng& rng) : spec_(spec) {
    if (spec_.pop_size < 4) throw ConfigError("backbone population size must be >= 4");
    Population pop = init_population(ev.problem(), spec_.pop_size, ev, rng);
    if (spec_.kind == BackboneKind::pso)
        pso_ = init_pso(std::move(pop));
    else
        de_pop_ = std::move(pop);
    last_best_raw_ = ev.best_raw();
}

UpdateInfo Backbone::update(OptimizerAction action, Evaluator& ev, Rng& rng) {
    if (action.kind != spec_.kind)
        throw ConfigError("action kind does not match the backbone optimizer");
    const OptimizerAction a = clamp_action(action);
    const std::int64_t before = ev.consumed();
    if (spec_.kind == BackboneKind::de)
        de_step(de_pop_, ev, rng, a.strategy, a.F, a.CR);
    else
        pso_step(*pso_, ev, rng, a.w, a.c1, a.c2);

    UpdateInfo info;
    info.best_raw = ev.best_raw();
    info.evals = ev.consumed() - before;
    info.improved = info.best_raw < last_best_raw_;
    last_best_raw_ = info.best_raw;
    return info;
}

const Population& Backbone::population() const {
    return spec_.kind == BackboneKind::pso ? pso_->pop : de_pop_;
}

} // namespace metabbo
