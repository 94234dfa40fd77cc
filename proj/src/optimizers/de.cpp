#include "metabbo/optimizers/de.hpp"

#include "metabbo/util/errors.hpp"

namespace metabbo {
namespace {

// Draws `count` indices from [0, n), mutually distinct and distinct from i.
void draw_donors(int n, int i, std::span<int> out, Rng& rng) {
    for (std::size_t k = 0; k < out.size(); ++k) {
        int v;
        bool fresh;
        do {
            v = rng.uniform_int(n);
            fresh = v != i;
            for (std::size_t m = 0; m < k && fresh; ++m) fresh = v != out[m];
        } while (!fresh);
        out[k] = v;
    }
}

} // namespace

void de_mutant_rand1(std::span<const double> r1, std::span<const double> r2,
                     std::span<const double> r3, double F, std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = r1[j] + F * (r2[j] - r3[j]);
}

void de_mutant_best1(std::span<const double> best, std::span<const double> r1,
                     std::span<const double> r2, double F, std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = best[j] + F * (r1[j] - r2[j]);
}

void de_mutant_current_to_best1(std::span<const double> xi, std::span<const double> best,
                                std::span<const double> r1, std::span<const double> r2, double F,
                                std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = xi[j] + F * (best[j] - xi[j]) + F * (r1[j] - r2[j]);
}

void de_crossover(std::span<const double> target, std::span<const double> mutant, double cr,
                  int j_rand, Rng& rng, std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j) {
        const bool take = rng.uniform01() < cr || static_cast<int>(j) == j_rand;
        out[j] = take ? mutant[j] : target[j];
    }
}

void de_step(Population& pop, Evaluator& ev, Rng& rng, DeStrategy strategy, double F, double cr) {
    const int n = pop.size();
    const int dim = pop.dim();
    if (n < 4) throw ConfigError("differential evolution needs a population of at least 4");

    const Problem& p = ev.problem();
    const int best = pop.best_index();
    Mat trials(n, dim);
    std::vector<double> mutant(static_cast<std::size_t>(dim));

    for (int i = 0; i < n; ++i) {
        int donors[3];
        switch (strategy) {
            case DeStrategy::rand1: {
                draw_donors(n, i, {donors, 3}, rng);
                de_mutant_rand1(pop.x.row(donors[0]), pop.x.row(donors[1]), pop.x.row(donors[2]), F,
                                mutant);
                break;
            }
            case DeStrategy::best1: {
                draw_donors(n, i, {donors, 2}, rng);
                de_mutant_best1(pop.x.row(best), pop.x.row(donors[0]), pop.x.row(donors[1]), F,
                                mutant);
                break;
            }
            case DeStrategy::current_to_best1: {
                draw_donors(n, i, {donors, 2}, rng);
                de_mutant_current_to_best1(pop.x.row(i), pop.x.row(best), pop.x.row(donors[0]),
                                           pop.x.row(donors[1]), F, mutant);
                break;
            }
        }
        const int j_rand = rng.uniform_int(dim);
        de_crossover(pop.x.row(i), mutant, cr, j_rand, rng, trials.row(i));
        if (p.enforce_bounds) {
            auto row = trials.row(i);
            for (int j = 0; j < dim; ++j)
                row[static_cast<std::size_t>(j)] = reflect_into(
                    row[static_cast<std::size_t>(j)], p.lower[static_cast<std::size_t>(j)],
                    p.upper[static_cast<std::size_t>(j)]);
        }
    }

    std::vector<double> t_raw(static_cast<std::size_t>(n)), t_cost(static_cast<std::size_t>(n));
    ev.eval(trials, t_raw, t_cost);
    for (int i = 0; i < n; ++i) {
        if (t_cost[static_cast<std::size_t>(i)] < pop.cost[static_cast<std::size_t>(i)]) {
            auto src = trials.row(i);
            auto dst = pop.x.row(i);
            for (int j = 0; j < dim; ++j) dst[static_cast<std::size_t>(j)] = src[static_cast<std::size_t>(j)];
            pop.cost[static_cast<std::size_t>(i)] = t_cost[static_cast<std::size_t>(i)];
            pop.raw[static_cast<std::size_t>(i)] = t_raw[static_cast<std::size_t>(i)];
        }
    }
}

} // namespace metabbo
