#include "metabbo/optimizers/random_search.hpp"

#include <limits>

#include "metabbo/util/errors.hpp"

namespace metabbo {

double random_search_step(Evaluator& ev, Rng& rng, int batch) {
    if (batch < 1) throw ConfigError("random search batch must be >= 1");
    const Problem& p = ev.problem();
    Mat pts(batch, p.dim);
    for (int i = 0; i < batch; ++i) {
        auto row = pts.row(i);
        for (int j = 0; j < p.dim; ++j)
            row[static_cast<std::size_t>(j)] =
                rng.uniform(p.lower[static_cast<std::size_t>(j)], p.upper[static_cast<std::size_t>(j)]);
    }
    std::vector<double> raw(static_cast<std::size_t>(batch)), cost(static_cast<std::size_t>(batch));
    ev.eval(pts, raw, cost);
    double best = std::numeric_limits<double>::infinity();
    for (double c : cost) best = std::min(best, c);
    return best;
}

} // namespace metabbo
