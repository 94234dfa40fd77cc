#include "metabbo/optimizers/pso.hpp"

#include <algorithm>

namespace metabbo {

PsoState init_pso(Population pop) {
    PsoState st;
    st.velocity = Mat(pop.size(), pop.dim());
    st.pbest_x = pop.x;
    st.pbest_cost = pop.cost;
    const int b = pop.best_index();
    const auto brow = pop.x.row(b);
    st.gbest_x.assign(brow.begin(), brow.end());
    st.gbest_cost = pop.cost[static_cast<std::size_t>(b)];
    st.gbest_raw = pop.raw[static_cast<std::size_t>(b)];
    st.pop = std::move(pop);
    return st;
}

void pso_step(PsoState& st, Evaluator& ev, Rng& rng, double w, double c1, double c2) {
    const int n = st.pop.size();
    const int dim = st.pop.dim();
    const Problem& p = ev.problem();

    for (int i = 0; i < n; ++i) {
        auto x = st.pop.x.row(i);
        auto v = st.velocity.row(i);
        auto pb = st.pbest_x.row(i);
        for (int j = 0; j < dim; ++j) {
            const double u1 = rng.uniform01();
            const double u2 = rng.uniform01();
            const double vmax = 0.2 * p.range(j);
            double vj = w * v[static_cast<std::size_t>(j)] +
                        c1 * u1 * (pb[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(j)]) +
                        c2 * u2 * (st.gbest_x[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(j)]);
            vj = std::clamp(vj, -vmax, vmax);
            v[static_cast<std::size_t>(j)] = vj;
            double xj = x[static_cast<std::size_t>(j)] + vj;
            if (p.enforce_bounds)
                xj = std::clamp(xj, p.lower[static_cast<std::size_t>(j)], p.upper[static_cast<std::size_t>(j)]);
            x[static_cast<std::size_t>(j)] = xj;
        }
    }

    std::vector<double> raw(static_cast<std::size_t>(n)), cost(static_cast<std::size_t>(n));
    ev.eval(st.pop.x, raw, cost);
    for (int i = 0; i < n; ++i) {
        st.pop.cost[static_cast<std::size_t>(i)] = cost[static_cast<std::size_t>(i)];
        st.pop.raw[static_cast<std::size_t>(i)] = raw[static_cast<std::size_t>(i)];
        if (cost[static_cast<std::size_t>(i)] < st.pbest_cost[static_cast<std::size_t>(i)]) {
            st.pbest_cost[static_cast<std::size_t>(i)] = cost[static_cast<std::size_t>(i)];
            auto x = st.pop.x.row(i);
            auto pb = st.pbest_x.row(i);
            std::copy(x.begin(), x.end(), pb.begin());
            if (cost[static_cast<std::size_t>(i)] < st.gbest_cost) {
                st.gbest_cost = cost[static_cast<std::size_t>(i)];
                st.gbest_raw = raw[static_cast<std::size_t>(i)];
                st.gbest_x.assign(x.begin(), x.end());
            }
        }
    }
}

} // namespace metabbo
