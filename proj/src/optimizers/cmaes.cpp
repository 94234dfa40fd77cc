#include "metabbo/optimizers/cmaes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "metabbo/util/eig.hpp"

namespace metabbo {
namespace {

constexpr double kEigFloor = 1.0e-14;

void refresh_decomposition(CmaesState& st) {
    // Symmetrize drift before decomposing.
    for (int i = 0; i < st.dim; ++i)
        for (int j = i + 1; j < st.dim; ++j) {
            const double m = 0.5 * (st.cov.at(i, j) + st.cov.at(j, i));
            st.cov.at(i, j) = m;
            st.cov.at(j, i) = m;
        }
    std::vector<double> vals;
    jacobi_eigen_sym(st.cov, st.basis, vals);
    st.scale.assign(static_cast<std::size_t>(st.dim), 0.0);
    for (int i = 0; i < st.dim; ++i)
        st.scale[static_cast<std::size_t>(i)] = std::sqrt(std::max(vals[static_cast<std::size_t>(i)], kEigFloor));
}

} // namespace

CmaesState init_cmaes(const Problem& p, Rng& rng, int lambda) {
    CmaesState st;
    st.dim = p.dim;
    st.lambda = lambda > 0 ? lambda : 4 + static_cast<int>(std::floor(3.0 * std::log(static_cast<double>(p.dim))));
    if (st.lambda < 2) st.lambda = 2;
    st.mu = st.lambda / 2;
    if (st.mu < 1) st.mu = 1;

    st.weights.assign(static_cast<std::size_t>(st.mu), 0.0);
    double wsum = 0.0;
    for (int i = 0; i < st.mu; ++i) {
        st.weights[static_cast<std::size_t>(i)] =
            std::log(st.mu + 0.5) - std::log(static_cast<double>(i + 1));
        wsum += st.weights[static_cast<std::size_t>(i)];
    }
    double wsq = 0.0;
    for (double& w : st.weights) {
        w /= wsum;
        wsq += w * w;
    }
    st.mu_eff = 1.0 / wsq;

    const double n = st.dim;
    st.c_sigma = (st.mu_eff + 2.0) / (n + st.mu_eff + 5.0);
    st.d_sigma = 1.0 + 2.0 * std::max(0.0, std::sqrt((st.mu_eff - 1.0) / (n + 1.0)) - 1.0) + st.c_sigma;
    st.c_c = (4.0 + st.mu_eff / n) / (n + 4.0 + 2.0 * st.mu_eff / n);
    st.c_1 = 2.0 / ((n + 1.3) * (n + 1.3) + st.mu_eff);
    st.c_mu = std::min(1.0 - st.c_1,
                       2.0 * (st.mu_eff - 2.0 + 1.0 / st.mu_eff) / ((n + 2.0) * (n + 2.0) + st.mu_eff));
    st.chi_n = std::sqrt(n) * (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * n * n));

    st.mean.assign(static_cast<std::size_t>(st.dim), 0.0);
    for (int j = 0; j < st.dim; ++j)
        st.mean[static_cast<std::size_t>(j)] = rng.uniform(p.lower[static_cast<std::size_t>(j)], p.upper[static_cast<std::size_t>(j)]);
    st.sigma = 0.3 * p.range(0);
    st.cov = Mat::identity(st.dim);
    st.path_sigma.assign(static_cast<std::size_t>(st.dim), 0.0);
    st.path_c.assign(static_cast<std::size_t>(st.dim), 0.0);
    refresh_decomposition(st);
    return st;
}

void cmaes_step(CmaesState& st, Evaluator& ev, Rng& rng) {
    const Problem& p = ev.problem();
    const int d = st.dim;
    const int lam = st.lambda;

    // Sample x_k = m + sigma * B * (D .* n_k), clipped into bounds.
    st.offspring = Mat(lam, d);
    Mat unit(lam, d); // the n_k draws, kept for the sigma-path update
    for (int k = 0; k < lam; ++k) {
        for (int j = 0; j < d; ++j) unit.at(k, j) = rng.normal();
        for (int r = 0; r < d; ++r) {
            double s = 0.0;
            for (int c = 0; c < d; ++c)
                s += st.basis.at(r, c) * st.scale[static_cast<std::size_t>(c)] * unit.at(k, c);
            double xr = st.mean[static_cast<std::size_t>(r)] + st.sigma * s;
            if (p.enforce_bounds)
                xr = std::clamp(xr, p.lower[static_cast<std::size_t>(r)], p.upper[static_cast<std::size_t>(r)]);
            st.offspring.at(k, r) = xr;
        }
    }

    st.off_raw.assign(static_cast<std::size_t>(lam), 0.0);
    st.off_cost.assign(static_cast<std::size_t>(lam), 0.0);
    ev.eval(st.offspring, st.off_raw, st.off_cost);

    std::vector<int> order(static_cast<std::size_t>(lam));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return st.off_cost[static_cast<std::size_t>(a)] < st.off_cost[static_cast<std::size_t>(b)];
    });

    const std::vector<double> old_mean = st.mean;
    for (int r = 0; r < d; ++r) {
        double m = 0.0;
        for (int i = 0; i < st.mu; ++i)
            m += st.weights[static_cast<std::size_t>(i)] * st.offspring.at(order[static_cast<std::size_t>(i)], r);
        st.mean[static_cast<std::size_t>(r)] = m;
    }

    // Mean displacement in sampling coordinates: y = (m' - m) / sigma and
    // its whitened version C^-1/2 y = B D^-1 B^T y.
    std::vector<double> y(static_cast<std::size_t>(d)), tmp(static_cast<std::size_t>(d)), wy(static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r)
        y[static_cast<std::size_t>(r)] = (st.mean[static_cast<std::size_t>(r)] - old_mean[static_cast<std::size_t>(r)]) / st.sigma;
    for (int c = 0; c < d; ++c) {
        double s = 0.0;
        for (int r = 0; r < d; ++r) s += st.basis.at(r, c) * y[static_cast<std::size_t>(r)];
        tmp[static_cast<std::size_t>(c)] = s / st.scale[static_cast<std::size_t>(c)];
    }
    for (int r = 0; r < d; ++r) {
        double s = 0.0;
        for (int c = 0; c < d; ++c) s += st.basis.at(r, c) * tmp[static_cast<std::size_t>(c)];
        wy[static_cast<std::size_t>(r)] = s;
    }

    double ps_norm2 = 0.0;
    for (int r = 0; r < d; ++r) {
        st.path_sigma[static_cast<std::size_t>(r)] =
            (1.0 - st.c_sigma) * st.path_sigma[static_cast<std::size_t>(r)] +
            std::sqrt(st.c_sigma * (2.0 - st.c_sigma) * st.mu_eff) * wy[static_cast<std::size_t>(r)];
        ps_norm2 += st.path_sigma[static_cast<std::size_t>(r)] * st.path_sigma[static_cast<std::size_t>(r)];
    }
    const double gen1 = static_cast<double>(st.generation + 1);
    const bool hsig = ps_norm2 / (1.0 - std::pow(1.0 - st.c_sigma, 2.0 * gen1)) / d <
                      (1.4 + 2.0 / (d + 1.0)) * (1.4 + 2.0 / (d + 1.0)) * st.chi_n * st.chi_n / d;

    for (int r = 0; r < d; ++r)
        st.path_c[static_cast<std::size_t>(r)] =
            (1.0 - st.c_c) * st.path_c[static_cast<std::size_t>(r)] +
            (hsig ? std::sqrt(st.c_c * (2.0 - st.c_c) * st.mu_eff) * y[static_cast<std::size_t>(r)] : 0.0);

    const double c1a = st.c_1 * (1.0 - (hsig ? 0.0 : 1.0) * st.c_c * (2.0 - st.c_c));
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            double rank_mu = 0.0;
            for (int i = 0; i < st.mu; ++i) {
                const int k = order[static_cast<std::size_t>(i)];
                const double yr = (st.offspring.at(k, r) - old_mean[static_cast<std::size_t>(r)]) / st.sigma;
                const double yc = (st.offspring.at(k, c) - old_mean[static_cast<std::size_t>(c)]) / st.sigma;
                rank_mu += st.weights[static_cast<std::size_t>(i)] * yr * yc;
            }
            st.cov.at(r, c) = (1.0 - c1a - st.c_mu) * st.cov.at(r, c) +
                              st.c_1 * st.path_c[static_cast<std::size_t>(r)] * st.path_c[static_cast<std::size_t>(c)] +
                              st.c_mu * rank_mu;
        }
    }

    st.sigma *= std::exp(st.c_sigma / st.d_sigma * (std::sqrt(ps_norm2) / st.chi_n - 1.0));
    st.generation += 1;
    refresh_decomposition(st);
}

} // namespace metabbo
