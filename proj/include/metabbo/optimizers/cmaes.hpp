#pragma once

#include "metabbo/optimizers/optimizer.hpp"

namespace metabbo {

// Standard (mu/mu_w, lambda) covariance matrix adaptation. Offspring are
// clipped into bounds (bounded problems) before evaluation and the clipped
// points feed the updates. Covariance eigenvalues are floored at 1e-14.
struct CmaesState {
    int dim = 0;
    int lambda = 0;
    int mu = 0;
    std::vector<double> weights; // mu recombination weights, sum 1
    double mu_eff = 0.0;
    double c_sigma = 0.0, d_sigma = 0.0, c_c = 0.0, c_1 = 0.0, c_mu = 0.0;
    double chi_n = 0.0;

    std::vector<double> mean;
    double sigma = 0.0;
    Mat cov;                 // covariance C
    Mat basis;               // eigenvectors B (columns)
    std::vector<double> scale; // sqrt eigenvalues D
    std::vector<double> path_sigma, path_c;
    std::int64_t generation = 0;

    // Last evaluated generation (for inspection/features).
    Mat offspring;
    std::vector<double> off_cost, off_raw;
};

// lambda defaults to 4 + floor(3 ln dim); sigma0 to 0.3 of the coordinate-0
// range; the initial mean is uniform inside the bounds. Consumes no
// evaluations until the first step.
CmaesState init_cmaes(const Problem& p, Rng& rng, int lambda = 0);

// One generation: sample lambda offspring, evaluate, recombine the mu best
// by observable cost, update paths, covariance and step size. Consumes
// lambda evaluations.
void cmaes_step(CmaesState& st, Evaluator& ev, Rng& rng);

} // namespace metabbo
