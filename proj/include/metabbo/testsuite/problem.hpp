#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "metabbo/testsuite/docking.hpp"
#include "metabbo/testsuite/functions.hpp"
#include "metabbo/util/mat.hpp"
#include "metabbo/util/rng.hpp"

namespace metabbo {

enum class Suite { synthetic, noisy_synthetic, protein_docking };

std::string suite_name(Suite s);
Suite suite_from_name(const std::string& name);

// Resolved noise parameters. Dimension-dependent pieces are folded in when
// the instance is built so apply_noise needs no extra context.
struct NoiseModel {
    NoiseKind kind = NoiseKind::none;
    double beta = 0.0;  // gaussian exponent scale / uniform power
    double alpha = 0.0; // uniform magnitude exponent / cauchy magnitude
    double p = 0.0;     // cauchy spike frequency
};

// An immutable optimization problem instance. Synthetic suites evaluate
// g(R(x - shift)) + f_star; docking decodes the 12-dim pose vector into the
// pairwise interaction energy.
struct Problem {
    Suite suite = Suite::synthetic;
    int function_no = 0; // registry number (docking: instance number 1..280)
    int dim = 0;
    std::uint64_t seed = 0;

    std::string name;
    double f_star = 0.0;
    bool f_star_known = true;

    std::vector<double> lower, upper; // per-coordinate initialization bounds
    bool enforce_bounds = true;       // false for docking (bounds seed the init only)

    std::vector<double> shift;
    Mat rotation;
    BaseFn base = BaseFn::sphere;
    NoiseModel noise;
    std::shared_ptr<const GallagherPeaks> peaks;
    std::shared_ptr<const DockingInstance> docking;

    std::int64_t default_max_fes = 20000;

    double range(int coord) const { return upper[static_cast<std::size_t>(coord)] - lower[static_cast<std::size_t>(coord)]; }
};

// "suite/function-no/dim/seed", e.g. "synthetic/3/10/42".
std::string problem_key(const Problem& p);
Problem problem_from_key(const std::string& key);

// Builds a deterministic instance; identical arguments yield an identical
// Problem (same shift, rotation, noise parameters, atoms).
Problem make_instance(Suite suite, int function_no, int dim, std::uint64_t seed);

// Noiseless objective value (the quantity metrics and termination use).
double evaluate_raw(const Problem& p, std::span<const double> x);

// Noise model applied to the f_star-relative part of a raw value. A raw
// value within 1e-8 of f_star passes through unchanged, so the optimum is a
// fixed point of every model.
double apply_noise(const NoiseModel& m, double raw_value, double f_star, Rng& rng);

// Observable objective value: raw for noiseless suites, noise-perturbed for
// the noisy suite. Consumes rng draws only when the instance is noisy.
double evaluate(const Problem& p, std::span<const double> x, Rng& rng);

} // namespace metabbo
