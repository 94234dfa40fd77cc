#pragma once

#include <span>
#include <string>
#include <vector>

#include "metabbo/util/mat.hpp"

namespace metabbo {

// Base objective g(z) evaluated in shifted/rotated coordinates, g(0) = 0 and
// min g = 0 for every base. Definitions follow the familiar textbook forms of
// the BBOB family (the oscillation/asymmetry transform stack is deliberately
// not reproduced; tests pin these exact formulas via independent oracles).
enum class BaseFn {
    sphere,
    ellipsoidal,
    rastrigin,
    buche_rastrigin,
    linear_slope,
    attractive_sector,
    step_ellipsoidal,
    rosenbrock,
    discus,
    bent_cigar,
    sharp_ridge,
    different_powers,
    weierstrass,
    schaffers_f7,
    griewank_rosenbrock,
    schwefel,
    gallagher,
    katsuura,
    lunacek,
};

// Per-instance data for the Gallagher peaks base (seeded at instance build).
struct GallagherPeaks {
    int m = 0;                 // number of peaks (101 or 21)
    Mat centers;               // m x dim peak centers in z-space; row 0 is the global peak at 0
    std::vector<double> height; // peak heights; height[0] = 10
    Mat axis_coef;             // m x dim per-axis quadratic coefficients
};

// Context a base evaluator may need beyond z itself.
struct BaseContext {
    std::span<const double> shift;        // linear_slope uses the corner sign pattern
    const GallagherPeaks* peaks = nullptr; // gallagher only
};

double base_eval(BaseFn fn, std::span<const double> z, const BaseContext& ctx);

// Registry rows. f_star values and names mirror the platform's two synthetic
// suites; `rotated` selects Haar rotation vs identity at instance build.
struct FunctionInfo {
    int no;
    std::string name;
    double f_star;
    BaseFn base;
    bool rotated;
};

enum class NoiseKind { none, gaussian, uniform, cauchy };

struct NoisyFunctionInfo {
    FunctionInfo fn;
    NoiseKind noise;
    bool severe; // false = moderate
};

const std::vector<FunctionInfo>& synthetic_registry();      // 24 entries
const std::vector<NoisyFunctionInfo>& noisy_registry();     // 30 entries

} // namespace metabbo
