#include "metabbo/testsuite/problem.hpp"

#include <cmath>

#include "metabbo/util/errors.hpp"
#include "metabbo/util/text.hpp"

namespace metabbo {
namespace {

constexpr double kNoiseFreeBand = 1.0e-8; // raw values this close to f_star stay exact
constexpr double kPi = 3.14159265358979323846;

std::uint64_t suite_id(Suite s) { return static_cast<std::uint64_t>(s) + 1; }

// Haar-distributed rotation: orthonormalize a Gaussian matrix with modified
// Gram-Schmidt, run twice for numerical sharpness (row dot products land at
// ~1e-15 even at dim 50).
Mat haar_rotation(int dim, Rng& rng) {
    Mat q(dim, dim);
    for (double& v : q.a) v = rng.normal();
    for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < dim; ++i) {
            auto ri = q.row(i);
            for (int j = 0; j < i; ++j) {
                auto rj = q.row(j);
                double dot = 0.0;
                for (int c = 0; c < dim; ++c) dot += ri[c] * rj[c];
                for (int c = 0; c < dim; ++c) ri[c] -= dot * rj[c];
            }
            double norm = 0.0;
            for (int c = 0; c < dim; ++c) norm += ri[c] * ri[c];
            norm = std::sqrt(norm);
            for (int c = 0; c < dim; ++c) ri[c] /= norm;
        }
    }
    return q;
}

std::shared_ptr<const GallagherPeaks> build_peaks(int m, int dim, Rng& rng) {
    auto peaks = std::make_shared<GallagherPeaks>();
    peaks->m = m;
    peaks->centers = Mat(m, dim);
    peaks->height.assign(static_cast<std::size_t>(m), 0.0);
    peaks->axis_coef = Mat(m, dim);
    for (int i = 0; i < m; ++i) {
        const bool global = i == 0;
        peaks->height[static_cast<std::size_t>(i)] =
            global ? 10.0 : 1.1 + 8.0 * static_cast<double>(i - 1) / static_cast<double>(m - 2);
        const double alpha = global ? 1000.0 : std::pow(1000.0, rng.uniform01());
        for (int j = 0; j < dim; ++j) {
            peaks->centers.at(i, j) = global ? 0.0 : rng.uniform(-4.0, 4.0);
            const double t = dim <= 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(dim - 1);
            peaks->axis_coef.at(i, j) = std::pow(alpha, t - 0.5);
        }
    }
    return peaks;
}

NoiseModel resolve_noise(NoiseKind kind, bool severe, int dim) {
    NoiseModel m;
    m.kind = kind;
    switch (kind) {
        case NoiseKind::none: break;
        case NoiseKind::gaussian:
            m.beta = severe ? 1.0 : 0.01;
            break;
        case NoiseKind::uniform: {
            const double a = 0.49 + 1.0 / static_cast<double>(dim);
            m.alpha = severe ? a : 0.01 * a;
            m.beta = severe ? 1.0 : 0.01;
            break;
        }
        case NoiseKind::cauchy:
            m.alpha = severe ? 1.0 : 0.01;
            m.p = severe ? 0.2 : 0.05;
            break;
    }
    return m;
}

Problem make_synthetic(Suite suite, int function_no, int dim, std::uint64_t seed) {
    const bool noisy = suite == Suite::noisy_synthetic;
    const int table_size = noisy ? 30 : 24;
    if (function_no < 1 || function_no > table_size)
        throw ConfigError("unknown function: " + suite_name(suite) + " has numbers 1.." +
                          std::to_string(table_size) + ", got " + std::to_string(function_no));
    if (dim < 1) throw ConfigError("dim must be >= 1, got " + std::to_string(dim));

    FunctionInfo info = noisy ? noisy_registry()[static_cast<std::size_t>(function_no - 1)].fn
                              : synthetic_registry()[static_cast<std::size_t>(function_no - 1)];

    Problem p;
    p.suite = suite;
    p.function_no = function_no;
    p.dim = dim;
    p.seed = seed;
    p.name = info.name;
    p.f_star = info.f_star;
    p.f_star_known = true;
    p.lower.assign(static_cast<std::size_t>(dim), -5.0);
    p.upper.assign(static_cast<std::size_t>(dim), 5.0);
    p.base = info.base;
    p.default_max_fes = 20000;

    Rng rng(derive_seed(seed, {suite_id(suite), static_cast<std::uint64_t>(function_no),
                               static_cast<std::uint64_t>(dim)}));
    p.shift.assign(static_cast<std::size_t>(dim), 0.0);
    if (info.base == BaseFn::linear_slope) {
        // The slope's optimum lives on a corner of the box; the sign pattern
        // is the instance's randomness.
        for (double& s : p.shift) s = rng.uniform01() < 0.5 ? -5.0 : 5.0;
    } else {
        // Central 80% of the box keeps the optimum clear of the boundary.
        for (double& s : p.shift) s = rng.uniform(-4.0, 4.0);
    }
    p.rotation = info.rotated ? haar_rotation(dim, rng) : Mat::identity(dim);
    if (info.base == BaseFn::gallagher) {
        const int m = info.name.find("-21") != std::string::npos ? 21 : 101;
        p.peaks = build_peaks(m, dim, rng);
    }
    if (noisy) {
        const NoisyFunctionInfo& row = noisy_registry()[static_cast<std::size_t>(function_no - 1)];
        p.noise = resolve_noise(row.noise, row.severe, dim);
    }
    return p;
}

Problem make_docking(int instance_no, int dim, std::uint64_t seed) {
    if (instance_no < 1 || instance_no > 280)
        throw ConfigError("unknown function: protein-docking has instance numbers 1..280, got " +
                          std::to_string(instance_no));
    if (dim != 12)
        throw ConfigError("protein-docking instances are fixed at dim 12, got " + std::to_string(dim));

    const int complex_no = (instance_no - 1) / 10;
    const int start_no = (instance_no - 1) % 10;

    Problem p;
    p.suite = Suite::protein_docking;
    p.function_no = instance_no;
    p.dim = 12;
    p.seed = seed;
    p.name = "complex-" + std::to_string(complex_no + 1) + "-start-" + std::to_string(start_no + 1);
    p.f_star = 0.0;
    p.f_star_known = false;
    p.enforce_bounds = false;
    p.lower = {-kPi, -kPi, -kPi, -10, -10, -10, -10, -10, -10, -10, -10, -10};
    p.upper = {kPi, kPi, kPi, 10, 10, 10, 10, 10, 10, 10, 10, 10};
    p.default_max_fes = 1000;
    p.docking = std::make_shared<const DockingInstance>(make_docking_instance(complex_no, start_no, seed));
    return p;
}

} // namespace

std::string suite_name(Suite s) {
    switch (s) {
        case Suite::synthetic: return "synthetic";
        case Suite::noisy_synthetic: return "noisy-synthetic";
        case Suite::protein_docking: return "protein-docking";
    }
    throw StateError("unhandled suite");
}

Suite suite_from_name(const std::string& name) {
    if (name == "synthetic") return Suite::synthetic;
    if (name == "noisy-synthetic") return Suite::noisy_synthetic;
    if (name == "protein-docking") return Suite::protein_docking;
    throw ConfigError("unknown suite '" + name +
                      "' (expected synthetic, noisy-synthetic or protein-docking)");
}

std::string problem_key(const Problem& p) {
    return suite_name(p.suite) + "/" + std::to_string(p.function_no) + "/" + std::to_string(p.dim) +
           "/" + std::to_string(p.seed);
}

Problem problem_from_key(const std::string& key) {
    const auto parts = split(key, '/');
    if (parts.size() != 4) throw DataError("problem key '" + key + "' must be suite/function-no/dim/seed");
    const Suite suite = suite_from_name(parts[0]);
    const int fn = static_cast<int>(parse_int(parts[1], "function-no"));
    const int dim = static_cast<int>(parse_int(parts[2], "dim"));
    const auto seed = static_cast<std::uint64_t>(parse_int(parts[3], "seed"));
    return make_instance(suite, fn, dim, seed);
}

Problem make_instance(Suite suite, int function_no, int dim, std::uint64_t seed) {
    if (suite == Suite::protein_docking) return make_docking(function_no, dim, seed);
    return make_synthetic(suite, function_no, dim, seed);
}

double evaluate_raw(const Problem& p, std::span<const double> x) {
    if (static_cast<int>(x.size()) != p.dim)
        throw ConfigError("point has " + std::to_string(x.size()) + " coordinates, problem needs " +
                          std::to_string(p.dim));
    if (p.suite == Suite::protein_docking) return docking_energy(*p.docking, x);

    std::vector<double> z(static_cast<std::size_t>(p.dim));
    std::vector<double> diff(static_cast<std::size_t>(p.dim));
    for (int i = 0; i < p.dim; ++i) diff[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - p.shift[static_cast<std::size_t>(i)];
    matvec(p.rotation, diff, z);
    BaseContext ctx{p.shift, p.peaks.get()};
    return base_eval(p.base, z, ctx) + p.f_star;
}

double apply_noise(const NoiseModel& m, double raw_value, double f_star, Rng& rng) {
    if (m.kind == NoiseKind::none) return raw_value;
    const double excess = raw_value - f_star;
    if (excess <= kNoiseFreeBand) return raw_value;
    switch (m.kind) {
        case NoiseKind::gaussian:
            return f_star + excess * std::exp(m.beta * rng.normal());
        case NoiseKind::uniform: {
            const double u1 = rng.uniform01();
            const double u2 = rng.uniform01();
            const double mag = std::pow(1.0e9 / (excess + 1.0e-99), m.alpha * u2);
            return f_star + excess * std::pow(u1, m.beta) * std::max(1.0, mag);
        }
        case NoiseKind::cauchy: {
            const double u = rng.uniform01();
            const double n1 = rng.normal();
            const double n2 = rng.normal();
            const double spike = u < m.p ? n1 / std::fabs(n2) : 0.0;
            return f_star + excess + m.alpha * std::max(0.0, 1000.0 + spike);
        }
        case NoiseKind::none: break;
    }
    return raw_value;
}

double evaluate(const Problem& p, std::span<const double> x, Rng& rng) {
    const double raw = evaluate_raw(p, x);
    return apply_noise(p.noise, raw, p.f_star, rng);
}

} // namespace metabbo
