#pragma once

// Independent re-implementations used as test oracles. Everything here is
// written directly from the mathematical definitions, on purpose sharing no
// code with the library: agreement between the two paths is the evidence the
// tests are after.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "metabbo/metrics/records.hpp"
#include "metabbo/testsuite/functions.hpp"

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

inline double power_ramp(double k, int i, int d) {
    return d > 1 ? std::pow(10.0, k * i / (d - 1.0)) : 1.0;
}

// Scalar definitions of the base objectives, g(0) = 0.
inline double base_value(metabbo::BaseFn fn, std::span<const double> z,
                         std::span<const double> shift,
                         const metabbo::GallagherPeaks* peaks) {
    using metabbo::BaseFn;
    const int d = static_cast<int>(z.size());
    switch (fn) {
        case BaseFn::sphere: {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += z[i] * z[i];
            return s;
        }
        case BaseFn::ellipsoidal: {
            double s = 0.0;
            for (int i = 0; i < d; ++i) s += power_ramp(6.0, i, d) * z[i] * z[i];
            return s;
        }
        case BaseFn::rastrigin: {
            double s = 10.0 * d;
            for (int i = 0; i < d; ++i)
                s += z[i] * z[i] - 10.0 * std::cos(2.0 * kPi * z[i]);
            return s;
        }
        case BaseFn::buche_rastrigin: {
            double s = 10.0 * d;
            for (int i = 0; i < d; ++i) {
                double scale = power_ramp(0.5, i, d);
                if (i % 2 == 0 && z[i] > 0.0) scale *= 10.0;
                const double t = scale * z[i];
                s += t * t - 10.0 * std::cos(2.0 * kPi * t);
            }
            return s;
        }
        case BaseFn::linear_slope: {
            double s = 0.0;
            for (int i = 0; i < d; ++i) {
                const double si = (shift[i] > 0.0 ? 1.0 : -1.0) * power_ramp(1.0, i, d);
                const double zi = shift[i] * z[i] < 0.0 ? z[i] + shift[i] : shift[i];
                s += 5.0 * std::fabs(si) - si * zi;
            }
            return s;
        }
        case BaseFn::attractive_sector: {
            double s = 0.0;
            for (int i = 0; i < d; ++i) {
                const double t = z[i] > 0.0 ? 100.0 * z[i] : z[i];
                s += t * t;
            }
            return std::pow(s, 0.9);
        }
        case BaseFn::step_ellipsoidal: {
            double s = 0.0;
            for (int i = 0; i < d; ++i) {
                const double zi =
                    std::fabs(z[i]) > 0.5 ? std::floor(z[i] + 0.5)
                                          : std::floor(10.0 * z[i] + 0.5) / 10.0;
                s += power_ramp(2.0, i, d) * zi * zi;
            }
            return 0.1 * std::max(std::fabs(z[0]) * 1.0e-4, s);
        }
        case BaseFn::rosenbrock:
        case BaseFn::griewank_rosenbrock: {
            if (d < 2) return 0.0;
            const double c = std::max(1.0, std::sqrt(static_cast<double>(d)) / 8.0);
            double s = 0.0;
            for (int i = 0; i < d - 1; ++i) {
                const double u = c * z[i] + 1.0;
                const double v = c * z[i + 1] + 1.0;
                const double term = 100.0 * (u * u - v) * (u * u - v) + (u - 1.0) * (u - 1.0);
                if (fn == BaseFn::rosenbrock)
                    s += term;
                else
                    s += term / 4000.0 - std::cos(term);
            }
            if (fn == BaseFn::rosenbrock) return s;
            return 10.0 * (s / (d - 1.0) + 1.0);
        }
        case BaseFn::discus: {
            double s = 1.0e6 * z[0] * z[0];
            for (int i = 1; i < d; ++i) s += z[i] * z[i];
            return s;
        }
        case BaseFn::bent_cigar: {
            double s = z[0] * z[0];
            for (int i = 1; i < d; ++i) s += 1.0e6 * z[i] * z[i];
            return s;
        }
        case BaseFn::sharp_ridge: {
            double tail = 0.0;
            for (int i = 1; i < d; ++i) tail += z[i] * z[i];
            return z[0] * z[0] + 100.0 * std::sqrt(tail);
        }
        case BaseFn::different_powers: {
            double s = 0.0;
            for (int i = 0; i < d; ++i) {
                const double e = d > 1 ? 2.0 + 4.0 * i / (d - 1.0) : 2.0;
                s += std::pow(std::fabs(z[i]), e);
            }
            return std::sqrt(s);
        }
        case BaseFn::weierstrass: {
            double f0 = 0.0;
            for (int k = 0; k <= 11; ++k)
                f0 += std::pow(0.5, k) * std::cos(kPi * std::pow(3.0, k));
            double acc = 0.0;
            for (int i = 0; i < d; ++i)
                for (int k = 0; k <= 11; ++k)
                    acc += std::pow(0.5, k) *
                           std::cos(2.0 * kPi * std::pow(3.0, k) * (z[i] + 0.5));
            const double m = acc / d - f0;
            return 10.0 * m * m * m;
        }
        case BaseFn::schaffers_f7: {
            if (d < 2) return 0.0;
            double s = 0.0;
            for (int i = 0; i < d - 1; ++i) {
                const double si = std::pow(z[i] * z[i] + z[i + 1] * z[i + 1], 0.25);
                const double arg = 50.0 * std::pow(si, 0.4);
                s += si * (1.0 + std::sin(arg) * std::sin(arg));
            }
            s /= d - 1.0;
            return s * s;
        }
        case BaseFn::schwefel: {
            double s = 0.0, pen = 0.0;
            for (int i = 0; i < d; ++i) {
                const double w = 100.0 * z[i] + 420.9687462275036;
                s += w * std::sin(std::sqrt(std::fabs(w)));
                const double out = std::fabs(w) / 100.0 - 5.0;
                if (out > 0.0) pen += out * out;
            }
            return 4.189828872724339 - s / (100.0 * d) + 100.0 * pen;
        }
        case BaseFn::gallagher: {
            double tallest = 0.0;
            for (int p = 0; p < peaks->m; ++p) {
                double q = 0.0;
                for (int i = 0; i < d; ++i) {
                    const double dz = z[i] - peaks->centers.at(p, i);
                    q += peaks->axis_coef.at(p, i) * dz * dz;
                }
                tallest = std::max(tallest, peaks->height[p] * std::exp(-q / (2.0 * d)));
            }
            return (10.0 - tallest) * (10.0 - tallest);
        }
        case BaseFn::katsuura: {
            const double expo = 10.0 / std::pow(d, 1.2);
            double prod = 1.0;
            for (int i = 0; i < d; ++i) {
                double inner = 0.0;
                for (int j = 1; j <= 32; ++j) {
                    const double t = std::ldexp(z[i], j); // 2^j z
                    inner += std::fabs(t - std::nearbyint(t)) * std::ldexp(1.0, -j);
                }
                prod *= std::pow(1.0 + (i + 1) * inner, expo);
            }
            const double c = 10.0 / (static_cast<double>(d) * d);
            return c * (prod - 1.0);
        }
        case BaseFn::lunacek: {
            const double mu0 = 2.5;
            const double s = 1.0 - 1.0 / (2.0 * std::sqrt(d + 20.0) - 8.2);
            const double mu1 = -std::sqrt((mu0 * mu0 - 1.0) / s);
            double q0 = 0.0, q1 = 0.0, c = 0.0;
            for (int i = 0; i < d; ++i) {
                const double w = z[i] + mu0;
                q0 += (w - mu0) * (w - mu0);
                q1 += (w - mu1) * (w - mu1);
                c += std::cos(2.0 * kPi * (w - mu0));
            }
            return std::min(q0, 1.0 * d + s * q1) + 10.0 * (d - c);
        }
    }
    return std::nan("");
}

// Cubic taper written as a smoothstep in t = (r - 7) / 2; an algebraically
// different expression of the same polynomial as the library's form.
inline double switching(double r) {
    const double t = (r - 7.0) / 2.0;
    return 1.0 - t * t * (3.0 - 2.0 * t);
}

// Coulomb + 12-6 Lennard-Jones, tapered between 7 and 9 Angstrom.
inline double pair_e(double r, double qq, double dielectric, double eps, double rmin) {
    r = std::max(r, 1.0e-3);
    if (r > 9.0) return 0.0;
    const double x6 = std::pow(rmin / r, 6.0);
    const double raw = qq / (dielectric * r) + eps * (x6 * x6 - x6);
    return r < 7.0 ? raw : raw * switching(r);
}

// Brute-force aggregated-evaluation-indicator: the inverse transforms, logs,
// per-problem Z-scores against the baseline's population statistics, and the
// exp-aggregate, written out longhand.
struct BruteAei {
    double mean = 0.0;
    double stddev = 0.0;
    std::map<std::string, double> per_problem;
};

inline BruteAei brute_aei(std::span<const metabbo::RunRecord> alg,
                          std::span<const metabbo::RunRecord> baseline,
                          std::int64_t max_fes, double t0) {
    const auto logs = [&](const metabbo::RunRecord& r) {
        const double v_obj = 1.0 / r.v_obj_raw;
        const double v_fes = static_cast<double>(max_fes) / static_cast<double>(r.v_fes_raw);
        const double v_com = 1.0 / std::max((r.t2_s - r.t1_s) / t0, 1e-12);
        return std::array<double, 3>{std::log(v_obj), std::log(v_fes), std::log(v_com)};
    };
    std::map<std::string, std::vector<std::array<double, 3>>> by_problem, base_by_problem;
    for (const metabbo::RunRecord& r : alg) by_problem[r.problem].push_back(logs(r));
    for (const metabbo::RunRecord& r : baseline) base_by_problem[r.problem].push_back(logs(r));

    BruteAei out;
    std::vector<double> scores;
    for (const auto& [problem, rows] : by_problem) {
        double z_sum = 0.0;
        for (int q = 0; q < 3; ++q) {
            double mu = 0.0;
            const auto& base_rows = base_by_problem.at(problem);
            for (const auto& row : base_rows) mu += row[static_cast<std::size_t>(q)];
            mu /= static_cast<double>(base_rows.size());
            double var = 0.0;
            for (const auto& row : base_rows) {
                const double dv = row[static_cast<std::size_t>(q)] - mu;
                var += dv * dv;
            }
            const double sigma = std::max(std::sqrt(var / static_cast<double>(base_rows.size())), 1e-12);
            double m = 0.0;
            for (const auto& row : rows) m += row[static_cast<std::size_t>(q)];
            m /= static_cast<double>(rows.size());
            z_sum += (m - mu) / sigma;
        }
        const double score = std::exp(z_sum);
        out.per_problem[problem] = score;
        scores.push_back(score);
    }
    for (double s : scores) out.mean += s;
    out.mean /= static_cast<double>(scores.size());
    for (double s : scores) out.stddev += (s - out.mean) * (s - out.mean);
    out.stddev = std::sqrt(out.stddev / static_cast<double>(scores.size()));
    return out;
}

} // namespace oracle
