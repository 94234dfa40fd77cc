#include "metabbo/testsuite/functions.hpp"

#include <cmath>

#include "metabbo/util/errors.hpp"

namespace metabbo {
namespace {

constexpr double kPi = 3.14159265358979323846;

// 10^(k * i / (D-1)) conditioning ramp; collapses to 1 when D == 1.
double cond(double k, int i, int dim) {
    if (dim <= 1) return 1.0;
    return std::pow(10.0, k * static_cast<double>(i) / static_cast<double>(dim - 1));
}

double sphere(std::span<const double> z) {
    double s = 0.0;
    for (double v : z) s += v * v;
    return s;
}

double ellipsoidal(std::span<const double> z) {
    const int d = static_cast<int>(z.size());
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += cond(6.0, i, d) * z[i] * z[i];
    return s;
}

double rastrigin(std::span<const double> z) {
    const int d = static_cast<int>(z.size());
    double c = 0.0, q = 0.0;
    for (double v : z) {
        c += std::cos(2.0 * kPi * v);
        q += v * v;
    }
    return 10.0 * (d - c) + q;
}

double buche_rastrigin(std::span<const double> z) {
    const int d = static_cast<int>(z.size());
    double c = 0.0, q = 0.0;
    for (int i = 0; i < d; ++i) {
        double s = cond(0.5, i, d);
        if (i % 2 == 0 && z[i] > 0.0) s *= 10.0; // odd coordinates in 1-based counting
        const double t = s * z[i];
        c += std::cos(2.0 * kPi * t);
        q += t * t;
    }
    return 10.0 * (d - c) + q;
}

// Optimum sits on the corner of the box: ctx.shift carries the +-5 pattern.
// Beyond the corner face the function is flat (the classic plateau clip).
double linear_slope(std::span<const double> z, std::span<const double> shift) {
    const int d = static_cast<int>(z.size());
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        const double sign = shift[i] > 0.0 ? 1.0 : -1.0;
        const double si = sign * cond(1.0, i, d);
        const double wi = (shift[i] * z[i] < 0.0) ? z[i] + shift[i] : shift[i];
        s += 5.0 * std::fabs(si) - si * wi;
    }
    return s;
}

double attractive_sector(std::span<const double> z) {
    double s = 0.0;
    for (double v : z) {
        const double sv = (v > 0.0 ? 100.0 : 1.0) * v;
        s += sv * sv;
    }
    return std::pow(s, 0.9);
}

double step_ellipsoidal(std::span<const double> z) {
    const int d = static_cast<int>(z.size());
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        const double zt = std::fabs(z[i]) > 0.5 ? std::floor(0.5 + z[i])
                                                : std::floor(0.5 + 10.0 * z[i]) / 10.0;
        s += cond(2.0, i, d) * zt * zt;
    }
    return 0.1 * std::max(std::fabs(z[0]) / 1.0e4, s);
}

double rosenbrock(std::span<const double> z) {
    const int d = static_cast<int>(z.size());
    const double c = std::max(1.0, std::sqrt(static_cast<double>(d)) / 8.0);
    double s = 0.0;
    for (int i = 0; i + 1 < d; ++i) {
        const double wi = c * z[i] + 1.0;
        const double wn = c * z[i + 1] + 1.0;
        const double a = wi * wi - wn;
        const double b = wi - 1.0;
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double discus(std::span<const double> z) {
    double s = 1.0e6 * z[0] * z[0];
    for (std::size_t i = 1; i < z.size(); ++i) s += z[i] * z[i];
    return s;
}

double bent_cigar(std::span<const double> z) {
    double s = z[0] * z[0];
    for (std::size_t i = 1; i < z.size(); ++i) s += 1.0e6 * z[i] * z[i];
    return s;
}

double sharp_ridge(std::span<const double> z) {
    double tail = 0.0;
    for (std::size_t i = 1; i < z.size(); ++i) tail += z[i] * z[i];
    return z[0] * z[0] + 100.0 * std::sqrt(tail);
}

double different_powers(std::span<const double> z) {
    const int d = static_cast<int>(z.size());
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        const double e = d <= 1 ? 2.0 : 2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(d - 1);
        s += std::pow(std::fabs(z[i]), e);
    }
    return std::sqrt(s);
}

double weierstrass(std::span<const double> z) {
    const int d = static_cast<int>(z.size());
    double f0 = 0.0;
    for (int k = 0; k <= 11; ++k) f0 += std::pow(0.5, k) * std::cos(kPi * std::pow(3.0, k));
    double mean = 0.0;
    for (double v : z) {
        double inner = 0.0;
        for (int k = 0; k <= 11; ++k)
            inner += std::pow(0.5, k) * std::cos(2.0 * kPi * std::pow(3.0, k) * (v + 0.5));
        mean += inner;
    }
    mean = mean / d - f0;
    return 10.0 * mean * mean * mean;
}

double schaffers_f7(std::span<const double> z) {
    const int d = static_cast<int>(z.size());
    if (d < 2) return 0.0;
    double s = 0.0;
    for (int i = 0; i + 1 < d; ++i) {
        const double si = std::sqrt(z[i] * z[i] + z[i + 1] * z[i + 1]);
        const double sn = std::sin(50.0 * std::pow(si, 0.2));
        s += std::sqrt(si) * (1.0 + sn * sn);
    }
    s /= static_cast<double>(d - 1);
    return s * s;
}

double griewank_rosenbrock(std::span<const double> z) {
    const int d = static_cast<int>(z.size());
    if (d < 2) return 0.0;
    const double c = std::max(1.0, std::sqrt(static_cast<double>(d)) / 8.0);
    double s = 0.0;
    for (int i = 0; i + 1 < d; ++i) {
        const double wi = c * z[i] + 1.0;
        const double wn = c * z[i + 1] + 1.0;
        const double a = wi * wi - wn;
        const double b = wi - 1.0;
        const double si = 100.0 * a * a + b * b;
        s += si / 4000.0 - std::cos(si);
    }
    return 10.0 / static_cast<double>(d - 1) * s + 10.0;
}

double schwefel(std::span<const double> z) {
    const int d = static_cast<int>(z.size());
    double s = 0.0, pen = 0.0;
    for (double v : z) {
        const double w = 100.0 * v + 420.9687462275036;
        s += w * std::sin(std::sqrt(std::fabs(w)));
        const double over = std::fabs(w) / 100.0 - 5.0;
        if (over > 0.0) pen += over * over;
    }
    return -s / (100.0 * d) + 4.189828872724339 + 100.0 * pen;
}

double gallagher(std::span<const double> z, const GallagherPeaks& peaks) {
    const int d = static_cast<int>(z.size());
    double best = 0.0;
    for (int i = 0; i < peaks.m; ++i) {
        double q = 0.0;
        for (int j = 0; j < d; ++j) {
            const double dz = z[j] - peaks.centers.at(i, j);
            q += peaks.axis_coef.at(i, j) * dz * dz;
        }
        const double v = peaks.height[i] * std::exp(-q / (2.0 * d));
        if (v > best) best = v;
    }
    const double r = 10.0 - best;
    return r * r;
}

double katsuura(std::span<const double> z) {
    const int d = static_cast<int>(z.size());
    const double e = 10.0 / std::pow(static_cast<double>(d), 1.2);
    double prod = 1.0;
    for (int i = 0; i < d; ++i) {
        double inner = 0.0;
        for (int j = 1; j <= 32; ++j) {
            const double p = std::pow(2.0, j) * z[i];
            inner += std::fabs(p - std::nearbyint(p)) / std::pow(2.0, j);
        }
        prod *= std::pow(1.0 + (i + 1) * inner, e);
    }
    const double c = 10.0 / (static_cast<double>(d) * d);
    return c * prod - c;
}

double lunacek(std::span<const double> z) {
    const int d = static_cast<int>(z.size());
    const double mu0 = 2.5;
    const double dd = 1.0;
    const double s = 1.0 - 1.0 / (2.0 * std::sqrt(static_cast<double>(d) + 20.0) - 8.2);
    const double mu1 = -std::sqrt((mu0 * mu0 - dd) / s);
    double q0 = 0.0, q1 = 0.0, c = 0.0;
    for (double v : z) {
        const double w = v + mu0;
        q0 += (w - mu0) * (w - mu0);
        q1 += (w - mu1) * (w - mu1);
        c += std::cos(2.0 * kPi * (w - mu0));
    }
    return std::min(q0, dd * d + s * q1) + 10.0 * (d - c);
}

} // namespace

double base_eval(BaseFn fn, std::span<const double> z, const BaseContext& ctx) {
    switch (fn) {
        case BaseFn::sphere: return sphere(z);
        case BaseFn::ellipsoidal: return ellipsoidal(z);
        case BaseFn::rastrigin: return rastrigin(z);
        case BaseFn::buche_rastrigin: return buche_rastrigin(z);
        case BaseFn::linear_slope: return linear_slope(z, ctx.shift);
        case BaseFn::attractive_sector: return attractive_sector(z);
        case BaseFn::step_ellipsoidal: return step_ellipsoidal(z);
        case BaseFn::rosenbrock: return rosenbrock(z);
        case BaseFn::discus: return discus(z);
        case BaseFn::bent_cigar: return bent_cigar(z);
        case BaseFn::sharp_ridge: return sharp_ridge(z);
        case BaseFn::different_powers: return different_powers(z);
        case BaseFn::weierstrass: return weierstrass(z);
        case BaseFn::schaffers_f7: return schaffers_f7(z);
        case BaseFn::griewank_rosenbrock: return griewank_rosenbrock(z);
        case BaseFn::schwefel: return schwefel(z);
        case BaseFn::gallagher:
            if (!ctx.peaks) throw StateError("gallagher base requires peak data");
            return gallagher(z, *ctx.peaks);
        case BaseFn::katsuura: return katsuura(z);
        case BaseFn::lunacek: return lunacek(z);
    }
    throw StateError("unhandled base function id");
}

const std::vector<FunctionInfo>& synthetic_registry() {
    static const std::vector<FunctionInfo> table = {
        {1, "sphere", 700, BaseFn::sphere, false},
        {2, "ellipsoidal", 1900, BaseFn::ellipsoidal, false},
        {3, "rastrigin", 100, BaseFn::rastrigin, false},
        {4, "buche-rastrigin", 1000, BaseFn::buche_rastrigin, false},
        {5, "linear-slope", 2000, BaseFn::linear_slope, false},
        {6, "attractive-sector", 400, BaseFn::attractive_sector, true},
        {7, "step-ellipsoidal", 300, BaseFn::step_ellipsoidal, true},
        {8, "rosenbrock", 1300, BaseFn::rosenbrock, false},
        {9, "rosenbrock-rotated", 1300, BaseFn::rosenbrock, true},
        {10, "ellipsoidal-high-cond", 600, BaseFn::ellipsoidal, true},
        {11, "discus", 900, BaseFn::discus, true},
        {12, "bent-cigar", 2000, BaseFn::bent_cigar, true},
        {13, "sharp-ridge", 2400, BaseFn::sharp_ridge, true},
        {14, "different-powers", 1500, BaseFn::different_powers, true},
        {15, "rastrigin-rotated", 1700, BaseFn::rastrigin, true},
        {16, "weierstrass", 1400, BaseFn::weierstrass, true},
        {17, "schaffers-f7", 200, BaseFn::schaffers_f7, true},
        {18, "schaffers-f7-ill", 700, BaseFn::schaffers_f7, true},
        {19, "griewank-rosenbrock", 1700, BaseFn::griewank_rosenbrock, true},
        {20, "schwefel", 2100, BaseFn::schwefel, false},
        {21, "gallagher-101", 700, BaseFn::gallagher, true},
        {22, "gallagher-21", 2400, BaseFn::gallagher, true},
        {23, "katsuura", 600, BaseFn::katsuura, true},
        {24, "lunacek-bi-rastrigin", 1200, BaseFn::lunacek, true},
    };
    return table;
}

const std::vector<NoisyFunctionInfo>& noisy_registry() {
    static const std::vector<NoisyFunctionInfo> table = {
        {{1, "sphere-gauss-moderate", 700, BaseFn::sphere, true}, NoiseKind::gaussian, false},
        {{2, "sphere-uniform-moderate", 1900, BaseFn::sphere, true}, NoiseKind::uniform, false},
        {{3, "sphere-cauchy-moderate", 100, BaseFn::sphere, true}, NoiseKind::cauchy, false},
        {{4, "rosenbrock-gauss-moderate", 1000, BaseFn::rosenbrock, true}, NoiseKind::gaussian, false},
        {{5, "rosenbrock-uniform-moderate", 2000, BaseFn::rosenbrock, true}, NoiseKind::uniform, false},
        {{6, "rosenbrock-cauchy-moderate", 400, BaseFn::rosenbrock, true}, NoiseKind::cauchy, false},
        {{7, "sphere-gauss", 100, BaseFn::sphere, true}, NoiseKind::gaussian, true},
        {{8, "sphere-uniform", 2000, BaseFn::sphere, true}, NoiseKind::uniform, true},
        {{9, "sphere-cauchy", 2000, BaseFn::sphere, true}, NoiseKind::cauchy, true},
        {{10, "rosenbrock-gauss", 500, BaseFn::rosenbrock, true}, NoiseKind::gaussian, true},
        {{11, "rosenbrock-uniform", 400, BaseFn::rosenbrock, true}, NoiseKind::uniform, true},
        {{12, "rosenbrock-cauchy", 700, BaseFn::rosenbrock, true}, NoiseKind::cauchy, true},
        {{13, "step-ellipsoidal-gauss", 1900, BaseFn::step_ellipsoidal, true}, NoiseKind::gaussian, true},
        {{14, "step-ellipsoidal-uniform", 800, BaseFn::step_ellipsoidal, true}, NoiseKind::uniform, true},
        {{15, "step-ellipsoidal-cauchy", 2300, BaseFn::step_ellipsoidal, true}, NoiseKind::cauchy, true},
        {{16, "ellipsoidal-gauss", 200, BaseFn::ellipsoidal, true}, NoiseKind::gaussian, true},
        {{17, "ellipsoidal-uniform", 100, BaseFn::ellipsoidal, true}, NoiseKind::uniform, true},
        {{18, "ellipsoidal-cauchy", 200, BaseFn::ellipsoidal, true}, NoiseKind::cauchy, true},
        {{19, "different-powers-gauss", 500, BaseFn::different_powers, true}, NoiseKind::gaussian, true},
        {{20, "different-powers-uniform", 1600, BaseFn::different_powers, true}, NoiseKind::uniform, true},
        {{21, "different-powers-cauchy", 1000, BaseFn::different_powers, true}, NoiseKind::cauchy, true},
        {{22, "schaffers-f7-gauss", 2400, BaseFn::schaffers_f7, true}, NoiseKind::gaussian, true},
        {{23, "schaffers-f7-uniform", 1400, BaseFn::schaffers_f7, true}, NoiseKind::uniform, true},
        {{24, "schaffers-f7-cauchy", 2400, BaseFn::schaffers_f7, true}, NoiseKind::cauchy, true},
        {{25, "griewank-rosenbrock-gauss", 2200, BaseFn::griewank_rosenbrock, true}, NoiseKind::gaussian, true},
        {{26, "griewank-rosenbrock-uniform", 400, BaseFn::griewank_rosenbrock, true}, NoiseKind::uniform, true},
        {{27, "griewank-rosenbrock-cauchy", 2500, BaseFn::griewank_rosenbrock, true}, NoiseKind::cauchy, true},
        {{28, "gallagher-101-gauss", 1000, BaseFn::gallagher, true}, NoiseKind::gaussian, true},
        {{29, "gallagher-101-uniform", 600, BaseFn::gallagher, true}, NoiseKind::uniform, true},
        {{30, "gallagher-101-cauchy", 2100, BaseFn::gallagher, true}, NoiseKind::cauchy, true},
    };
    return table;
}

} // namespace metabbo
