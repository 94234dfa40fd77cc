#include "metabbo/testsuite/eval_batch.hpp"

#include "metabbo/util/errors.hpp"
#include "metabbo/util/rng.hpp"

namespace metabbo {
namespace {

// Per-point work shared verbatim by the parallel and serial paths.
inline void eval_one(const Problem& p, const Mat& points, int i, std::span<double> raw_out,
                     std::span<double> noisy_out, std::uint64_t noise_seed, std::int64_t fe_base) {
    const double raw = evaluate_raw(p, points.row(i));
    raw_out[static_cast<std::size_t>(i)] = raw;
    if (p.noise.kind == NoiseKind::none) {
        noisy_out[static_cast<std::size_t>(i)] = raw;
    } else {
        Rng rng(derive_seed(noise_seed, {static_cast<std::uint64_t>(fe_base + i)}));
        noisy_out[static_cast<std::size_t>(i)] = apply_noise(p.noise, raw, p.f_star, rng);
    }
}

void check_sizes(const Problem& p, const Mat& points, std::span<double> raw_out,
                 std::span<double> noisy_out) {
    if (points.cols != p.dim)
        throw ConfigError("batch points have " + std::to_string(points.cols) +
                          " columns, problem needs " + std::to_string(p.dim));
    if (raw_out.size() < static_cast<std::size_t>(points.rows) ||
        noisy_out.size() < static_cast<std::size_t>(points.rows))
        throw ConfigError("batch output spans are smaller than the point count");
}

} // namespace

void evaluate_batch(const Problem& p, const Mat& points, std::span<double> raw_out,
                    std::span<double> noisy_out, std::uint64_t noise_seed, std::int64_t fe_base) {
    check_sizes(p, points, raw_out, noisy_out);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < points.rows; ++i) eval_one(p, points, i, raw_out, noisy_out, noise_seed, fe_base);
}

void evaluate_batch_serial(const Problem& p, const Mat& points, std::span<double> raw_out,
                           std::span<double> noisy_out, std::uint64_t noise_seed,
                           std::int64_t fe_base) {
    check_sizes(p, points, raw_out, noisy_out);
    for (int i = 0; i < points.rows; ++i) eval_one(p, points, i, raw_out, noisy_out, noise_seed, fe_base);
}

} // namespace metabbo
