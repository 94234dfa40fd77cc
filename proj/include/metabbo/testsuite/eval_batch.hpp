#pragma once

#include <cstdint>
#include <span>

#include "metabbo/testsuite/problem.hpp"
#include "metabbo/util/mat.hpp"

namespace metabbo {

// Evaluates every row of `points` against `p`, writing the noiseless value to
// `raw_out` and the observable (possibly noisy) value to `noisy_out` (both
// sized points.rows).
//
// Noise draws are keyed per point: point i uses an rng seeded from
// (noise_seed, fe_base + i), where fe_base is the caller's evaluation counter
// before the batch. This makes results independent of thread count and
// bit-equal between the parallel kernel and the serial reference.
void evaluate_batch(const Problem& p, const Mat& points, std::span<double> raw_out,
                    std::span<double> noisy_out, std::uint64_t noise_seed, std::int64_t fe_base);

void evaluate_batch_serial(const Problem& p, const Mat& points, std::span<double> raw_out,
                           std::span<double> noisy_out, std::uint64_t noise_seed,
                           std::int64_t fe_base);

} // namespace metabbo
