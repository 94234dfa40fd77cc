#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "metabbo/testsuite/eval_batch.hpp"
#include "metabbo/testsuite/problem.hpp"

namespace metabbo {

// Gap-to-optimum at which a run counts as solved (synthetic suites only;
// docking optima are unknown).
inline constexpr double kTargetAccuracy = 1.0e-8;

// Single gateway for budgeted objective evaluations. Owns the ground-truth
// evaluation counter and the running noiseless best, so budget accounting
// and best-cost bookkeeping cannot drift from what was actually evaluated.
class Evaluator {
public:
    Evaluator(const Problem& p, std::uint64_t noise_seed) : p_(&p), noise_seed_(noise_seed) {}

    // Evaluates all rows (parallel kernel), advances the counter, and updates
    // the noiseless best. Outputs must hold points.rows values each.
    void eval(const Mat& points, std::span<double> raw, std::span<double> noisy) {
        evaluate_batch(*p_, points, raw, noisy, noise_seed_, consumed_);
        for (int i = 0; i < points.rows; ++i) {
            if (raw[static_cast<std::size_t>(i)] < best_raw_) {
                best_raw_ = raw[static_cast<std::size_t>(i)];
                const auto r = points.row(i);
                best_point_.assign(r.begin(), r.end());
            }
        }
        consumed_ += points.rows;
    }

    const Problem& problem() const { return *p_; }
    std::int64_t consumed() const { return consumed_; }
    double best_raw() const { return best_raw_; }
    const std::vector<double>& best_point() const { return best_point_; }

    // True once the budget is exhausted or (known-optimum suites) the best
    // noiseless value is within kTargetAccuracy of f_star.
    bool done(std::int64_t max_fes) const {
        if (consumed_ >= max_fes) return true;
        return p_->f_star_known && best_raw_ - p_->f_star <= kTargetAccuracy;
    }

private:
    const Problem* p_;
    std::uint64_t noise_seed_;
    std::int64_t consumed_ = 0;
    double best_raw_ = std::numeric_limits<double>::infinity();
    std::vector<double> best_point_;
};

} // namespace metabbo
