#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace metabbo {

// Best-cost-so-far sampled on a fixed 51-point evaluation grid
// (round(k/50 * maxFEs), k = 0..50), so curves from runs with different
// generation boundaries can be averaged. Grid point g takes the best value
// at the first observation with consumed >= g.
class TraceGrid {
public:
    explicit TraceGrid(std::int64_t max_fes) {
        grid_.reserve(51);
        for (int k = 0; k <= 50; ++k)
            grid_.push_back(static_cast<std::int64_t>(static_cast<double>(max_fes) * k / 50.0 + 0.5));
        values_.assign(51, std::numeric_limits<double>::quiet_NaN());
    }

    // Call after every batch with the counter and the running best.
    void observe(std::int64_t consumed, double best) {
        while (next_ < 51 && consumed >= grid_[static_cast<std::size_t>(next_)]) {
            values_[static_cast<std::size_t>(next_)] = best;
            ++next_;
        }
    }

    // Fill any remaining slots (early termination) with the final best.
    void finish(double final_best) {
        while (next_ < 51) {
            values_[static_cast<std::size_t>(next_)] = final_best;
            ++next_;
        }
    }

    const std::vector<std::int64_t>& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<std::int64_t> grid_;
    std::vector<double> values_;
    int next_ = 0;
};

} // namespace metabbo
