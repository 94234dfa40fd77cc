#include "metabbo/metrics/transfer.hpp"

#include <algorithm>

#include "metabbo/util/errors.hpp"

namespace metabbo {

double mgd(double aei_a, double aei_b) {
    if (!(aei_b > 0.0)) throw ConfigError("mgd: reference AEI must be positive");
    return 100.0 * (1.0 - aei_a / aei_b);
}

MteResult mte(std::span<const std::pair<std::int64_t, double>> scratch_history,
              std::span<const std::pair<std::int64_t, double>> finetune_history) {
    if (scratch_history.empty() || finetune_history.empty()) {
        throw ConfigError("mte: return histories must be non-empty");
    }
    MteResult out;
    double peak = scratch_history.front().second;
    out.t_scratch = scratch_history.front().first;
    for (const auto& [step, value] : scratch_history) {
        if (value > peak) {
            peak = value;
            out.t_scratch = step;
        }
    }
    out.t_finetune = -1;
    for (const auto& [step, value] : finetune_history) {
        if (value >= peak) {
            out.t_finetune = step;
            break;
        }
    }
    if (out.t_finetune < 0) {
        out.mte = 0.0;
        out.transfer_failure = true;
        return out;
    }
    const double t_scratch = static_cast<double>(std::max<std::int64_t>(out.t_scratch, 1));
    out.mte = 100.0 * (1.0 - static_cast<double>(out.t_finetune) / t_scratch);
    return out;
}

} // namespace metabbo
