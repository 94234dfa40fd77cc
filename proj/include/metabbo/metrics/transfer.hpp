#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace metabbo {

// Generalization decay between two AEI scores, in percent:
// 100 * (1 - aei_a / aei_b). Throws ConfigError when aei_b <= 0.
double mgd(double aei_a, double aei_b);

struct MteResult {
    double mte = 0.0;
    bool transfer_failure = false;
    std::int64_t t_scratch = 0;  // step of the scratch peak return
    std::int64_t t_finetune = 0; // earliest step matching it, -1 if never
};

// Transfer efficiency from (learning step, mean return) histories:
// 100 * (1 - T_finetune / T_scratch), where T_scratch is the step of the
// scratch history's maximum (earliest on ties) and T_finetune the earliest
// fine-tune step whose return reaches that maximum. A fine-tune curve that
// never reaches the peak reports MTE = 0 with the transfer-failure flag.
MteResult mte(std::span<const std::pair<std::int64_t, double>> scratch_history,
              std::span<const std::pair<std::int64_t, double>> finetune_history);

} // namespace metabbo
