#pragma once

#include "metabbo/metrics/records.hpp"

namespace metabbo {

// The three per-run values after the inverse transform (bigger is better,
// log transform still pending): 1/v_obj_raw, maxFEs/v_fes_raw, and
// 1/((T2-T1)/T0) with the elapsed ratio floored at 1e-12.
struct PreprocessedRun {
    double v_obj = 0.0;
    double v_fes = 0.0;
    double v_com = 0.0;
};
PreprocessedRun preprocess(const RunRecord& record, std::int64_t max_fes, double t0);

struct ProblemScore {
    std::string problem;
    double z_obj = 0.0;
    double z_fes = 0.0;
    double z_com = 0.0;
    double score = 0.0; // exp(z_obj + z_fes + z_com)
};

struct AeiResult {
    double aei = 0.0;       // mean of the per-problem scores
    double aei_std = 0.0;   // population std of the per-problem scores
    std::vector<ProblemScore> per_problem;
};

// Z-scores the log-transformed per-problem means of an algorithm's runs
// against random-search statistics (population sigma, floored at 1e-12),
// then exp-aggregates. Both record sets must cover the same (problem, run)
// grid; mismatches raise a DataError listing the missing pairs.
AeiResult aei(std::span<const RunRecord> algorithm_records,
              std::span<const RunRecord> baseline_records, std::int64_t max_fes, double t0);

} // namespace metabbo
