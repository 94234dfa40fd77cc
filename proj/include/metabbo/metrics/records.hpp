#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace metabbo {

// One test run of one algorithm on one problem.
struct RunRecord {
    std::string algorithm;
    std::string problem;
    int run = 0;                 // 1-based run index
    double v_obj_raw = 0.0;      // (best cost - reference) + 1e-12, > 0
    std::int64_t v_fes_raw = 0;  // evaluations consumed
    double t1_s = 0.0;           // pure evaluation time, seconds
    double t2_s = 0.0;           // total run time, seconds
    // Best-cost trace on the run's evaluation grid, (consumed FEs, best raw).
    std::vector<std::pair<std::int64_t, double>> trace;
};

// The trace travels in a separate file; these cover the scalar columns.
std::string records_to_csv(std::span<const RunRecord> records);
std::vector<RunRecord> records_from_csv(const std::string& text);

std::string traces_to_csv(std::span<const RunRecord> records);
// Attaches trace rows onto already-parsed records, matched by
// (algorithm, problem, run). Unmatched rows are a data error.
void traces_from_csv(const std::string& text, std::vector<RunRecord>& records);

} // namespace metabbo
