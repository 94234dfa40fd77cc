#pragma once

#include "metabbo/metrics/records.hpp"
#include "metabbo/workflow/config.hpp"

namespace metabbo {

struct Reports {
    std::string aei_csv;
    std::string perf_table_md;
    std::string walltime_csv;
    std::string cost_curves_csv;
};

// Pure rendering of the four report files from the complete record set:
// AEI scores with per-problem Z's, the objective/Gap/FEs table, mean wall
// time with the complexity Z, and normalized mean cost curves. Byte-stable
// for fixed inputs.
Reports render_reports(std::span<const RunRecord> records, const ExperimentConfig& config,
                       double t0);

// Reads <out>/test/{records,traces}.csv and (re)writes <out>/reports/
// {aei.csv, perf_table.md, walltime.csv, cost_curves.csv}.
void logger_log(const std::filesystem::path& out_dir, const ExperimentConfig& config);

} // namespace metabbo
