#include "metabbo/metrics/aei.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "metabbo/util/errors.hpp"

namespace metabbo {
namespace {

constexpr double kSigmaFloor = 1e-12;
constexpr double kElapsedFloor = 1e-12;

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double population_std(const std::vector<double>& v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size()));
}

struct LogValues {
    std::vector<double> obj, fes, com;
};

// Problems keyed by id, runs kept in run-index order.
using Grouped = std::vector<std::pair<std::string, std::vector<const RunRecord*>>>;

Grouped group_by_problem(std::span<const RunRecord> records) {
    Grouped grouped;
    std::map<std::string, std::size_t> index;
    for (const RunRecord& r : records) {
        auto [it, inserted] = index.emplace(r.problem, grouped.size());
        if (inserted) grouped.push_back({r.problem, {}});
        grouped[it->second].second.push_back(&r);
    }
    for (auto& [problem, runs] : grouped) {
        std::stable_sort(runs.begin(), runs.end(),
                         [](const RunRecord* a, const RunRecord* b) { return a->run < b->run; });
    }
    return grouped;
}

void check_coverage(const Grouped& alg, const Grouped& base) {
    std::map<std::pair<std::string, int>, int> delta;
    for (const auto& [problem, runs] : alg) {
        for (const RunRecord* r : runs) delta[{problem, r->run}] += 1;
    }
    for (const auto& [problem, runs] : base) {
        for (const RunRecord* r : runs) delta[{problem, r->run}] -= 1;
    }
    std::ostringstream missing;
    int count = 0;
    for (const auto& [key, d] : delta) {
        if (d == 0) continue;
        if (count++) missing << ", ";
        missing << '(' << key.first << ", run " << key.second << ')'
                << (d > 0 ? " missing from baseline" : " missing from algorithm");
    }
    if (count > 0) {
        throw DataError("record sets cover different (problem, run) grids: " + missing.str());
    }
}

LogValues log_values(const std::vector<const RunRecord*>& runs, std::int64_t max_fes, double t0) {
    LogValues lv;
    for (const RunRecord* r : runs) {
        const PreprocessedRun p = preprocess(*r, max_fes, t0);
        lv.obj.push_back(std::log(p.v_obj));
        lv.fes.push_back(std::log(p.v_fes));
        lv.com.push_back(std::log(p.v_com));
    }
    return lv;
}

double z_score(const std::vector<double>& alg, const std::vector<double>& base) {
    const double mu = mean_of(base);
    const double sigma = std::max(population_std(base, mu), kSigmaFloor);
    return (mean_of(alg) - mu) / sigma;
}

} // namespace

PreprocessedRun preprocess(const RunRecord& record, std::int64_t max_fes, double t0) {
    if (!(t0 > 0.0)) throw ConfigError("reference time T0 must be positive");
    if (!(record.v_obj_raw > 0.0)) {
        throw DataError("non-positive objective value in record " + record.algorithm + '/' +
                        record.problem + " run " + std::to_string(record.run));
    }
    if (record.v_fes_raw <= 0) {
        throw DataError("non-positive evaluation count in record " + record.algorithm + '/' +
                        record.problem + " run " + std::to_string(record.run));
    }
    PreprocessedRun out;
    out.v_obj = 1.0 / record.v_obj_raw;
    out.v_fes = static_cast<double>(max_fes) / static_cast<double>(record.v_fes_raw);
    out.v_com = 1.0 / std::max((record.t2_s - record.t1_s) / t0, kElapsedFloor);
    return out;
}

AeiResult aei(std::span<const RunRecord> algorithm_records,
              std::span<const RunRecord> baseline_records, std::int64_t max_fes, double t0) {
    if (algorithm_records.empty()) throw DataError("aei: no algorithm records");
    const Grouped alg = group_by_problem(algorithm_records);
    const Grouped base = group_by_problem(baseline_records);
    check_coverage(alg, base);

    std::map<std::string, const std::vector<const RunRecord*>*> base_index;
    for (const auto& [problem, runs] : base) base_index[problem] = &runs;

    AeiResult result;
    std::vector<double> scores;
    for (const auto& [problem, runs] : alg) {
        const LogValues lv_alg = log_values(runs, max_fes, t0);
        const LogValues lv_base = log_values(*base_index.at(problem), max_fes, t0);
        ProblemScore ps;
        ps.problem = problem;
        ps.z_obj = z_score(lv_alg.obj, lv_base.obj);
        ps.z_fes = z_score(lv_alg.fes, lv_base.fes);
        ps.z_com = z_score(lv_alg.com, lv_base.com);
        ps.score = std::exp(ps.z_obj + ps.z_fes + ps.z_com);
        scores.push_back(ps.score);
        result.per_problem.push_back(std::move(ps));
    }
    result.aei = mean_of(scores);
    result.aei_std = population_std(scores, result.aei);
    return result;
}

} // namespace metabbo
