#include "metabbo/workflow/logger.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "metabbo/metrics/aei.hpp"
#include "metabbo/util/errors.hpp"
#include "metabbo/util/text.hpp"

namespace metabbo {
namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string() + " (run the test phase first)");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
}

struct Cell {
    double mean = 0.0;
    double std_dev = 0.0; // population
};

Cell cell_of(const std::vector<double>& values) {
    Cell c;
    for (double v : values) c.mean += v;
    c.mean /= static_cast<double>(values.size());
    for (double v : values) c.std_dev += (v - c.mean) * (v - c.mean);
    c.std_dev = std::sqrt(c.std_dev / static_cast<double>(values.size()));
    return c;
}

std::string fmt_cell(const Cell& c) { return fmt_sci3(c.mean) + " (" + fmt_sci3(c.std_dev) + ")"; }

std::string fmt_fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// records grouped as algorithm -> problem -> runs, both in first-appearance
// order of the record stream (the tester writes deterministically).
struct Grouping {
    std::vector<std::string> algorithms;
    std::vector<std::string> problems;
    std::map<std::string, std::map<std::string, std::vector<const RunRecord*>>> runs;
};

Grouping group(std::span<const RunRecord> records) {
    Grouping g;
    for (const RunRecord& r : records) {
        if (std::find(g.algorithms.begin(), g.algorithms.end(), r.algorithm) == g.algorithms.end())
            g.algorithms.push_back(r.algorithm);
        if (std::find(g.problems.begin(), g.problems.end(), r.problem) == g.problems.end())
            g.problems.push_back(r.problem);
        g.runs[r.algorithm][r.problem].push_back(&r);
    }
    return g;
}

std::vector<const RunRecord*> records_of(std::span<const RunRecord> records,
                                         const std::string& algorithm) {
    std::vector<const RunRecord*> out;
    for (const RunRecord& r : records) {
        if (r.algorithm == algorithm) out.push_back(&r);
    }
    return out;
}

std::vector<RunRecord> copy_records(const std::vector<const RunRecord*>& ptrs) {
    std::vector<RunRecord> out;
    out.reserve(ptrs.size());
    for (const RunRecord* p : ptrs) out.push_back(*p);
    return out;
}

} // namespace

Reports render_reports(std::span<const RunRecord> records, const ExperimentConfig& config,
                       double t0) {
    if (records.empty()) throw DataError("no test records to report on");
    const Grouping g = group(records);

    if (std::find(g.algorithms.begin(), g.algorithms.end(), "random-search") == g.algorithms.end()) {
        throw ConfigError("reports need random-search records: it is the AEI baseline");
    }
    const std::vector<RunRecord> rs_records = copy_records(records_of(records, "random-search"));

    std::map<std::string, AeiResult> aei_by_algorithm;
    for (const std::string& alg : g.algorithms) {
        aei_by_algorithm[alg] =
            aei(copy_records(records_of(records, alg)), rs_records, config.max_fes, t0);
    }

    Reports reports;

    // --- aei.csv: per-problem Z rows plus one aggregate row per algorithm.
    {
        std::ostringstream os;
        os << "algorithm,problem,z_obj,z_fes,z_com,score,score_std\n";
        for (const std::string& alg : g.algorithms) {
            const AeiResult& res = aei_by_algorithm.at(alg);
            for (const ProblemScore& ps : res.per_problem) {
                os << alg << ',' << ps.problem << ',' << fmt_g17(ps.z_obj) << ','
                   << fmt_g17(ps.z_fes) << ',' << fmt_g17(ps.z_com) << ',' << fmt_g17(ps.score)
                   << ",\n";
            }
            os << alg << ",aggregate,,,," << fmt_g17(res.aei) << ',' << fmt_g17(res.aei_std)
               << '\n';
        }
        reports.aei_csv = os.str();
    }

    // --- perf_table.md: per-problem Obj mean (std), Gap vs the reference
    // anchored at random-search = 1, and consumed FEs.
    {
        std::map<std::string, std::map<std::string, Cell>> obj, fes;
        for (const std::string& alg : g.algorithms) {
            for (const std::string& prob : g.problems) {
                const auto& runs = g.runs.at(alg).at(prob);
                std::vector<double> objs, fess;
                for (const RunRecord* r : runs) {
                    objs.push_back(r->v_obj_raw);
                    fess.push_back(static_cast<double>(r->v_fes_raw));
                }
                obj[alg][prob] = cell_of(objs);
                fes[alg][prob] = cell_of(fess);
            }
        }
        std::ostringstream os;
        os << "| Problem |";
        for (const std::string& alg : g.algorithms) {
            os << ' ' << alg << " Obj | " << alg << " Gap | " << alg << " FEs |";
        }
        os << '\n' << "|---|";
        for (std::size_t i = 0; i < g.algorithms.size(); ++i) os << "---|---|---|";
        os << '\n';
        for (const std::string& prob : g.problems) {
            os << "| " << prob << " |";
            const double ref_mean = obj.at(config.reference).at(prob).mean;
            const double rs_mean = obj.at("random-search").at(prob).mean;
            const double denom = std::max(rs_mean - ref_mean, 1e-12);
            for (const std::string& alg : g.algorithms) {
                const double gap = (obj.at(alg).at(prob).mean - ref_mean) / denom;
                os << ' ' << fmt_cell(obj.at(alg).at(prob)) << " | " << fmt_fixed3(gap) << " | "
                   << fmt_cell(fes.at(alg).at(prob)) << " |";
            }
            os << '\n';
        }
        reports.perf_table_md = os.str();
    }

    // --- walltime.csv: mean total run time and mean complexity Z.
    {
        std::ostringstream os;
        os << "algorithm,mean_t2_s,mean_z_com\n";
        for (const std::string& alg : g.algorithms) {
            double t2 = 0.0;
            std::size_t count = 0;
            for (const std::string& prob : g.problems) {
                for (const RunRecord* r : g.runs.at(alg).at(prob)) {
                    t2 += r->t2_s;
                    ++count;
                }
            }
            const AeiResult& res = aei_by_algorithm.at(alg);
            double z_com = 0.0;
            for (const ProblemScore& ps : res.per_problem) z_com += ps.z_com;
            z_com /= static_cast<double>(res.per_problem.size());
            os << alg << ',' << fmt_g17(t2 / static_cast<double>(count)) << ',' << fmt_g17(z_com)
               << '\n';
        }
        reports.walltime_csv = os.str();
    }

    // --- cost_curves.csv: per-algorithm mean of the per-run normalized
    // best-cost curve, (best - reference) / (initial best - reference).
    {
        // Reference per problem: known optimum if the key resolves to one,
        // otherwise the lowest cost any run reached.
        std::map<std::string, double> ref;
        for (const std::string& prob : g.problems) {
            const Problem p = problem_from_key(prob);
            if (p.f_star_known) {
                ref[prob] = p.f_star;
            } else {
                double lo = std::numeric_limits<double>::infinity();
                for (const std::string& alg : g.algorithms) {
                    for (const RunRecord* r : g.runs.at(alg).at(prob)) {
                        for (const auto& [fe, best] : r->trace) lo = std::min(lo, best);
                    }
                }
                ref[prob] = lo;
            }
        }
        std::size_t grid_len = 0;
        for (const RunRecord& r : records) grid_len = std::max(grid_len, r.trace.size());
        std::ostringstream os;
        os << "fes";
        for (const std::string& alg : g.algorithms) os << ',' << alg;
        os << '\n';
        for (std::size_t gi = 0; gi < grid_len; ++gi) {
            std::int64_t fes = 0;
            std::ostringstream row;
            for (const std::string& alg : g.algorithms) {
                double sum = 0.0;
                std::size_t count = 0;
                for (const std::string& prob : g.problems) {
                    for (const RunRecord* r : g.runs.at(alg).at(prob)) {
                        if (r->trace.empty()) {
                            throw DataError("record " + alg + '/' + prob + " run " +
                                            std::to_string(r->run) + " has no trace");
                        }
                        const std::size_t idx = std::min(gi, r->trace.size() - 1);
                        fes = r->trace[idx].first;
                        const double denom = r->trace.front().second - ref.at(prob);
                        double norm = 0.0;
                        if (denom > 0.0) {
                            norm = std::clamp((r->trace[idx].second - ref.at(prob)) / denom, 0.0, 1.0);
                        }
                        sum += norm;
                        ++count;
                    }
                }
                row << ',' << fmt_g17(sum / static_cast<double>(count));
            }
            os << fes << row.str() << '\n';
        }
        reports.cost_curves_csv = os.str();
    }

    return reports;
}

void logger_log(const std::filesystem::path& out_dir, const ExperimentConfig& config) {
    std::vector<RunRecord> records = records_from_csv(read_file(out_dir / "test" / "records.csv"));
    traces_from_csv(read_file(out_dir / "test" / "traces.csv"), records);
    const double t0 = config.timing == TimingMode::virtual_clock ? kVirtualT0 : measure_t0();
    const Reports reports = render_reports(records, config, t0);
    const std::filesystem::path dir = out_dir / "reports";
    std::filesystem::create_directories(dir);
    write_file(dir / "aei.csv", reports.aei_csv);
    write_file(dir / "perf_table.md", reports.perf_table_md);
    write_file(dir / "walltime.csv", reports.walltime_csv);
    write_file(dir / "cost_curves.csv", reports.cost_curves_csv);
}

} // namespace metabbo
