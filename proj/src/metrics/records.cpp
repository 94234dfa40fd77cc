#include "metabbo/metrics/records.hpp"

#include <sstream>
#include <unordered_map>

#include "metabbo/util/errors.hpp"
#include "metabbo/util/text.hpp"

namespace metabbo {
namespace {

constexpr const char* kRecordsHeader = "algorithm,problem,run,v_obj_raw,v_fes_raw,t1_s,t2_s";
constexpr const char* kTracesHeader = "algorithm,problem,run,fes,best_cost";

std::vector<std::string> csv_fields(const std::string& line, std::size_t expected,
                                    std::size_t line_no, const char* what) {
    std::vector<std::string> fields = split(line, ',');
    if (fields.size() != expected) {
        throw DataError(std::string(what) + " line " + std::to_string(line_no) + ": expected " +
                        std::to_string(expected) + " fields, got " + std::to_string(fields.size()));
    }
    return fields;
}

} // namespace

std::string records_to_csv(std::span<const RunRecord> records) {
    std::ostringstream os;
    os << kRecordsHeader << '\n';
    for (const RunRecord& r : records) {
        os << r.algorithm << ',' << r.problem << ',' << r.run << ',' << fmt_g17(r.v_obj_raw) << ','
           << r.v_fes_raw << ',' << fmt_g17(r.t1_s) << ',' << fmt_g17(r.t2_s) << '\n';
    }
    return os.str();
}

std::vector<RunRecord> records_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kRecordsHeader) {
        throw DataError("records CSV: missing or wrong header");
    }
    std::vector<RunRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> f = csv_fields(line, 7, line_no, "records CSV");
        RunRecord r;
        r.algorithm = f[0];
        r.problem = f[1];
        r.run = static_cast<int>(parse_int(f[2], "run"));
        r.v_obj_raw = parse_double(f[3], "v_obj_raw");
        r.v_fes_raw = parse_int(f[4], "v_fes_raw");
        r.t1_s = parse_double(f[5], "t1_s");
        r.t2_s = parse_double(f[6], "t2_s");
        records.push_back(std::move(r));
    }
    return records;
}

std::string traces_to_csv(std::span<const RunRecord> records) {
    std::ostringstream os;
    os << kTracesHeader << '\n';
    for (const RunRecord& r : records) {
        for (const auto& [fes, best] : r.trace) {
            os << r.algorithm << ',' << r.problem << ',' << r.run << ',' << fes << ','
               << fmt_g17(best) << '\n';
        }
    }
    return os.str();
}

void traces_from_csv(const std::string& text, std::vector<RunRecord>& records) {
    std::unordered_map<std::string, RunRecord*> by_key;
    for (RunRecord& r : records) {
        by_key[r.algorithm + '\t' + r.problem + '\t' + std::to_string(r.run)] = &r;
    }
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kTracesHeader) {
        throw DataError("traces CSV: missing or wrong header");
    }
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::vector<std::string> f = csv_fields(line, 5, line_no, "traces CSV");
        const std::string key = f[0] + '\t' + f[1] + '\t' + f[2];
        auto it = by_key.find(key);
        if (it == by_key.end()) {
            throw DataError("traces CSV line " + std::to_string(line_no) +
                            ": no matching record for " + f[0] + '/' + f[1] + " run " + f[2]);
        }
        it->second->trace.emplace_back(parse_int(f[3], "fes"), parse_double(f[4], "best_cost"));
    }
}

} // namespace metabbo
