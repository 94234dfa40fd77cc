#include "metabbo/testsuite/split.hpp"

#include <algorithm>

#include "metabbo/util/errors.hpp"

namespace metabbo {
namespace {

std::vector<Problem> build(Suite suite, const std::vector<int>& numbers, int dim, std::uint64_t seed) {
    std::vector<Problem> out;
    out.reserve(numbers.size());
    for (int no : numbers) out.push_back(make_instance(suite, no, dim, seed));
    return out;
}

void partition(int total, const std::vector<int>& quarter, std::vector<int>& small_part,
               std::vector<int>& large_part) {
    small_part = quarter;
    for (int no = 1; no <= total; ++no)
        if (std::find(quarter.begin(), quarter.end(), no) == quarter.end()) large_part.push_back(no);
}

} // namespace

std::string difficulty_name(Difficulty d) {
    return d == Difficulty::easy ? "easy" : "difficult";
}

Difficulty difficulty_from_name(const std::string& name) {
    if (name == "easy") return Difficulty::easy;
    if (name == "difficult") return Difficulty::difficult;
    throw ConfigError("unknown difficulty '" + name + "' (expected easy or difficult)");
}

const std::vector<int>& synthetic_quarter() {
    static const std::vector<int> q = {1, 5, 6, 10, 15, 20};
    return q;
}

const std::vector<int>& noisy_synthetic_quarter() {
    static const std::vector<int> q = {1, 5, 15, 16, 17, 19, 20, 25};
    return q;
}

DatasetSplit split_dataset(Suite suite, int dim, Difficulty difficulty, std::uint64_t seed) {
    DatasetSplit s;
    s.suite = suite;
    s.dim = suite == Suite::protein_docking ? 12 : dim;
    s.difficulty = difficulty;
    s.seed = seed;

    std::vector<int> train_nos, test_nos;
    if (suite == Suite::protein_docking) {
        // Split by complex so all ten starts of a complex stay on one side.
        std::vector<int> first21, last7;
        for (int no = 1; no <= 280; ++no) ((no - 1) / 10 < 21 ? first21 : last7).push_back(no);
        train_nos = difficulty == Difficulty::easy ? first21 : last7;
        test_nos = difficulty == Difficulty::easy ? last7 : first21;
    } else {
        const int total = suite == Suite::synthetic ? 24 : 30;
        const std::vector<int>& quarter =
            suite == Suite::synthetic ? synthetic_quarter() : noisy_synthetic_quarter();
        std::vector<int> small_part, large_part;
        partition(total, quarter, small_part, large_part);
        train_nos = difficulty == Difficulty::easy ? large_part : small_part;
        test_nos = difficulty == Difficulty::easy ? small_part : large_part;
    }

    s.train = build(suite, train_nos, s.dim, seed);
    s.test = build(suite, test_nos, s.dim, seed);
    return s;
}

} // namespace metabbo
