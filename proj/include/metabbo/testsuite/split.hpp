#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metabbo/testsuite/problem.hpp"

namespace metabbo {

enum class Difficulty { easy, difficult };

std::string difficulty_name(Difficulty d);
Difficulty difficulty_from_name(const std::string& name);

// Train/test partition of a suite. Instances are ordered by ascending
// function number and share the dataset seed, so an identical call yields an
// identical split.
struct DatasetSplit {
    Suite suite = Suite::synthetic;
    int dim = 0;
    Difficulty difficulty = Difficulty::easy;
    std::uint64_t seed = 0;
    std::vector<Problem> train;
    std::vector<Problem> test;
};

// The fixed 25% portions (by function number) of the two synthetic suites.
const std::vector<int>& synthetic_quarter();       // {1, 5, 6, 10, 15, 20}
const std::vector<int>& noisy_synthetic_quarter(); // {1, 5, 15, 16, 17, 19, 20, 25}

// Easy mode trains on the 75% portion and tests on the 25% portion;
// difficult mode swaps them. Protein docking splits by complex: easy trains
// on the first 21 complexes (instances 1..210, all ten starts per complex).
DatasetSplit split_dataset(Suite suite, int dim, Difficulty difficulty, std::uint64_t seed);

} // namespace metabbo
