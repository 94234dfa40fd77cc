#pragma once

#include <stdexcept>
#include <string>

namespace metabbo {

// Error taxonomy. Each class maps onto a CLI exit code:
//   UsageError -> 2, ConfigError/DataError -> 3, anything else -> 4.

// Bad command line: unknown flag, malformed value, invalid enum member.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Inconsistent or unsatisfiable configuration (e.g. maxFEs < population size,
// roster missing the random-search baseline when AEI is requested).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Broken or missing input data: unreadable CSV, corrupt checkpoint,
// mismatched record coverage.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Operation called in a state that forbids it (e.g. stepping a finished env).
struct StateError : std::logic_error {
    explicit StateError(const std::string& what) : std::logic_error(what) {}
};

// Registry slot exists but its evaluator is not provided in this build.
struct NotImplementedError : std::runtime_error {
    explicit NotImplementedError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace metabbo
