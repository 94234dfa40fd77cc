#pragma once

#include <cstdint>
#include <string>

namespace metabbo {

// How run times enter the complexity metric. The virtual clock charges fixed
// per-evaluation and per-generation costs, making every timing-dependent
// report deterministic and byte-reproducible; the wall clock measures real
// time and is documented as machine- and load-dependent.
enum class TimingMode { virtual_clock, wall_clock };

std::string timing_mode_name(TimingMode mode);
TimingMode timing_mode_from_name(const std::string& name); // ConfigError otherwise

// Reference-loop time: 10^6 iterations of add/divide/log/exp on a rolling
// accumulator, median of 5 trials, seconds.
double measure_t0();

// Deterministic stand-ins used by the virtual clock.
inline constexpr double kVirtualT0 = 1e-6;          // reference loop, seconds
inline constexpr double kVirtualEvalSeconds = 1e-6; // one function evaluation

// Fixed per-generation overhead of each algorithm under the virtual clock.
// Values are stand-ins chosen to order methods by real bookkeeping cost.
double virtual_step_seconds(const std::string& algorithm_id);

// Deterministic run-to-run spread of the virtual clock: run n's step cost is
// scaled by exp of a fixed +/- cycle. Without it every run of an algorithm
// takes the identical virtual time, the baseline spread of the complexity
// term collapses to the epsilon floor, and complexity z-scores explode.
// Runs are 1-based.
double virtual_run_jitter(int run);

} // namespace metabbo
