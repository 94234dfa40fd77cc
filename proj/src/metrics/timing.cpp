#include "metabbo/metrics/timing.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>

#include "metabbo/util/errors.hpp"

namespace metabbo {

std::string timing_mode_name(TimingMode mode) {
    return mode == TimingMode::virtual_clock ? "virtual" : "wall";
}

TimingMode timing_mode_from_name(const std::string& name) {
    if (name == "virtual") return TimingMode::virtual_clock;
    if (name == "wall") return TimingMode::wall_clock;
    throw ConfigError("unknown timing mode: " + name + " (use virtual or wall)");
}

double measure_t0() {
    std::array<double, 5> trials{};
    volatile double sink = 0.0; // keep the loop from being optimized away
    for (double& trial : trials) {
        const auto start = std::chrono::steady_clock::now();
        double acc = 0.55;
        for (int i = 0; i < 1000000; ++i) {
            acc += 1.000001;
            acc /= 1.000002;
            acc = std::log(acc + 1.5);
            acc = std::exp(acc * 0.5);
        }
        sink = sink + acc;
        const auto stop = std::chrono::steady_clock::now();
        trial = std::chrono::duration<double>(stop - start).count();
    }
    std::sort(trials.begin(), trials.end());
    return trials[2];
}

double virtual_step_seconds(const std::string& algorithm_id) {
    if (algorithm_id == "random-search") return 2e-6;
    if (algorithm_id == "de") return 1e-5;
    if (algorithm_id == "pso") return 1e-5;
    if (algorithm_id == "cmaes") return 5e-5;
    return 2e-5; // learned controllers: policy forward pass per generation
}

double virtual_run_jitter(int run) {
    // Log-scale factors alternate around zero so short run counts stay
    // roughly centered; the cycle gives any N >= 2 a stable spread.
    static constexpr std::array<double, 8> kLogSpread = {-0.35, 0.35, -0.25, 0.25,
                                                         -0.15, 0.15, -0.05, 0.05};
    const int slot = ((run - 1) % 8 + 8) % 8;
    return std::exp(kLogSpread[static_cast<std::size_t>(slot)]);
}

} // namespace metabbo
