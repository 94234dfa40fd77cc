#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>

namespace metabbo {

// splitmix64 mixing step; used to derive independent sub-seeds from a master
// seed plus a list of counters (phase id, problem index, run index, ...).
// The scheme is pure integer arithmetic, so derived streams are reproducible
// across platforms and independent of evaluation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> parts) {
    std::uint64_t s = splitmix64(master);
    for (std::uint64_t p : parts) s = splitmix64(s ^ (p + 0x9e3779b97f4a7c15ULL));
    return s;
}

// Deterministic random source. The engine (mt19937_64) is bit-exact per the
// C++ standard; the variate transforms below are our own because the standard
// library distributions are implementation-defined and would break
// reproducibility across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1): 53 random mantissa bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]: never returns zero (safe under log()).
    double uniform01_open() { return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Integer in [0, n). n must be positive; modulo bias is negligible for the
    // small ranges used here (population and action indices).
    int uniform_int(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

    // Standard normal via Box-Muller (no cached spare: keeps the consumed
    // stream length a pure function of the call sequence).
    double normal() {
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Standard Cauchy via inverse CDF.
    double cauchy() { return std::tan(3.14159265358979323846 * (uniform01() - 0.5)); }

    // Engine state round-trips through decimal text (standardized format);
    // used by agent checkpoints.
    std::string serialize() const {
        std::ostringstream os;
        os << eng_;
        return os.str();
    }
    void deserialize(const std::string& text) {
        std::istringstream is(text);
        is >> eng_;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace metabbo
