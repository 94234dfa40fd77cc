#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "metabbo/testsuite/problem.hpp"
#include "metabbo/util/errors.hpp"
#include "metabbo/util/rng.hpp"
#include "support/oracles.hpp"

using namespace metabbo;

namespace {

// |a - b| relative to the larger magnitude, with an absolute floor so values
// near zero do not blow the ratio up.
double rel_err(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1.0});
}

} // namespace

TEST_CASE("registries list the documented functions") {
    const auto& synth = synthetic_registry();
    const auto& noisy = noisy_registry();
    REQUIRE(synth.size() == 24);
    REQUIRE(noisy.size() == 30);

    std::set<std::string> names;
    for (std::size_t i = 0; i < synth.size(); ++i) {
        CHECK(synth[i].no == static_cast<int>(i) + 1);
        names.insert(synth[i].name);
    }
    CHECK(names.size() == synth.size()); // names unique

    for (std::size_t i = 0; i < noisy.size(); ++i) {
        CHECK(noisy[i].fn.no == static_cast<int>(i) + 1);
        CHECK(noisy[i].noise != NoiseKind::none);
    }
}

TEST_CASE("every base objective is zero at the origin") {
    for (const FunctionInfo& info : synthetic_registry()) {
        const Problem p = make_instance(Suite::synthetic, info.no, 6, 99);
        const std::vector<double> zero(6, 0.0);
        BaseContext ctx;
        ctx.shift = p.shift;
        ctx.peaks = p.peaks.get();
        CHECK_MESSAGE(std::fabs(base_eval(info.base, zero, ctx)) <= 1e-9, info.name);
    }
}

TEST_CASE("synthetic instances hit f* at the shifted optimum") {
    for (int dim : {2, 10}) {
        for (const FunctionInfo& info : synthetic_registry()) {
            const Problem p = make_instance(Suite::synthetic, info.no, dim, 42);
            const double at_opt = evaluate_raw(p, p.shift);
            CHECK_MESSAGE(std::fabs(at_opt - info.f_star) <= 1e-9,
                          info.name << " dim " << dim << ": " << at_opt << " vs " << info.f_star);
        }
        for (const NoisyFunctionInfo& info : noisy_registry()) {
            const Problem p = make_instance(Suite::noisy_synthetic, info.fn.no, dim, 42);
            CHECK(std::fabs(evaluate_raw(p, p.shift) - info.fn.f_star) <= 1e-9);
        }
    }
}

TEST_CASE("base evaluation matches the scalar oracle on random points") {
    Rng rng(2024);
    for (const FunctionInfo& info : synthetic_registry()) {
        // The instance only supplies context data (slope signs, peak set).
        const Problem p = make_instance(Suite::synthetic, info.no, 8, 7);
        BaseContext ctx;
        ctx.shift = p.shift;
        ctx.peaks = p.peaks.get();
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<double> z(8);
            for (double& v : z) v = rng.uniform(-5.0, 5.0);
            const double lib = base_eval(info.base, z, ctx);
            const double ref = oracle::base_value(info.base, z, p.shift, p.peaks.get());
            CHECK_MESSAGE(rel_err(lib, ref) <= 1e-9,
                          info.name << ": " << lib << " vs oracle " << ref);
        }
    }
}

TEST_CASE("full pipeline applies shift, rotation, and offset") {
    Rng rng(5);
    for (int no : {6, 9, 15, 21, 23}) { // rotated entries across base kinds
        const Problem p = make_instance(Suite::synthetic, no, 5, 11);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> x(5), z(5, 0.0);
            for (double& v : x) v = rng.uniform(-5.0, 5.0);
            for (int r = 0; r < 5; ++r)
                for (int c = 0; c < 5; ++c)
                    z[static_cast<std::size_t>(r)] +=
                        p.rotation.at(r, c) * (x[static_cast<std::size_t>(c)] - p.shift[static_cast<std::size_t>(c)]);
            const double expected =
                oracle::base_value(p.base, z, p.shift, p.peaks.get()) + p.f_star;
            CHECK(rel_err(evaluate_raw(p, x), expected) <= 1e-9);
        }
    }
}

TEST_CASE("instance rotations are orthonormal") {
    for (int no : {6, 12, 24}) {
        const Problem p = make_instance(Suite::synthetic, no, 7, 3);
        for (int i = 0; i < 7; ++i) {
            for (int j = 0; j < 7; ++j) {
                double dot = 0.0;
                for (int k = 0; k < 7; ++k) dot += p.rotation.at(k, i) * p.rotation.at(k, j);
                CHECK(std::fabs(dot - (i == j ? 1.0 : 0.0)) <= 1e-12);
            }
        }
    }
    const Problem plain = make_instance(Suite::synthetic, 1, 4, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(plain.rotation.at(i, j) == (i == j ? 1.0 : 0.0));
}

TEST_CASE("instances are deterministic in their arguments") {
    const Problem a = make_instance(Suite::synthetic, 17, 10, 123);
    const Problem b = make_instance(Suite::synthetic, 17, 10, 123);
    CHECK(a.shift == b.shift);
    CHECK(a.rotation.a == b.rotation.a);

    const Problem c = make_instance(Suite::synthetic, 17, 10, 124);
    CHECK(a.shift != c.shift);
}

TEST_CASE("problem keys round-trip") {
    const Problem p = make_instance(Suite::noisy_synthetic, 13, 10, 77);
    const Problem q = problem_from_key(problem_key(p));
    CHECK(q.suite == p.suite);
    CHECK(q.function_no == p.function_no);
    CHECK(q.dim == p.dim);
    CHECK(q.seed == p.seed);
    CHECK(q.shift == p.shift);

    CHECK_THROWS_AS(problem_from_key("synthetic/3/10"), DataError);
    CHECK_THROWS_AS(make_instance(Suite::synthetic, 25, 10, 1), ConfigError);
    CHECK_THROWS_AS(make_instance(Suite::synthetic, 0, 10, 1), ConfigError);
}
