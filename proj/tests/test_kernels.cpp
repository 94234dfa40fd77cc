#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include <vector>

#include "metabbo/testsuite/docking.hpp"
#include "metabbo/testsuite/eval_batch.hpp"
#include "metabbo/testsuite/problem.hpp"
#include "metabbo/util/rng.hpp"

using namespace metabbo;

namespace {

Mat random_points(const Problem& p, int rows, Rng& rng) {
    Mat points(rows, p.dim);
    for (int i = 0; i < rows; ++i)
        for (int d = 0; d < p.dim; ++d)
            points.at(i, d) = rng.uniform(p.lower[static_cast<std::size_t>(d)],
                                          p.upper[static_cast<std::size_t>(d)]);
    return points;
}

void check_batch_matches_serial(const Problem& p, std::uint64_t noise_seed) {
    Rng rng(91);
    const Mat points = random_points(p, 64, rng);
    std::vector<double> raw_p(64), noisy_p(64), raw_s(64), noisy_s(64);
    evaluate_batch(p, points, raw_p, noisy_p, noise_seed, 128);
    evaluate_batch_serial(p, points, raw_s, noisy_s, noise_seed, 128);
    CHECK(raw_p == raw_s);
    CHECK(noisy_p == noisy_s);
}

} // namespace

TEST_CASE("parallel batch evaluation is bit-equal to the serial reference") {
    check_batch_matches_serial(make_instance(Suite::synthetic, 15, 10, 4), 77);
    check_batch_matches_serial(make_instance(Suite::noisy_synthetic, 8, 5, 4), 77);
    check_batch_matches_serial(make_instance(Suite::protein_docking, 42, 12, 4), 77);
}

TEST_CASE("results do not depend on the OpenMP thread count") {
    const Problem p = make_instance(Suite::noisy_synthetic, 17, 10, 6);
    Rng rng(5);
    const Mat points = random_points(p, 50, rng);

    std::vector<double> raw_ref(50), noisy_ref(50);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    evaluate_batch(p, points, raw_ref, noisy_ref, 13, 0);
    for (int threads : {2, 3, 7}) {
        omp_set_num_threads(threads);
        std::vector<double> raw(50), noisy(50);
        evaluate_batch(p, points, raw, noisy, 13, 0);
        CHECK(raw == raw_ref);
        CHECK(noisy == noisy_ref);
    }
    omp_set_num_threads(saved);
}

TEST_CASE("noise keys follow the evaluation counter, not the batch shape") {
    const Problem p = make_instance(Suite::noisy_synthetic, 2, 6, 3);
    Rng rng(11);
    const Mat points = random_points(p, 40, rng);

    // One 40-row batch at fe_base 200 ...
    std::vector<double> raw_all(40), noisy_all(40);
    evaluate_batch(p, points, raw_all, noisy_all, 99, 200);

    // ... must equal the same rows split into 40 single-point batches with
    // the counter advanced between them.
    for (int i = 0; i < 40; ++i) {
        Mat one(1, p.dim);
        for (int d = 0; d < p.dim; ++d) one.at(0, d) = points.at(i, d);
        std::vector<double> raw(1), noisy(1);
        evaluate_batch(p, one, raw, noisy, 99, 200 + i);
        CHECK(raw[0] == raw_all[static_cast<std::size_t>(i)]);
        CHECK(noisy[0] == noisy_all[static_cast<std::size_t>(i)]);
    }

    // A different counter origin changes the noise stream but never the raw
    // values.
    std::vector<double> raw_b(40), noisy_b(40);
    evaluate_batch(p, points, raw_b, noisy_b, 99, 0);
    CHECK(raw_b == raw_all);
    CHECK(noisy_b != noisy_all);
}

TEST_CASE("noiseless suites report the raw value as the observable") {
    for (Suite suite : {Suite::synthetic, Suite::protein_docking}) {
        const Problem p = make_instance(suite, 7, suite == Suite::protein_docking ? 12 : 8, 2);
        Rng rng(21);
        const Mat points = random_points(p, 16, rng);
        std::vector<double> raw(16), noisy(16);
        evaluate_batch(p, points, raw, noisy, 55, 0);
        CHECK(raw == noisy);
        for (int i = 0; i < 16; ++i) {
            std::vector<double> x(static_cast<std::size_t>(p.dim));
            for (int d = 0; d < p.dim; ++d) x[static_cast<std::size_t>(d)] = points.at(i, d);
            CHECK(raw[static_cast<std::size_t>(i)] == evaluate_raw(p, x));
        }
    }
}

TEST_CASE("docking kernel agrees with its serial reference on random poses") {
    Rng rng(31);
    for (int complex_no : {0, 9, 27}) {
        const DockingInstance inst = make_docking_instance(complex_no, 1, 8);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> pose(12);
            for (int i = 0; i < 3; ++i) pose[static_cast<std::size_t>(i)] = rng.uniform(-3.14, 3.14);
            for (int i = 3; i < 12; ++i) pose[static_cast<std::size_t>(i)] = rng.uniform(-8.0, 8.0);
            CHECK(docking_energy(inst, pose) == docking_energy_serial(inst, pose));
        }
    }
}
