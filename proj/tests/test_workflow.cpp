#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "metabbo/agents/checkpoint.hpp"
#include "metabbo/agents/qlearning.hpp"
#include "metabbo/util/errors.hpp"
#include "metabbo/util/text.hpp"
#include "metabbo/workflow/experiment.hpp"
#include "metabbo/workflow/logger.hpp"
#include "metabbo/workflow/tester.hpp"
#include "metabbo/workflow/trainer.hpp"

using namespace metabbo;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "mbbo_test_workflow" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string file_bytes(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int line_count(const std::string& text) {
    int n = 0;
    for (char c : text)
        if (c == '\n') ++n;
    return n;
}

// Small but complete baseline-only experiment; finishes in well under a
// second per run.
ExperimentConfig tiny_config(const fs::path& out) {
    ExperimentConfig config;
    config.dim = 2;
    config.max_learning_steps = 1;
    config.test_runs = 2;
    config.max_fes = 300;
    config.seed = 7;
    config.baselines = {"random-search", "de"};
    config.reference = "de";
    config.out = out;
    return config;
}

const RunRecord& find_record(const std::vector<RunRecord>& records, const std::string& alg,
                             const std::string& problem, int run) {
    for (const RunRecord& r : records) {
        if (r.algorithm == alg && r.problem == problem && r.run == run) return r;
    }
    REQUIRE(false);
    return records.front();
}

} // namespace

TEST_CASE("config validation catches every structural mistake") {
    ExperimentConfig ok = tiny_config("/tmp/x");
    validate_config(ok); // must not throw

    ExperimentConfig bad = ok;
    bad.dim = 0;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = ok;
    bad.agent = "dqn";
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = ok;
    bad.backbone = "cma";
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = ok;
    bad.baselines = {"random-search", "nelder-mead"};
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = ok;
    bad.baselines = {"de", "pso"}; // the AEI baseline is not optional
    CHECK_THROWS_WITH_AS(validate_config(bad), doctest::Contains("random-search"), ConfigError);

    bad = ok;
    bad.reference = "cmaes"; // not in the roster above
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = ok;
    bad.out.clear();
    CHECK_THROWS_AS(validate_config(bad), ConfigError);

    bad = ok;
    bad.test_runs = 0;
    CHECK_THROWS_AS(validate_config(bad), ConfigError);
}

TEST_CASE("configs round-trip through their text form") {
    ExperimentConfig config;
    config.suite = Suite::noisy_synthetic;
    config.dim = 7;
    config.difficulty = Difficulty::difficult;
    config.max_learning_steps = 123;
    config.test_runs = 9;
    config.max_fes = 4567;
    config.seed = 99;
    config.agent = "ppo";
    config.backbone = "pso";
    config.baselines = {"random-search", "cmaes"};
    config.reference = "random-search";
    config.timing = TimingMode::wall_clock;
    config.threads = 3;
    config.out = "/tmp/somewhere";

    const ExperimentConfig back = config_from_text(config_to_text(config));
    CHECK(back.suite == config.suite);
    CHECK(back.dim == config.dim);
    CHECK(back.difficulty == config.difficulty);
    CHECK(back.max_learning_steps == config.max_learning_steps);
    CHECK(back.test_runs == config.test_runs);
    CHECK(back.max_fes == config.max_fes);
    CHECK(back.seed == config.seed);
    CHECK(back.agent == config.agent);
    CHECK(back.backbone == config.backbone);
    CHECK(back.baselines == config.baselines);
    CHECK(back.reference == config.reference);
    CHECK(back.timing == config.timing);
    CHECK(back.threads == config.threads);
    CHECK(back.out == config.out);
    // Serialize(parse(x)) is stable.
    CHECK(config_to_text(back) == config_to_text(config));

    // Comments and blank lines are fine; junk is not.
    const ExperimentConfig sparse = config_from_text("# defaults only\n\ndim = 4\n");
    CHECK(sparse.dim == 4);
    CHECK(sparse.backbone == "de");
    CHECK_THROWS_AS(config_from_text("dim: 4\n"), DataError);
    CHECK_THROWS_AS(config_from_text("dimension = 4\n"), DataError);
    CHECK_THROWS_AS(config_from_text("dim = four\n"), DataError);
}

TEST_CASE("the roster is the baselines plus the configured agent") {
    ExperimentConfig config = tiny_config("/tmp/x");
    CHECK(agent_algorithm_id(config).empty());
    CHECK(config_roster(config) == config.baselines);

    config.agent = "qlearning";
    CHECK(agent_algorithm_id(config) == "qlearning-de");
    const std::vector<std::string> roster = config_roster(config);
    REQUIRE(roster.size() == 3);
    CHECK(roster.back() == "qlearning-de");

    CHECK_THROWS_AS(resolve_roster({"qlearning-de"}, "qlearning-de", nullptr), ConfigError);
    CHECK_THROWS_AS(resolve_roster({"simplex"}, "", nullptr), ConfigError);
    const auto resolved = resolve_roster({"de", "random-search"}, "", nullptr);
    CHECK(resolved[0].classic == ClassicAlgo::de);
    CHECK(resolved[1].classic == ClassicAlgo::random_search);
}

TEST_CASE("validation returns are a fixed measurement") {
    const Problem sphere = make_instance(Suite::synthetic, 1, 3, 11);
    QAgent agent(BackboneKind::de, QConfig{}, 5);
    const double a = validation_return(agent, sphere, 300, 17);
    const double b = validation_return(agent, sphere, 300, 17);
    CHECK(a == b);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0 + 1e-12);
}

TEST_CASE("training emits checkpoints on the interval grid plus a final one") {
    const Problem sphere = make_instance(Suite::synthetic, 1, 3, 11);
    const std::vector<Problem> problems{sphere};

    // Episodes are 5 steps each (300 FEs = init 50 + 5 generations of 50).
    const fs::path dir = fresh_dir("trainer-cadence");
    QAgent agent(BackboneKind::de, QConfig{}, 9);
    const TrainResult result = trainer_train(agent, problems, 40, 300, 4, dir, 7);

    CHECK(result.total_steps == 40);
    CHECK(result.checkpoints == 6); // ceil(40 / 7)
    CHECK(agent.history().size() == 6);
    for (std::int64_t label : {7, 14, 21, 28, 35, 40}) {
        CHECK(fs::exists(dir / "checkpoints" / ("step-" + std::to_string(label) + ".ckpt")));
    }
    CHECK(result.final_checkpoint == dir / "final.ckpt");
    CHECK(fs::exists(result.final_checkpoint));

    // episodes.csv: header + one row per episode (40 steps / 5 per episode).
    const std::string episodes = file_bytes(dir / "episodes.csv");
    CHECK(episodes.rfind("episode,instance,steps,return\n", 0) == 0);
    CHECK(line_count(episodes) == 1 + 8);

    // returns.csv mirrors the in-memory history.
    std::ostringstream want;
    want << "step,mean_return\n";
    for (const auto& [step, value] : agent.history()) want << step << ',' << fmt_g17(value) << '\n';
    CHECK(file_bytes(dir / "returns.csv") == want.str());

    // The default interval is max_steps / 20.
    const fs::path dir2 = fresh_dir("trainer-default");
    QAgent agent2(BackboneKind::de, QConfig{}, 9);
    CHECK(trainer_train(agent2, problems, 40, 300, 4, dir2).checkpoints == 20);

    CHECK_THROWS_AS(trainer_train(agent, {}, 10, 300, 4, dir), ConfigError);
    CHECK_THROWS_AS(trainer_train(agent, problems, 0, 300, 4, dir), ConfigError);
}

TEST_CASE("training is deterministic and can stop at a target return") {
    const std::vector<Problem> problems{make_instance(Suite::synthetic, 1, 3, 11)};

    const fs::path dir_a = fresh_dir("trainer-det-a");
    const fs::path dir_b = fresh_dir("trainer-det-b");
    QAgent agent_a(BackboneKind::de, QConfig{}, 9);
    QAgent agent_b(BackboneKind::de, QConfig{}, 9);
    trainer_train(agent_a, problems, 40, 300, 4, dir_a);
    trainer_train(agent_b, problems, 40, 300, 4, dir_b);
    CHECK(file_bytes(dir_a / "final.ckpt") == file_bytes(dir_b / "final.ckpt"));
    CHECK(file_bytes(dir_a / "episodes.csv") == file_bytes(dir_b / "episodes.csv"));

    // Any validation return clears a -1 bar, so the first checkpoint stops
    // the run (the fine-tune-to-peak mechanism).
    const fs::path dir_c = fresh_dir("trainer-stop");
    QAgent agent_c(BackboneKind::de, QConfig{}, 9);
    const TrainResult stopped = trainer_train(agent_c, problems, 40, 300, 4, dir_c, 7, -1.0);
    CHECK(stopped.checkpoints == 1);
    CHECK(stopped.total_steps == 10); // first crossing of the 7-step interval
}

TEST_CASE("the tester covers the full grid with paired, budgeted, timed runs") {
    const std::vector<Problem> problems{make_instance(Suite::synthetic, 1, 2, 3),
                                        make_instance(Suite::synthetic, 3, 2, 3)};
    const auto roster = resolve_roster({"random-search", "de", "pso"}, "", nullptr);
    const std::vector<RunRecord> records =
        tester_test(roster, problems, 2, 300, 99, TimingMode::virtual_clock);

    CHECK(records.size() == 3 * 2 * 2);
    for (const RunRecord& r : records) {
        CHECK((r.run == 1 || r.run == 2));
        CHECK(r.v_obj_raw > 0.0);
        CHECK(r.v_fes_raw >= 50);
        CHECK(r.v_fes_raw <= 300 + 50);
        CHECK(r.trace.size() == 51);
        CHECK(r.trace.front().first == 0);
        CHECK(r.trace.back().first == 300);

        // Virtual clock: exact arithmetic from counters and fixed costs.
        CHECK(r.t1_s == static_cast<double>(r.v_fes_raw) * kVirtualEvalSeconds);
        const std::int64_t gens =
            r.algorithm == "random-search" ? r.v_fes_raw / 50 : r.v_fes_raw / 50 - 1;
        CHECK(r.t2_s == r.t1_s + static_cast<double>(gens) * virtual_step_seconds(r.algorithm) *
                            virtual_run_jitter(r.run));
    }

    // Paired runs: every population method draws the same first batch from
    // the shared (problem, run) environment seed.
    for (const auto& p : problems) {
        for (int run = 1; run <= 2; ++run) {
            const std::string key = problem_key(p);
            const double first_rs = find_record(records, "random-search", key, run).trace[0].second;
            CHECK(find_record(records, "de", key, run).trace[0].second == first_rs);
            CHECK(find_record(records, "pso", key, run).trace[0].second == first_rs);
        }
    }

    // Determinism across invocations.
    const std::vector<RunRecord> again =
        tester_test(roster, problems, 2, 300, 99, TimingMode::virtual_clock);
    REQUIRE(again.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(again[i].v_obj_raw == records[i].v_obj_raw);
        CHECK(again[i].v_fes_raw == records[i].v_fes_raw);
        CHECK(again[i].trace == records[i].trace);
    }

    CHECK_THROWS_AS(tester_test({}, problems, 2, 300, 99, TimingMode::virtual_clock), ConfigError);
    CHECK_THROWS_AS(tester_test(roster, {}, 2, 300, 99, TimingMode::virtual_clock), ConfigError);
    CHECK_THROWS_AS(tester_test(roster, problems, 0, 300, 99, TimingMode::virtual_clock),
                    ConfigError);
}

TEST_CASE("unknown-optimum objectives are anchored at the best run found") {
    const std::vector<Problem> problems{make_instance(Suite::protein_docking, 3, 12, 5)};
    const auto roster = resolve_roster({"random-search", "de"}, "", nullptr);
    const std::vector<RunRecord> records =
        tester_test(roster, problems, 2, 200, 1, TimingMode::virtual_clock);

    double lowest = records.front().v_obj_raw;
    for (const RunRecord& r : records) lowest = std::min(lowest, r.v_obj_raw);
    CHECK(lowest == 1e-12); // the anchoring run's own gap is exactly the epsilon
}

TEST_CASE("reports are structured and byte-stable") {
    ExperimentConfig config = tiny_config("/tmp/unused");
    const std::vector<Problem> problems{make_instance(Suite::synthetic, 1, 2, 3),
                                        make_instance(Suite::synthetic, 5, 2, 3)};
    const auto roster = resolve_roster(config.baselines, "", nullptr);
    const std::vector<RunRecord> records =
        tester_test(roster, problems, 3, config.max_fes, 42, config.timing);

    const Reports a = render_reports(records, config, kVirtualT0);
    const Reports b = render_reports(records, config, kVirtualT0);
    CHECK(a.aei_csv == b.aei_csv);
    CHECK(a.perf_table_md == b.perf_table_md);
    CHECK(a.walltime_csv == b.walltime_csv);
    CHECK(a.cost_curves_csv == b.cost_curves_csv);

    CHECK(a.aei_csv.rfind("algorithm,problem,z_obj,z_fes,z_com,score,score_std\n", 0) == 0);
    // Per algorithm: one row per problem plus the aggregate row.
    CHECK(line_count(a.aei_csv) == 1 + 2 * (2 + 1));
    CHECK(a.aei_csv.find("random-search,aggregate,,,,1,0\n") != std::string::npos);

    CHECK(a.perf_table_md.rfind("| Problem |", 0) == 0);
    CHECK(a.perf_table_md.find("de Obj | de Gap | de FEs") != std::string::npos);
    CHECK(line_count(a.perf_table_md) == 2 + 2); // header, rule, one row per problem

    CHECK(a.walltime_csv.rfind("algorithm,mean_t2_s,mean_z_com\n", 0) == 0);
    CHECK(line_count(a.walltime_csv) == 1 + 2);

    CHECK(a.cost_curves_csv.rfind("fes,random-search,de\n", 0) == 0);
    CHECK(line_count(a.cost_curves_csv) == 1 + 51);
    // Curves are normalized into [0, 1] and start at 1.
    std::istringstream curves(a.cost_curves_csv);
    std::string line;
    std::getline(curves, line);
    std::getline(curves, line);
    CHECK(line == "0,1,1");

    // Reports without the baseline are refused; so are empty record sets.
    std::vector<RunRecord> no_rs;
    for (const RunRecord& r : records)
        if (r.algorithm != "random-search") no_rs.push_back(r);
    CHECK_THROWS_AS(render_reports(no_rs, config, kVirtualT0), ConfigError);
    CHECK_THROWS_AS(render_reports({}, config, kVirtualT0), DataError);
}

TEST_CASE("a baselines-only experiment produces the full layout deterministically") {
    const fs::path out_a = fresh_dir("exp-a");
    const fs::path out_b = fresh_dir("exp-b");
    const ExperimentLedger ledger = run_experiment(tiny_config(out_a));

    // 2 algorithms x 6 test problems x 2 runs, no training phase.
    CHECK(ledger.records.size() == 2 * 6 * 2);
    CHECK(ledger.training_steps == 0);
    CHECK(ledger.final_checkpoint.empty());
    CHECK_FALSE(fs::exists(out_a / "train"));
    CHECK(fs::exists(out_a / "config.snapshot"));
    CHECK(fs::exists(out_a / "test" / "records.csv"));
    CHECK(fs::exists(out_a / "test" / "traces.csv"));
    CHECK(fs::exists(out_a / "test" / "DONE"));
    for (const char* name : {"aei.csv", "perf_table.md", "walltime.csv", "cost_curves.csv", "DONE"}) {
        CHECK(fs::exists(out_a / "reports" / name));
    }

    // The same configuration in a different directory yields byte-identical
    // reports: nothing in them depends on where they land.
    run_experiment(tiny_config(out_b));
    for (const char* name : {"aei.csv", "perf_table.md", "walltime.csv", "cost_curves.csv"}) {
        CHECK(file_bytes(out_a / "reports" / name) == file_bytes(out_b / "reports" / name));
    }
}

TEST_CASE("experiments resume from completed phases and refuse foreign directories") {
    const fs::path out = fresh_dir("exp-resume");
    ExperimentConfig config = tiny_config(out);
    config.agent = "qlearning";
    config.baselines = {"random-search"};
    config.reference = "random-search";
    config.max_learning_steps = 60;
    config.test_runs = 1;
    config.max_fes = 250;

    // Stop after training: the test and report phases have not run yet.
    const ExperimentLedger trained = run_experiment(config, Phase::train);
    CHECK(trained.training_steps == 60);
    CHECK(fs::exists(out / "train" / "DONE"));
    CHECK(fs::exists(out / "train" / "final.ckpt"));
    CHECK_FALSE(fs::exists(out / "test"));

    // Finishing the experiment reuses the trained agent (the step counter in
    // the checkpoint proves no retraining happened).
    const ExperimentLedger full = run_experiment(config);
    CHECK(full.training_steps == 60);
    CHECK(full.records.size() == 2 * 6 * 1);
    CHECK(load_checkpoint(out / "train" / "final.ckpt")->learning_steps() == 60);

    // Rerunning a finished experiment reloads the stored records unchanged.
    const ExperimentLedger again = run_experiment(config);
    REQUIRE(again.records.size() == full.records.size());
    for (std::size_t i = 0; i < full.records.size(); ++i) {
        CHECK(again.records[i].algorithm == full.records[i].algorithm);
        CHECK(again.records[i].problem == full.records[i].problem);
        CHECK(again.records[i].v_obj_raw == full.records[i].v_obj_raw);
        CHECK(again.records[i].v_fes_raw == full.records[i].v_fes_raw);
        CHECK(again.records[i].trace == full.records[i].trace);
    }

    // A different configuration must not overwrite this directory.
    ExperimentConfig foreign = config;
    foreign.seed = 8;
    CHECK_THROWS_WITH_AS(run_experiment(foreign), doctest::Contains("config.snapshot"),
                         ConfigError);

    // The tester seed replay hook is pure in the config.
    CHECK(experiment_tester_seed(config) == experiment_tester_seed(config));
    CHECK(experiment_tester_seed(config) != experiment_tester_seed(foreign));
}
