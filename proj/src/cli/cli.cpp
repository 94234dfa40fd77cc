#include "metabbo/cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "metabbo/agents/checkpoint.hpp"
#include "metabbo/metrics/aei.hpp"
#include "metabbo/metrics/timing.hpp"
#include "metabbo/metrics/transfer.hpp"
#include "metabbo/testsuite/functions.hpp"
#include "metabbo/util/errors.hpp"
#include "metabbo/util/text.hpp"
#include "metabbo/workflow/experiment.hpp"
#include "metabbo/workflow/logger.hpp"
#include "metabbo/workflow/tester.hpp"
#include "metabbo/workflow/trainer.hpp"

namespace metabbo {
namespace {

std::string slurp(const std::filesystem::path& path, const char* hint) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string() + (hint ? std::string(": ") + hint : ""));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ExperimentConfig load_snapshot(const std::filesystem::path& out_dir) {
    return config_from_text(
        slurp(out_dir / "config.snapshot", "not an experiment directory; run run-experiment first"));
}

// Wires the experiment flags onto one subcommand; every subcommand that
// builds a config gets the identical grammar. max-fes 0 means "suite
// default" (resolved after parsing).
void add_config_flags(CLI::App* cmd, ExperimentConfig& config, std::string& suite_name_arg,
                      std::string& difficulty_arg, std::string& timing_arg,
                      std::string& config_path_arg) {
    cmd->add_option("--problem-type", suite_name_arg, "Problem suite")
        ->check(CLI::IsMember({"synthetic", "noisy-synthetic", "protein-docking"}))
        ->capture_default_str();
    cmd->add_option("--dim", config.dim, "Problem dimension")->capture_default_str();
    cmd->add_option("--difficulty", difficulty_arg, "Train/test split difficulty")
        ->check(CLI::IsMember({"easy", "difficult"}))
        ->capture_default_str();
    cmd->add_option("--max-learning-steps", config.max_learning_steps,
                    "Learning-step budget M for training")
        ->capture_default_str();
    cmd->add_option("--test-runs", config.test_runs, "Independent test runs per problem (N)")
        ->capture_default_str();
    cmd->add_option("--max-fes", config.max_fes,
                    "Evaluation budget per run (0: 20000, or 1000 on protein-docking)")
        ->default_val(0);
    cmd->add_option("--seed", config.seed, "Master seed")->capture_default_str();
    cmd->add_option("--agent", config.agent, "Agent kind: qlearning, reinforce, ppo, or empty")
        ->capture_default_str();
    cmd->add_option("--backbone", config.backbone, "Backbone the agent drives")
        ->check(CLI::IsMember({"de", "pso"}))
        ->capture_default_str();
    cmd->add_option("--baselines", config.baselines, "Baseline algorithm ids")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--reference", config.reference, "Gap reference algorithm")
        ->capture_default_str();
    cmd->add_option("--timing", timing_arg, "Run-time accounting: virtual or wall")
        ->check(CLI::IsMember({"virtual", "wall"}))
        ->capture_default_str();
    cmd->add_option("--threads", config.threads, "OpenMP threads (0: library default)")
        ->capture_default_str();
    cmd->add_option("--out", config.out, "Output directory");
    cmd->add_option("--config", config_path_arg,
                    "key = value file with the same keys as the flags; explicit flags win");
}

// Applies a config file to whatever the command line left unset. Done by
// hand because CLI11 only reads config files registered on the root command,
// and ours belong to the subcommands. The format matches config.snapshot, so
// a stored experiment snapshot can seed a new invocation directly.
void apply_config_file(CLI::App* cmd, const std::string& path) {
    std::istringstream in(slurp(path, "config file given with --config"));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::string where = path + " line " + std::to_string(line_no);
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) throw UsageError(where + ": expected key = value");
        std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        while (!key.empty() && key.front() == '-') key.erase(key.begin());
        CLI::Option* opt = key == "config" ? nullptr : cmd->get_option_no_throw("--" + key);
        if (opt == nullptr) throw UsageError(where + ": unknown key " + key);
        if (opt->count() > 0) continue; // the flag was given explicitly
        if (value.empty()) continue;    // blank snapshot fields keep the default
        try {
            opt->add_result(value);
            opt->run_callback();
        } catch (const CLI::ParseError& e) {
            throw UsageError(where + ": " + e.what());
        }
    }
}

ExperimentConfig finish_config(ExperimentConfig config, const std::string& suite_arg,
                               const std::string& difficulty_arg, const std::string& timing_arg) {
    config.suite = suite_from_name(suite_arg);
    config.difficulty = difficulty_from_name(difficulty_arg);
    config.timing = timing_mode_from_name(timing_arg);
    if (config.max_fes == 0) {
        config.max_fes = config.suite == Suite::protein_docking ? 1000 : 20000;
    }
    if (config.out.empty()) throw UsageError("--out is required");
    return config;
}

int cmd_report(const std::filesystem::path& out_dir) {
    const ExperimentConfig config = load_snapshot(out_dir);
    logger_log(out_dir, config);
    std::cout << slurp(out_dir / "reports" / "perf_table.md", nullptr) << '\n';
    std::cout << "reports written to " << (out_dir / "reports").string() << '\n';
    return 0;
}

// AEI of a foreign checkpoint on this experiment's test conditions, scored
// against the experiment's stored random-search records.
double cross_suite_aei(const std::filesystem::path& checkpoint,
                       const std::filesystem::path& target_dir,
                       const ExperimentConfig& target) {
    std::vector<RunRecord> stored =
        records_from_csv(slurp(target_dir / "test" / "records.csv",
                               "target experiment has no test records; run it first"));
    traces_from_csv(slurp(target_dir / "test" / "traces.csv", nullptr), stored);
    std::vector<RunRecord> rs_records;
    for (RunRecord& r : stored) {
        if (r.algorithm == "random-search") rs_records.push_back(std::move(r));
    }
    if (rs_records.empty()) {
        throw DataError("target experiment has no random-search records; AEI needs the baseline");
    }

    const std::unique_ptr<Agent> agent = load_checkpoint(checkpoint);
    const std::string id = agent->kind() + "-" + backbone_name(agent->backbone());
    const DatasetSplit split =
        split_dataset(target.suite, target.dim, target.difficulty, target.seed);
    std::vector<AlgorithmRef> roster(1);
    roster[0].id = id;
    roster[0].agent = agent.get();
    std::vector<RunRecord> records =
        tester_test(roster, split.test, target.test_runs, target.max_fes,
                    experiment_tester_seed(target), target.timing);

    // Unknown-optimum problems: re-anchor both record sets' objective gaps on
    // the best cost across the union, or the comparison would be skewed.
    if (target.suite == Suite::protein_docking) {
        std::map<std::string, double> lo;
        const auto scan = [&](const std::vector<RunRecord>& rs) {
            for (const RunRecord& r : rs) {
                for (const auto& [fe, best] : r.trace) {
                    auto [it, inserted] = lo.try_emplace(r.problem, best);
                    if (!inserted && best < it->second) it->second = best;
                }
            }
        };
        scan(records);
        scan(rs_records);
        const auto reanchor = [&](std::vector<RunRecord>& rs) {
            for (RunRecord& r : rs) {
                r.v_obj_raw = (r.trace.back().second - lo.at(r.problem)) + 1e-12;
            }
        };
        reanchor(records);
        reanchor(rs_records);
    }
    const double t0 = target.timing == TimingMode::virtual_clock ? kVirtualT0 : measure_t0();
    return aei(records, rs_records, target.max_fes, t0).aei;
}

// The aggregate AEI the target experiment recorded for its own agent.
double target_own_aei(const std::filesystem::path& target_dir, const ExperimentConfig& target) {
    const std::string agent_id = agent_algorithm_id(target);
    if (agent_id.empty()) {
        throw DataError("target experiment " + target_dir.string() +
                        " trained no agent; run run-experiment with --agent there first");
    }
    const std::string csv = slurp(target_dir / "reports" / "aei.csv",
                                  "target experiment has no AEI report; run it to completion");
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        const std::vector<std::string> f = split(line, ',');
        if (f.size() >= 6 && f[0] == agent_id && f[1] == "aggregate") {
            return parse_double(f[5], "aggregate AEI");
        }
    }
    throw DataError("no aggregate AEI row for " + agent_id + " in " + target_dir.string());
}

int cmd_mgd(const std::vector<std::string>& checkpoints, const std::vector<std::string>& targets,
            const std::string& out_csv) {
    std::ostringstream csv;
    csv << "source";
    for (const std::string& t : targets) csv << ',' << t;
    csv << '\n';
    for (const std::string& ckpt : checkpoints) {
        csv << ckpt;
        for (const std::string& target_dir : targets) {
            const ExperimentConfig target = load_snapshot(target_dir);
            const double aei_a = cross_suite_aei(ckpt, target_dir, target);
            const double aei_b = target_own_aei(target_dir, target);
            const double value = mgd(aei_a, aei_b);
            std::cout << "MGD(" << ckpt << " -> " << target_dir << ") = " << fmt_fixed(value, 3)
                      << "% (AEI " << fmt_g17(aei_a) << " vs " << fmt_g17(aei_b) << ")\n";
            csv << ',' << fmt_g17(value);
        }
        csv << '\n';
    }
    if (!out_csv.empty()) {
        std::ofstream out(out_csv, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + out_csv);
        out << csv.str();
    }
    return 0;
}

int cmd_mte(const std::filesystem::path& scratch_dir, const std::filesystem::path& pretrain,
            const std::string& out_csv) {
    const ExperimentConfig scratch = load_snapshot(scratch_dir);
    if (!std::filesystem::exists(scratch_dir / "train" / "returns.csv")) {
        throw DataError("scratch experiment has no training history; run it with an agent first");
    }
    std::vector<std::pair<std::int64_t, double>> scratch_history;
    {
        std::istringstream in(slurp(scratch_dir / "train" / "returns.csv", nullptr));
        std::string line;
        std::getline(in, line); // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const std::vector<std::string> f = split(line, ',');
            scratch_history.emplace_back(parse_int(f.at(0), "step"),
                                         parse_double(f.at(1), "mean_return"));
        }
    }
    double peak = scratch_history.empty() ? 0.0 : scratch_history.front().second;
    for (const auto& [step, v] : scratch_history) peak = std::max(peak, v);

    std::unique_ptr<Agent> agent = load_checkpoint(pretrain);
    checkpoint_restore_counters(*agent, 0, 0); // fine-tuning restarts the step counter
    agent->history().clear();
    const DatasetSplit split =
        split_dataset(scratch.suite, scratch.dim, scratch.difficulty, scratch.seed);
    const std::filesystem::path finetune_dir = scratch_dir / "mte-finetune";
    std::filesystem::create_directories(finetune_dir);
    trainer_train(*agent, split.train, scratch.max_learning_steps, scratch.max_fes,
                  derive_seed(scratch.seed, {0x7A11ULL}), finetune_dir, 0, peak);

    const MteResult result = mte(scratch_history, agent->history());
    std::cout << "MTE = " << fmt_fixed(result.mte, 3) << "% (scratch peak at step "
              << result.t_scratch << ", fine-tune reached it at "
              << (result.t_finetune < 0 ? std::string("never") : std::to_string(result.t_finetune))
              << ")\n";
    if (result.transfer_failure) std::cout << "transfer failure\n";

    if (!out_csv.empty()) {
        std::ofstream out(out_csv, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + out_csv);
        out << "curve,step,mean_return\n";
        for (const auto& [step, v] : scratch_history)
            out << "scratch," << step << ',' << fmt_g17(v) << '\n';
        for (const auto& [step, v] : agent->history())
            out << "finetune," << step << ',' << fmt_g17(v) << '\n';
    }
    return 0;
}

int cmd_list() {
    std::cout << "problem suites:\n";
    std::cout << "  synthetic        24 noiseless functions, dims >= 1, optimum known\n";
    for (const FunctionInfo& info : synthetic_registry()) {
        std::cout << "    " << info.no << ' ' << info.name << '\n';
    }
    std::cout << "  noisy-synthetic  30 noisy functions, optimum known\n";
    for (const NoisyFunctionInfo& info : noisy_registry()) {
        std::cout << "    " << info.fn.no << ' ' << info.fn.name << '\n';
    }
    std::cout << "  protein-docking  280 rigid-pose energy instances, dim 12, optimum unknown\n";
    std::cout << "classic optimizers: random-search, de, pso, cmaes\n";
    std::cout << "agents: qlearning, reinforce, ppo (on backbone de or pso)\n";
    return 0;
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"Benchmark platform for reinforcement-learned black-box optimizers"};
    app.require_subcommand(1);

    ExperimentConfig config;
    std::string suite_arg = "synthetic";
    std::string difficulty_arg = "easy";
    std::string timing_arg = "virtual";
    std::string config_path;

    CLI::App* run = app.add_subcommand("run-experiment", "Train, test, and report in one go");
    add_config_flags(run, config, suite_arg, difficulty_arg, timing_arg, config_path);
    CLI::App* train = app.add_subcommand("train", "Training phase only");
    add_config_flags(train, config, suite_arg, difficulty_arg, timing_arg, config_path);
    CLI::App* test = app.add_subcommand("test", "Test and report phases on a prepared directory");
    add_config_flags(test, config, suite_arg, difficulty_arg, timing_arg, config_path);

    std::string report_dir;
    CLI::App* report = app.add_subcommand("report", "Re-render reports from stored records");
    report->add_option("--out", report_dir, "Experiment directory")->required();

    std::vector<std::string> mgd_checkpoints, mgd_targets;
    std::string mgd_out;
    CLI::App* mgd_cmd = app.add_subcommand(
        "mgd", "Generalization decay of checkpoints evaluated on other experiments");
    mgd_cmd->add_option("--checkpoint", mgd_checkpoints, "Source agent checkpoint(s)")
        ->required()
        ->delimiter(',');
    mgd_cmd->add_option("--target-dir", mgd_targets, "Completed target experiment(s)")
        ->required()
        ->delimiter(',');
    mgd_cmd->add_option("--out", mgd_out, "Write the source x target MGD matrix CSV here");

    std::string mte_scratch, mte_pretrain, mte_out;
    CLI::App* mte_cmd =
        app.add_subcommand("mte", "Transfer efficiency of a pre-trained agent vs scratch training");
    mte_cmd->add_option("--scratch-dir", mte_scratch, "Completed scratch experiment")->required();
    mte_cmd->add_option("--pretrain", mte_pretrain, "Pre-trained checkpoint to fine-tune")
        ->required();
    mte_cmd->add_option("--out", mte_out, "Write both return curves as CSV here");

    CLI::App* list = app.add_subcommand("list", "Show suites, functions, and algorithms");

    // CLI11 wants mutable argc-style input, reversed.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list->parsed()) return cmd_list();
    if (report->parsed()) return cmd_report(report_dir);
    if (mgd_cmd->parsed()) return cmd_mgd(mgd_checkpoints, mgd_targets, mgd_out);
    if (mte_cmd->parsed()) return cmd_mte(mte_scratch, mte_pretrain, mte_out);

    if (!config_path.empty()) {
        apply_config_file(run->parsed() ? run : train->parsed() ? train : test, config_path);
    }
    const ExperimentConfig full = finish_config(config, suite_arg, difficulty_arg, timing_arg);
    if (run->parsed()) {
        run_experiment(full);
        std::cout << "experiment complete: " << full.out.string() << '\n';
        return 0;
    }
    if (train->parsed()) {
        if (full.agent.empty()) throw UsageError("train needs --agent");
        run_experiment(full, Phase::train);
        std::cout << "training complete: " << (full.out / "train").string() << '\n';
        return 0;
    }
    // test
    if (!full.agent.empty() && !std::filesystem::exists(full.out / "train" / "DONE")) {
        throw ConfigError("training phase has not completed in " + full.out.string() +
                          "; run train or run-experiment first");
    }
    run_experiment(full);
    std::cout << "test complete: " << full.out.string() << '\n';
    return 0;
}

} // namespace

int cli_main(const std::vector<std::string>& args) {
    try {
        return dispatch(args);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 3;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
}

} // namespace metabbo
