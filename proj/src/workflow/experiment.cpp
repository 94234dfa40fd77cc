#include "metabbo/workflow/experiment.hpp"

#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "metabbo/agents/checkpoint.hpp"
#include "metabbo/util/errors.hpp"
#include "metabbo/workflow/logger.hpp"
#include "metabbo/workflow/tester.hpp"
#include "metabbo/workflow/trainer.hpp"

namespace metabbo {
namespace {

constexpr std::uint64_t kAgentSeedTag = 0xA6E1;
constexpr std::uint64_t kTrainerSeedTag = 0x7A11;
constexpr std::uint64_t kTesterSeedTag = 0x7E00;

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
}

bool marker_done(const std::filesystem::path& dir) {
    return std::filesystem::exists(dir / "DONE");
}

void mark_done(const std::filesystem::path& dir) { write_text(dir / "DONE", "done\n"); }

} // namespace

std::uint64_t experiment_tester_seed(const ExperimentConfig& config) {
    return derive_seed(config.seed, {kTesterSeedTag});
}

ExperimentLedger run_experiment(const ExperimentConfig& config, Phase until) {
    validate_config(config);
#ifdef _OPENMP
    if (config.threads > 0) omp_set_num_threads(config.threads);
#endif

    std::filesystem::create_directories(config.out);
    const std::filesystem::path snapshot_path = config.out / "config.snapshot";
    const std::string snapshot = config_to_text(config);
    if (std::filesystem::exists(snapshot_path)) {
        if (slurp(snapshot_path) != snapshot) {
            throw ConfigError("output directory " + config.out.string() +
                              " holds a different experiment (config.snapshot mismatch)");
        }
    } else {
        write_text(snapshot_path, snapshot);
    }
    std::filesystem::remove(config.out / "ERROR"); // retrying after a failure

    ExperimentLedger ledger;
    ledger.config = config;
    try {
        const DatasetSplit split =
            split_dataset(config.suite, config.dim, config.difficulty, config.seed);

        // --- Train ---------------------------------------------------------
        std::unique_ptr<Agent> agent;
        const std::string agent_id = agent_algorithm_id(config);
        if (!config.agent.empty()) {
            const std::filesystem::path train_dir = config.out / "train";
            ledger.final_checkpoint = train_dir / "final.ckpt";
            if (marker_done(train_dir) && std::filesystem::exists(ledger.final_checkpoint)) {
                agent = load_checkpoint_expect(ledger.final_checkpoint, config.agent);
            } else {
                agent = make_agent(config.agent, backbone_from_name(config.backbone),
                                   derive_seed(config.seed, {kAgentSeedTag}));
                trainer_train(*agent, split.train, config.max_learning_steps, config.max_fes,
                              derive_seed(config.seed, {kTrainerSeedTag}), train_dir);
                mark_done(train_dir);
            }
            ledger.training_steps = agent->learning_steps();
        }
        if (until == Phase::train) return ledger;

        // --- Test ----------------------------------------------------------
        const std::filesystem::path test_dir = config.out / "test";
        if (marker_done(test_dir)) {
            ledger.records = records_from_csv(slurp(test_dir / "records.csv"));
            traces_from_csv(slurp(test_dir / "traces.csv"), ledger.records);
        } else {
            std::filesystem::create_directories(test_dir);
            const std::vector<AlgorithmRef> roster =
                resolve_roster(config_roster(config), agent_id, agent.get());
            ledger.records = tester_test(roster, split.test, config.test_runs, config.max_fes,
                                         experiment_tester_seed(config), config.timing);
            write_text(test_dir / "records.csv", records_to_csv(ledger.records));
            write_text(test_dir / "traces.csv", traces_to_csv(ledger.records));
            mark_done(test_dir);
        }
        if (until == Phase::test) return ledger;

        // --- Log -----------------------------------------------------------
        logger_log(config.out, config);
        mark_done(config.out / "reports");
    } catch (const std::exception& e) {
        write_text(config.out / "ERROR", std::string(e.what()) + "\n");
        throw;
    }
    return ledger;
}

} // namespace metabbo
