#include "metabbo/workflow/config.hpp"

#include <algorithm>
#include <sstream>

#include "metabbo/optimizers/optimizer.hpp"
#include "metabbo/util/errors.hpp"
#include "metabbo/util/text.hpp"

namespace metabbo {
namespace {

const std::vector<std::string> kClassicIds = {"random-search", "de", "pso", "cmaes"};
const std::vector<std::string> kAgentKinds = {"qlearning", "reinforce", "ppo"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

} // namespace

std::string agent_algorithm_id(const ExperimentConfig& config) {
    if (config.agent.empty()) return "";
    return config.agent + "-" + config.backbone;
}

std::vector<std::string> config_roster(const ExperimentConfig& config) {
    std::vector<std::string> roster = config.baselines;
    const std::string agent_id = agent_algorithm_id(config);
    if (!agent_id.empty() && !contains(roster, agent_id)) roster.push_back(agent_id);
    return roster;
}

void validate_config(const ExperimentConfig& config) {
    if (config.dim < 1) throw ConfigError("dim must be >= 1");
    if (config.max_learning_steps < 1) throw ConfigError("max-learning-steps must be >= 1");
    if (config.test_runs < 1) throw ConfigError("test-runs must be >= 1");
    if (config.max_fes < 1) throw ConfigError("max-fes must be >= 1");
    if (!config.agent.empty() && !contains(kAgentKinds, config.agent)) {
        throw ConfigError("unknown agent kind: " + config.agent +
                          " (use qlearning, reinforce, or ppo)");
    }
    backbone_from_name(config.backbone);
    for (const std::string& id : config.baselines) {
        if (!contains(kClassicIds, id)) {
            throw ConfigError("unknown baseline algorithm: " + id);
        }
    }
    const std::vector<std::string> roster = config_roster(config);
    if (roster.empty()) throw ConfigError("algorithm roster is empty");
    if (!contains(roster, "random-search")) {
        throw ConfigError("roster must include random-search: it is the AEI baseline");
    }
    if (!contains(roster, config.reference)) {
        throw ConfigError("reference algorithm " + config.reference + " is not in the roster");
    }
    if (config.out.empty()) throw ConfigError("output directory is required");
}

std::string config_to_text(const ExperimentConfig& config) {
    std::ostringstream os;
    os << "problem-type = " << suite_name(config.suite) << '\n';
    os << "dim = " << config.dim << '\n';
    os << "difficulty = " << difficulty_name(config.difficulty) << '\n';
    os << "max-learning-steps = " << config.max_learning_steps << '\n';
    os << "test-runs = " << config.test_runs << '\n';
    os << "max-fes = " << config.max_fes << '\n';
    os << "seed = " << config.seed << '\n';
    os << "agent = " << config.agent << '\n';
    os << "backbone = " << config.backbone << '\n';
    os << "baselines = " << join(config.baselines, ',') << '\n';
    os << "reference = " << config.reference << '\n';
    os << "timing = " << timing_mode_name(config.timing) << '\n';
    os << "threads = " << config.threads << '\n';
    os << "out = " << config.out.string() << '\n';
    return os.str();
}

ExperimentConfig config_from_text(const std::string& text) {
    ExperimentConfig config;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw DataError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key == "problem-type") {
            config.suite = suite_from_name(value);
        } else if (key == "dim") {
            config.dim = static_cast<int>(parse_int(value, "dim"));
        } else if (key == "difficulty") {
            config.difficulty = difficulty_from_name(value);
        } else if (key == "max-learning-steps") {
            config.max_learning_steps = parse_int(value, "max-learning-steps");
        } else if (key == "test-runs") {
            config.test_runs = static_cast<int>(parse_int(value, "test-runs"));
        } else if (key == "max-fes") {
            config.max_fes = parse_int(value, "max-fes");
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_int(value, "seed"));
        } else if (key == "agent") {
            config.agent = value;
        } else if (key == "backbone") {
            config.backbone = value;
        } else if (key == "baselines") {
            config.baselines.clear();
            for (const std::string& part : split(value, ',')) {
                const std::string id = trim(part);
                if (!id.empty()) config.baselines.push_back(id);
            }
        } else if (key == "reference") {
            config.reference = value;
        } else if (key == "timing") {
            config.timing = timing_mode_from_name(value);
        } else if (key == "threads") {
            config.threads = static_cast<int>(parse_int(value, "threads"));
        } else if (key == "out") {
            config.out = value;
        } else {
            throw DataError("config line " + std::to_string(line_no) + ": unknown key " + key);
        }
    }
    return config;
}

} // namespace metabbo
