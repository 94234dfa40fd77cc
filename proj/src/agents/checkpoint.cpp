#include "metabbo/agents/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include "metabbo/util/errors.hpp"
#include "metabbo/util/text.hpp"

namespace metabbo {

void checkpoint_restore_counters(Agent& agent, std::int64_t steps, std::int64_t episodes) {
    agent.learning_steps_ = steps;
    agent.episodes_ = episodes;
}

namespace {

constexpr const char* kMagic = "metabbo-checkpoint 1";
constexpr int kParamsPerLine = 8;

std::string read_line(std::istream& in, const std::filesystem::path& path) {
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("truncated checkpoint: " + path.string());
    }
    return line;
}

// "key rest-of-line"; complains when the key differs.
std::string expect_field(std::istream& in, const std::filesystem::path& path,
                         const std::string& key) {
    const std::string line = read_line(in, path);
    if (line.rfind(key + " ", 0) != 0) {
        throw DataError("checkpoint " + path.string() + ": expected field '" + key + "', got '" +
                        line + "'");
    }
    return line.substr(key.size() + 1);
}

} // namespace

void save_checkpoint(const Agent& agent, const std::filesystem::path& path) {
    std::ostringstream os;
    os << kMagic << '\n';
    os << "kind " << agent.kind() << '\n';
    os << "backbone " << backbone_name(agent.backbone()) << '\n';
    os << "steps " << agent.learning_steps() << '\n';
    os << "episodes " << agent.episodes() << '\n';
    for (const auto& [key, value] : agent.meta_fields()) {
        os << "meta " << key << ' ' << value << '\n';
    }
    os << "rng " << agent.rng().serialize() << '\n';
    os << "history " << agent.history().size() << '\n';
    for (const auto& [step, value] : agent.history()) {
        os << step << ' ' << fmt_g17(value) << '\n';
    }
    const std::vector<double>& params = agent.flat_params();
    os << "params " << params.size() << '\n';
    for (std::size_t i = 0; i < params.size(); ++i) {
        os << fmt_g17(params[i]);
        os << ((i + 1) % kParamsPerLine == 0 || i + 1 == params.size() ? '\n' : ' ');
    }
    os << "end\n";

    // Write through a temporary so an interrupted save never leaves a
    // half-written checkpoint behind.
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write checkpoint: " + tmp.string());
        out << os.str();
        if (!out.flush()) throw DataError("cannot write checkpoint: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::unique_ptr<Agent> load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open checkpoint: " + path.string());
    if (read_line(in, path) != kMagic) {
        throw DataError("not a checkpoint file: " + path.string());
    }
    const std::string kind = expect_field(in, path, "kind");
    const std::string backbone = expect_field(in, path, "backbone");
    const std::int64_t steps = parse_int(expect_field(in, path, "steps"), "steps");
    const std::int64_t episodes = parse_int(expect_field(in, path, "episodes"), "episodes");

    std::unique_ptr<Agent> agent = make_agent(kind, backbone_from_name(backbone), 0);

    std::string line;
    while (true) {
        line = read_line(in, path);
        if (line.rfind("meta ", 0) != 0) break;
        const std::string rest = line.substr(5);
        const std::size_t space = rest.find(' ');
        if (space == std::string::npos) {
            throw DataError("checkpoint " + path.string() + ": malformed meta line '" + line + "'");
        }
        agent->apply_meta_field(rest.substr(0, space), rest.substr(space + 1));
    }

    if (line.rfind("rng ", 0) != 0) {
        throw DataError("checkpoint " + path.string() + ": expected field 'rng', got '" + line + "'");
    }
    agent->rng().deserialize(line.substr(4));

    const std::int64_t nhist = parse_int(expect_field(in, path, "history"), "history");
    for (std::int64_t i = 0; i < nhist; ++i) {
        std::istringstream row(read_line(in, path));
        std::int64_t step = 0;
        double value = 0.0;
        if (!(row >> step >> value)) {
            throw DataError("checkpoint " + path.string() + ": malformed history row");
        }
        agent->history().emplace_back(step, value);
    }

    const std::int64_t nparams = parse_int(expect_field(in, path, "params"), "params");
    std::vector<double>& params = agent->flat_params();
    if (nparams != static_cast<std::int64_t>(params.size())) {
        throw DataError("checkpoint " + path.string() + ": parameter count " +
                        std::to_string(nparams) + " does not match agent (" +
                        std::to_string(params.size()) + ")");
    }
    for (std::int64_t i = 0; i < nparams; ++i) {
        if (!(in >> params[static_cast<std::size_t>(i)])) {
            throw DataError("checkpoint " + path.string() + ": truncated parameter block");
        }
    }
    in >> std::ws;
    if (read_line(in, path) != "end") {
        throw DataError("checkpoint " + path.string() + ": missing end marker");
    }

    checkpoint_restore_counters(*agent, steps, episodes);
    return agent;
}

std::unique_ptr<Agent> load_checkpoint_expect(const std::filesystem::path& path,
                                              const std::string& kind) {
    std::unique_ptr<Agent> agent = load_checkpoint(path);
    if (agent->kind() != kind) {
        throw DataError("checkpoint kind mismatch: expected " + kind + ", found " + agent->kind() +
                        " in " + path.string());
    }
    return agent;
}

} // namespace metabbo
