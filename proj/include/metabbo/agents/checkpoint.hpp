#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "metabbo/agents/agent.hpp"

namespace metabbo {

// Resets the learning-step/episode counters (fine-tuning a loaded agent
// restarts its step count; the parameters stay).
void checkpoint_restore_counters(Agent& agent, std::int64_t steps, std::int64_t episodes);

// Self-describing plain-text checkpoint: agent kind, backbone, counters,
// settings, RNG state, validation-return history, and the flat parameter
// vector, all in round-trip decimal. save -> load -> save is byte-identical.
void save_checkpoint(const Agent& agent, const std::filesystem::path& path);
std::unique_ptr<Agent> load_checkpoint(const std::filesystem::path& path);
// As load_checkpoint, but throws DataError when the stored kind differs.
std::unique_ptr<Agent> load_checkpoint_expect(const std::filesystem::path& path,
                                              const std::string& kind);

} // namespace metabbo
